#include "wordweight/pipeline.hpp"

#include <fstream>
#include <ostream>

#include "wordweight/arpa.hpp"
#include "wordweight/corpus_io.hpp"
#include "wordweight/error.hpp"
#include "wordweight/text_format.hpp"
#include "wordweight/word_scoring.hpp"

namespace wordweight {

namespace fs = std::filesystem;

namespace {

template <typename T>
T json_value(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

void require_file(const fs::path& p, const char* key) {
    if (!p.empty() && !fs::exists(p))
        throw ConfigError("config key '" + std::string(key) +
                          "': no such file: " + p.string());
}

std::string with_location(const fs::path& file, std::size_t line,
                          const char* what) {
    return file.string() + ":" + std::to_string(line) + ": " + what;
}

NGramModel obtain_lm(const fs::path& arpa, const fs::path& corpus,
                     const PipelineConfig& config) {
    if (!arpa.empty()) return read_arpa_file(arpa);
    return train_lm_file(corpus, config.lm, config.subword_marker);
}

struct SentenceResult {
    std::string scores_line;
    Weights word;
    Weights chunk;
    Weights sentence;
    Weights random;
};

}  // namespace

void apply_config_json(PipelineConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        auto str = [&] { return json_value<std::string>(v, key); };
        if (key == "in_domain_corpus") c.in_domain_corpus = str();
        else if (key == "out_domain_corpus") c.out_domain_corpus = str();
        else if (key == "in_domain_lm") c.in_domain_lm = str();
        else if (key == "out_domain_lm") c.out_domain_lm = str();
        else if (key == "target") c.target = str();
        else if (key == "in_domain_target") c.in_domain_target = str();
        else if (key == "output_dir") c.output_dir = str();
        else if (key == "order") c.lm.order = json_value<int>(v, key);
        else if (key == "min_count") c.lm.min_count = json_value<std::uint64_t>(v, key);
        else if (key == "discount") c.lm.discount = json_value<double>(v, key);
        else if (key == "kernel") c.kernel = parse_kernel_shape(str());
        else if (key == "kernel_size") c.kernel_size = json_value<int>(v, key);
        else if (key == "sigma_policy") c.sigma_policy = parse_sigma_policy(str());
        else if (key == "sigma") c.sigma = json_value<double>(v, key);
        else if (key == "threshold") c.weighting.threshold = json_value<double>(v, key);
        else if (key == "mode") c.weighting.mode = parse_weight_mode(str());
        else if (key == "drop_all_zero_sentences")
            c.weighting.drop_all_zero_sentences = json_value<bool>(v, key);
        else if (key == "random_keep_fraction")
            c.weighting.random_keep_fraction = json_value<double>(v, key);
        else if (key == "seed") c.weighting.seed = json_value<std::uint64_t>(v, key);
        else if (key == "subword_marker") c.subword_marker = str();
        else if (key == "threads") c.threads = json_value<unsigned>(v, key);
        else if (key == "write_lms") c.write_lms = json_value<bool>(v, key);
        else if (key == "block_size") c.block_size = json_value<std::size_t>(v, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

PipelineConfig load_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }
    PipelineConfig config;
    apply_config_json(config, j);
    return config;
}

nlohmann::json to_json(const PipelineConfig& c) {
    return {{"in_domain_corpus", c.in_domain_corpus.string()},
            {"out_domain_corpus", c.out_domain_corpus.string()},
            {"in_domain_lm", c.in_domain_lm.string()},
            {"out_domain_lm", c.out_domain_lm.string()},
            {"target", c.target.string()},
            {"in_domain_target", c.in_domain_target.string()},
            {"output_dir", c.output_dir.string()},
            {"order", c.lm.order},
            {"min_count", c.lm.min_count},
            {"discount", c.lm.discount},
            {"kernel", std::string(to_string(c.kernel))},
            {"kernel_size", c.kernel_size},
            {"sigma_policy", std::string(to_string(c.sigma_policy))},
            {"sigma", c.sigma},
            {"threshold", c.weighting.threshold},
            {"mode", std::string(to_string(c.weighting.mode))},
            {"drop_all_zero_sentences", c.weighting.drop_all_zero_sentences},
            {"random_keep_fraction", c.weighting.random_keep_fraction},
            {"seed", c.weighting.seed},
            {"subword_marker", c.subword_marker},
            {"threads", c.threads},
            {"write_lms", c.write_lms},
            {"block_size", c.block_size}};
}

void validate(const PipelineConfig& c) {
    if (c.target.empty()) throw ConfigError("missing required config key 'target'");
    if (c.output_dir.empty())
        throw ConfigError("missing required config key 'output_dir'");
    if (c.in_domain_lm.empty() && c.in_domain_corpus.empty())
        throw ConfigError(
            "missing required config key 'in_domain_corpus' (or 'in_domain_lm')");
    if (c.out_domain_lm.empty() && c.out_domain_corpus.empty())
        throw ConfigError(
            "missing required config key 'out_domain_corpus' (or 'out_domain_lm')");
    require_file(c.target, "target");
    require_file(c.in_domain_target, "in_domain_target");
    require_file(c.in_domain_corpus, "in_domain_corpus");
    require_file(c.out_domain_corpus, "out_domain_corpus");
    require_file(c.in_domain_lm, "in_domain_lm");
    require_file(c.out_domain_lm, "out_domain_lm");
    validate(c.lm);
    validate(c.weighting);
    if (c.kernel_size < 1) throw ConfigError("config key 'kernel_size' must be >= 1");
    if (c.block_size == 0) throw ConfigError("config key 'block_size' must be > 0");
    if (c.kernel == KernelShape::gaussian && c.sigma_policy == SigmaPolicy::fixed &&
        !(c.sigma > 0.0))
        throw ConfigError("config key 'sigma' must be > 0 for a fixed gaussian");
}

ScoreMoments write_raw_scores(const NGramModel& lm_in, const NGramModel& lm_out,
                              const fs::path& corpus, const fs::path& output,
                              std::string_view marker, unsigned threads,
                              std::size_t block_size) {
    LineReader reader(corpus);
    auto out = open_output(output);
    ScoreMoments moments;
    std::vector<std::string> lines;
    std::vector<std::vector<double>> values;
    std::size_t first_line = 1;
    while (true) {
        lines.clear();
        if (reader.next_block(lines, block_size) == 0) break;
        values.assign(lines.size(), {});
        parallel_for(lines.size(), threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                auto tokens = split_tokens(lines[i]);
                try {
                    auto track = score_sentence(lm_in, lm_out, tokens, marker);
                    for (auto& v : track.raw) v = quantize6(v);
                    values[i] = std::move(track.raw);
                } catch (const MalformedSubwordError& err) {
                    throw MalformedSubwordError(
                        with_location(corpus, first_line + i, err.what()));
                }
            }
        });
        for (const auto& v : values) {
            out << join_fixed6(v) << '\n';
            moments.add(v);
        }
        first_line += lines.size();
    }
    if (!out.flush()) throw Error("failed writing " + output.string());
    return moments;
}

ScoreMoments score_file_moments(const fs::path& scores) {
    LineReader reader(scores);
    ScoreMoments moments;
    std::string line;
    while (reader.next(line)) moments.add(parse_reals(line, reader.line_number()));
    return moments;
}

void write_smoothed_scores(const fs::path& raw, const fs::path& output,
                           const Kernel& kernel, unsigned threads,
                           std::size_t block_size) {
    LineReader reader(raw);
    auto out = open_output(output);
    std::vector<std::string> lines;
    std::size_t first_line = 1;
    while (true) {
        lines.clear();
        if (reader.next_block(lines, block_size) == 0) break;
        parallel_for(lines.size(), threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                lines[i] = join_fixed6(smooth(parse_reals(lines[i], first_line + i), kernel));
        });
        for (const auto& l : lines) out << l << '\n';
        first_line += lines.size();
    }
    if (!out.flush()) throw Error("failed writing " + output.string());
}

void write_binarized(const fs::path& smoothed, const fs::path& output,
                     double threshold, bool sentence_level) {
    LineReader reader(smoothed);
    auto out = open_output(output);
    std::string line;
    while (reader.next(line)) {
        auto values = parse_reals(line, reader.line_number());
        Weights w;
        if (sentence_level) {
            if (!values.empty()) w = sentence_weight(values, threshold);
        } else {
            w = binarize(values, threshold);
        }
        out << join_weights(w) << '\n';
    }
    if (!out.flush()) throw Error("failed writing " + output.string());
}

void write_longest_chunks(const fs::path& weights, const fs::path& output,
                          std::uint64_t seed) {
    LineReader reader(weights);
    auto out = open_output(output);
    std::string line;
    std::uint64_t index = 0;
    while (reader.next(line)) {
        auto w = parse_weights(line, reader.line_number());
        auto rng = sentence_rng(seed, index++);
        out << join_weights(longest_chunk(w, rng)) << '\n';
    }
    if (!out.flush()) throw Error("failed writing " + output.string());
}

CorpusStats weights_file_stats(const fs::path& weights, bool drop_all_zero) {
    LineReader reader(weights);
    CorpusStats stats;
    std::string line;
    while (reader.next(line))
        stats.add(parse_weights(line, reader.line_number()), drop_all_zero);
    return stats;
}

std::vector<std::pair<std::string, CorpusStats>> smoothed_file_stats(
    const fs::path& smoothed, const WeightingConfig& config) {
    LineReader reader(smoothed);
    CorpusStats word, chunk, sentence;
    std::string line;
    std::uint64_t index = 0;
    while (reader.next(line)) {
        auto values = parse_reals(line, reader.line_number());
        auto w = binarize(values, config.threshold);
        auto rng = sentence_rng(config.seed, index++);
        auto c = longest_chunk(w, rng);
        Weights s = values.empty() ? Weights{} : sentence_weight(values, config.threshold);
        word.add(w, config.drop_all_zero_sentences);
        chunk.add(c, config.drop_all_zero_sentences);
        sentence.add(s, config.drop_all_zero_sentences);
    }
    return {{"word", word}, {"chunk", chunk}, {"sentence", sentence}};
}

PipelineResult run_pipeline(const PipelineConfig& config, std::ostream* log) {
    validate(config);
    fs::create_directories(config.output_dir);
    const unsigned threads = resolve_workers(config.threads);
    auto note = [&](const std::string& msg) {
        if (log) *log << msg << std::endl;
    };

    note("loading in-domain language model");
    NGramModel lm_in = obtain_lm(config.in_domain_lm, config.in_domain_corpus, config);
    note("loading out-of-domain language model");
    NGramModel lm_out = obtain_lm(config.out_domain_lm, config.out_domain_corpus, config);
    if (config.write_lms) {
        if (config.in_domain_lm.empty())
            write_arpa_file(lm_in, config.output_dir / "lm_in.arpa");
        if (config.out_domain_lm.empty())
            write_arpa_file(lm_out, config.output_dir / "lm_out.arpa");
    }

    PipelineResult result;
    result.raw_scores_file = config.output_dir / "raw_scores.txt";
    result.scores_file = config.output_dir / "scores.txt";
    result.weights_file = config.output_dir / "weights.txt";
    result.stats_file = config.output_dir / "stats.json";

    note("scoring " + config.target.string());
    auto moments = write_raw_scores(lm_in, lm_out, config.target, result.raw_scores_file,
                                    config.subword_marker, threads, config.block_size);
    Kernel kernel = corpus_kernel(config.kernel, config.kernel_size,
                                  config.sigma_policy, config.sigma, moments);
    result.kernel_used = kernel.shape();
    result.sigma = kernel.sigma();

    note("smoothing and weighting");
    const auto& wc = config.weighting;
    CorpusStats word_stats, chunk_stats, sentence_stats, random_stats;
    {
        LineReader target(config.target);
        LineReader raw(result.raw_scores_file);
        auto scores_out = open_output(result.scores_file);
        auto weights_out = open_output(result.weights_file);
        std::vector<std::string> target_lines;
        std::vector<std::string> raw_lines;
        std::vector<SentenceResult> results;
        std::uint64_t first_index = 0;
        while (true) {
            target_lines.clear();
            raw_lines.clear();
            auto nt = target.next_block(target_lines, config.block_size);
            auto nr = raw.next_block(raw_lines, config.block_size);
            if (nt != nr)
                throw AlignmentError(result.raw_scores_file.string() +
                                     " and " + config.target.string() +
                                     " differ in line count");
            if (nt == 0) break;
            results.assign(nt, {});
            parallel_for(nt, threads, [&](std::size_t b, std::size_t e) {
                for (std::size_t i = b; i < e; ++i) {
                    std::uint64_t index = first_index + i;
                    auto token_count = split_fields(target_lines[i]).size();
                    auto values = parse_reals(raw_lines[i], index + 1);
                    if (values.size() != token_count)
                        throw AlignmentError(with_location(
                            result.raw_scores_file, index + 1,
                            "score count differs from token count"));
                    auto smoothed = smooth(values, kernel);
                    for (auto& v : smoothed) v = quantize6(v);
                    auto& r = results[i];
                    r.scores_line = join_fixed6(smoothed);
                    r.word = binarize(smoothed, wc.threshold);
                    auto rng = sentence_rng(wc.seed, index);
                    r.chunk = longest_chunk(r.word, rng);
                    if (!smoothed.empty())
                        r.sentence = sentence_weight(smoothed, wc.threshold);
                    if (wc.mode == WeightMode::random)
                        r.random = assign_weights(smoothed, wc, index);
                }
            });
            for (const auto& r : results) {
                scores_out << r.scores_line << '\n';
                const Weights* chosen = &r.word;
                switch (wc.mode) {
                    case WeightMode::word: chosen = &r.word; break;
                    case WeightMode::chunk: chosen = &r.chunk; break;
                    case WeightMode::sentence: chosen = &r.sentence; break;
                    case WeightMode::random: chosen = &r.random; break;
                }
                weights_out << join_weights(*chosen) << '\n';
                word_stats.add(r.word, wc.drop_all_zero_sentences);
                chunk_stats.add(r.chunk, wc.drop_all_zero_sentences);
                sentence_stats.add(r.sentence, wc.drop_all_zero_sentences);
                if (wc.mode == WeightMode::random)
                    random_stats.add(r.random, wc.drop_all_zero_sentences);
            }
            first_index += nt;
        }
        if (!scores_out.flush() || !weights_out.flush())
            throw Error("failed writing outputs in " + config.output_dir.string());
    }

    // Self-check: every per-token file must line up with the corpus.
    verify_alignment(config.target, result.raw_scores_file);
    verify_alignment(config.target, result.scores_file);
    verify_alignment(config.target, result.weights_file);

    if (!config.in_domain_target.empty()) {
        fs::path path = config.output_dir / "in_domain.weights.txt";
        LineReader reader(config.in_domain_target);
        auto out = open_output(path);
        std::string line;
        while (reader.next(line))
            out << join_weights(in_domain_weights(split_fields(line).size())) << '\n';
        if (!out.flush()) throw Error("failed writing " + path.string());
        verify_alignment(config.in_domain_target, path);
        result.in_domain_weights_file = path;
    }

    result.stats = {{"word", word_stats}, {"chunk", chunk_stats},
                    {"sentence", sentence_stats}};
    if (wc.mode == WeightMode::random) result.stats.emplace_back("random", random_stats);

    nlohmann::json report{{"selected_mode", std::string(to_string(wc.mode))},
                          {"threshold", wc.threshold},
                          {"kernel", std::string(to_string(kernel.shape()))},
                          {"kernel_size", kernel.size()},
                          {"sigma", kernel.sigma() ? nlohmann::json(*kernel.sigma())
                                                   : nlohmann::json(nullptr)},
                          {"raw_score_mean", moments.mean()},
                          {"raw_score_variance", moments.variance()}};
    for (const auto& [label, s] : result.stats) report["modes"][label] = to_json(s);
    {
        auto out = open_output(result.stats_file);
        out << report.dump(2) << '\n';
    }
    {
        auto out = open_output(config.output_dir / "stats.txt");
        out << format_stats_table(result.stats);
    }
    note(format_stats_table(result.stats));
    return result;
}

}  // namespace wordweight
