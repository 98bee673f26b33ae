#include "wordweight/cli.hpp"

#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "wordweight/arpa.hpp"
#include "wordweight/corpus_io.hpp"
#include "wordweight/error.hpp"
#include "wordweight/pipeline.hpp"
#include "wordweight/text_format.hpp"
#include "wordweight/word_scoring.hpp"

namespace wordweight {

namespace {

// Flags that override keys of the JSON config.
struct Overrides {
    std::optional<std::string> in_domain_corpus, out_domain_corpus;
    std::optional<std::string> in_domain_lm, out_domain_lm;
    std::optional<std::string> target, in_domain_target, output_dir;
    std::optional<int> order;
    std::optional<std::uint64_t> min_count;
    std::optional<double> discount;
    std::optional<std::string> kernel;
    std::optional<int> kernel_size;
    std::optional<std::string> sigma_policy;
    std::optional<double> sigma;
    std::optional<double> threshold;
    std::optional<std::string> mode;
    std::optional<double> keep_fraction;
    bool keep_all_zero = false;
    std::optional<std::string> marker;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::size_t> block_size;
    bool write_lms = false;

    void apply(PipelineConfig& c) const {
        if (in_domain_corpus) c.in_domain_corpus = *in_domain_corpus;
        if (out_domain_corpus) c.out_domain_corpus = *out_domain_corpus;
        if (in_domain_lm) c.in_domain_lm = *in_domain_lm;
        if (out_domain_lm) c.out_domain_lm = *out_domain_lm;
        if (target) c.target = *target;
        if (in_domain_target) c.in_domain_target = *in_domain_target;
        if (output_dir) c.output_dir = *output_dir;
        if (order) c.lm.order = *order;
        if (min_count) c.lm.min_count = *min_count;
        if (discount) c.lm.discount = *discount;
        if (kernel) c.kernel = parse_kernel_shape(*kernel);
        if (kernel_size) c.kernel_size = *kernel_size;
        if (sigma_policy) c.sigma_policy = parse_sigma_policy(*sigma_policy);
        if (sigma) c.sigma = *sigma;
        if (threshold) c.weighting.threshold = *threshold;
        if (mode) c.weighting.mode = parse_weight_mode(*mode);
        if (keep_fraction) c.weighting.random_keep_fraction = *keep_fraction;
        if (keep_all_zero) c.weighting.drop_all_zero_sentences = false;
        if (marker) c.subword_marker = *marker;
        if (seed) c.weighting.seed = *seed;
        if (threads) c.threads = *threads;
        if (block_size) c.block_size = *block_size;
        if (write_lms) c.write_lms = true;
    }
};

struct Paths {
    std::optional<std::string> input, output, lm, lm_in, lm_out, weights, scores, json;
};

const std::string& require(const std::optional<std::string>& value,
                           const char* flag) {
    if (!value) throw ConfigError("missing required option " + std::string(flag));
    return *value;
}

void add_lm_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--order", o.order, "n-gram order");
    cmd->add_option("--min-count", o.min_count, "words rarer than this become <unk>");
    cmd->add_option("--discount", o.discount, "Kneser-Ney discount in (0,1)");
}

void add_kernel_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--kernel", o.kernel, "none | mean | gaussian");
    cmd->add_option("--L", o.kernel_size, "kernel size");
    cmd->add_option("--sigma-policy", o.sigma_policy, "variance | stddev | fixed");
    cmd->add_option("--sigma", o.sigma, "gaussian sigma for the fixed policy");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Word-level domain relevance weights for parallel corpora",
                 "wordweight"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path;
    Overrides o;
    Paths p;
    app.add_option("--config", config_path, "JSON config; flags override its keys");
    app.add_option("--seed", o.seed, "seed for tie-breaking and random masks");
    app.add_option("--threads", o.threads, "worker threads (0 = all cores)");

    auto* lm_train = app.add_subcommand("lm-train", "train a Kneser-Ney ARPA model");
    lm_train->add_option("--input", p.input, "monolingual corpus");
    lm_train->add_option("--output", p.output, "ARPA file to write");
    lm_train->add_option("--marker", o.marker, "subword continuation marker");
    add_lm_options(lm_train, o);

    auto* lm_score = app.add_subcommand("lm-score", "per-token natural-log probabilities");
    lm_score->add_option("--lm", p.lm, "ARPA model");
    lm_score->add_option("--input", p.input, "corpus");
    lm_score->add_option("--output", p.output, "output file (default stdout)");
    lm_score->add_option("--marker", o.marker, "subword continuation marker");

    auto* score = app.add_subcommand("score", "raw in-domain minus out-of-domain scores");
    score->add_option("--lm-in", p.lm_in, "in-domain ARPA model");
    score->add_option("--lm-out", p.lm_out, "out-of-domain ARPA model");
    score->add_option("--input", p.input, "target corpus");
    score->add_option("--output", p.output, "raw score file");
    score->add_option("--marker", o.marker, "subword continuation marker");

    auto* smooth_cmd = app.add_subcommand("smooth", "moving-average smoothing");
    smooth_cmd->add_option("--input", p.input, "raw score file");
    smooth_cmd->add_option("--output", p.output, "smoothed score file");
    add_kernel_options(smooth_cmd, o);

    auto* binarize_cmd = app.add_subcommand("binarize", "threshold smoothed scores");
    binarize_cmd->add_option("--input", p.input, "smoothed score file");
    binarize_cmd->add_option("--output", p.output, "weights file");
    binarize_cmd->add_option("--threshold", o.threshold, "selection threshold");
    binarize_cmd->add_option("--mode", o.mode, "word | sentence");

    auto* lcw_cmd = app.add_subcommand("lcw", "keep the longest run of selected tokens");
    lcw_cmd->add_option("--input", p.input, "weights file");
    lcw_cmd->add_option("--output", p.output, "chunk weights file");

    auto* stats_cmd = app.add_subcommand("stats", "selection statistics");
    stats_cmd->add_option("--weights", p.weights, "weights file");
    stats_cmd->add_option("--scores", p.scores, "smoothed score file (all modes)");
    stats_cmd->add_option("--threshold", o.threshold, "selection threshold");
    stats_cmd->add_flag("--keep-all-zero", o.keep_all_zero,
                        "count sentences without selected tokens as kept");
    stats_cmd->add_option("--json", p.json, "also write JSON here");

    auto* pipeline = app.add_subcommand("pipeline", "run every stage end to end");
    pipeline->add_option("--target", o.target, "out-of-domain target corpus");
    pipeline->add_option("--in-domain-corpus", o.in_domain_corpus, "monolingual in-domain text");
    pipeline->add_option("--out-domain-corpus", o.out_domain_corpus, "monolingual out-of-domain text");
    pipeline->add_option("--in-domain-lm", o.in_domain_lm, "in-domain ARPA model (instead of a corpus)");
    pipeline->add_option("--out-domain-lm", o.out_domain_lm, "out-of-domain ARPA model (instead of a corpus)");
    pipeline->add_option("--in-domain-target", o.in_domain_target, "in-domain target side; gets all-ones weights");
    pipeline->add_option("--output-dir", o.output_dir, "directory for every output file");
    add_lm_options(pipeline, o);
    add_kernel_options(pipeline, o);
    pipeline->add_option("--threshold", o.threshold, "selection threshold");
    pipeline->add_option("--mode", o.mode, "word | chunk | sentence | random");
    pipeline->add_option("--keep-fraction", o.keep_fraction, "random-mode keep probability");
    pipeline->add_flag("--keep-all-zero", o.keep_all_zero,
                       "count sentences without selected tokens as kept");
    pipeline->add_option("--marker", o.marker, "subword continuation marker");
    pipeline->add_option("--block-size", o.block_size, "sentences per parallel batch");
    pipeline->add_flag("--write-lms", o.write_lms, "save trained models as ARPA");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "wordweight: " << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        PipelineConfig cfg = config_path ? load_config_file(*config_path) : PipelineConfig{};
        o.apply(cfg);
        const unsigned threads = resolve_workers(cfg.threads);

        if (lm_train->parsed()) {
            validate(cfg.lm);
            auto model = train_lm_file(require(p.input, "--input"), cfg.lm, cfg.subword_marker);
            write_arpa_file(model, require(p.output, "--output"));
            for (int n = 1; n <= model.order(); ++n)
                out << "ngram " << n << '=' << model.level(n).size() << '\n';
        } else if (lm_score->parsed()) {
            auto model = read_arpa_file(require(p.lm, "--lm"));
            LineReader reader(require(p.input, "--input"));
            std::ofstream file;
            if (p.output) file = open_output(*p.output);
            std::ostream& sink = p.output ? file : out;
            std::string line;
            double total = 0.0;
            std::size_t events = 0;
            while (reader.next(line)) {
                auto merged = merge_subwords(split_tokens(line), cfg.subword_marker);
                auto scores = model.score_words(merged.words);
                std::vector<double> per_token;
                for (std::size_t w = 0; w < scores.size(); ++w)
                    per_token.insert(per_token.end(), merged.fanout[w], scores[w]);
                sink << join_fixed6(per_token) << '\n';
                total += model.sentence_log_prob(merged.words);
                events += merged.words.size() + 1;
            }
            if (events > 0)
                err << "perplexity " << std::exp(-total / static_cast<double>(events)) << '\n';
        } else if (score->parsed()) {
            auto lm_in = read_arpa_file(require(p.lm_in, "--lm-in"));
            auto lm_out = read_arpa_file(require(p.lm_out, "--lm-out"));
            write_raw_scores(lm_in, lm_out, require(p.input, "--input"),
                             require(p.output, "--output"), cfg.subword_marker, threads,
                             cfg.block_size);
        } else if (smooth_cmd->parsed()) {
            const auto& input = require(p.input, "--input");
            ScoreMoments moments;
            if (cfg.kernel == KernelShape::gaussian && cfg.sigma_policy != SigmaPolicy::fixed)
                moments = score_file_moments(input);
            auto kernel = corpus_kernel(cfg.kernel, cfg.kernel_size, cfg.sigma_policy,
                                        cfg.sigma, moments);
            write_smoothed_scores(input, require(p.output, "--output"), kernel, threads,
                                  cfg.block_size);
        } else if (binarize_cmd->parsed()) {
            validate(cfg.weighting);
            auto mode = cfg.weighting.mode;
            if (mode != WeightMode::word && mode != WeightMode::sentence)
                throw ConfigError("binarize supports --mode word or sentence");
            write_binarized(require(p.input, "--input"), require(p.output, "--output"),
                            cfg.weighting.threshold, mode == WeightMode::sentence);
        } else if (lcw_cmd->parsed()) {
            write_longest_chunks(require(p.input, "--input"), require(p.output, "--output"),
                                 cfg.weighting.seed);
        } else if (stats_cmd->parsed()) {
            std::vector<std::pair<std::string, CorpusStats>> rows;
            if (p.weights)
                rows.emplace_back("weights", weights_file_stats(
                                                 *p.weights, cfg.weighting.drop_all_zero_sentences));
            if (p.scores) {
                auto more = smoothed_file_stats(*p.scores, cfg.weighting);
                rows.insert(rows.end(), more.begin(), more.end());
            }
            if (rows.empty()) throw ConfigError("missing required option --weights or --scores");
            out << format_stats_table(rows);
            if (p.json) {
                nlohmann::json j = nlohmann::json::object();
                for (const auto& [label, s] : rows) j[label] = to_json(s);
                auto file = open_output(*p.json);
                file << j.dump(2) << '\n';
            }
        } else if (pipeline->parsed()) {
            auto result = run_pipeline(cfg);
            out << format_stats_table(result.stats);
            out << "weights: " << result.weights_file.string() << '\n';
        }
    } catch (const std::exception& e) {
        err << "wordweight: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace wordweight
