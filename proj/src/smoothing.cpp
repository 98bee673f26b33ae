#include "wordweight/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wordweight/error.hpp"

namespace wordweight {

KernelShape parse_kernel_shape(std::string_view name) {
    if (name == "none") return KernelShape::none;
    if (name == "mean") return KernelShape::mean;
    if (name == "gaussian") return KernelShape::gaussian;
    throw ConfigError("unknown kernel '" + std::string(name) +
                      "' (expected none, mean or gaussian)");
}

std::string_view to_string(KernelShape shape) {
    switch (shape) {
        case KernelShape::none: return "none";
        case KernelShape::mean: return "mean";
        case KernelShape::gaussian: return "gaussian";
    }
    return "?";
}

Kernel::Kernel(KernelShape shape, std::optional<double> sigma, int first_offset,
               std::vector<double> coefficients)
    : shape_(shape)
    , sigma_(sigma)
    , first_offset_(first_offset)
    , coefficients_(std::move(coefficients)) {}

Kernel Kernel::build(KernelShape shape, int size, std::optional<double> sigma) {
    if (size < 1)
        throw ConfigError("kernel size must be >= 1, got " + std::to_string(size));
    if (shape == KernelShape::none) return Kernel(shape, std::nullopt, 0, {1.0});

    int first = size % 2 == 1 ? -(size - 1) / 2 : -size / 2;
    std::vector<double> c(static_cast<std::size_t>(size));
    if (shape == KernelShape::mean) {
        for (auto& v : c) v = 1.0 / size;
        return Kernel(shape, std::nullopt, first, std::move(c));
    }

    if (!sigma || !(*sigma > 0.0) || !std::isfinite(*sigma))
        throw ConfigError("degenerate sigma: gaussian kernel needs sigma > 0");
    double s = *sigma;
    double total = 0.0;
    for (int i = 0; i < size; ++i) {
        double k = first + i;
        c[i] = std::exp(-k * k / (2.0 * s * s));
        total += c[i];
    }
    for (auto& v : c) v /= total;
    return Kernel(shape, s, first, std::move(c));
}

std::vector<double> smooth(std::span<const double> raw, const Kernel& kernel) {
    const auto n = static_cast<std::ptrdiff_t>(raw.size());
    auto coef = kernel.coefficients();
    std::vector<double> out(raw.size());
    if (coef.size() == 1) {
        out.assign(raw.begin(), raw.end());
        return out;
    }
    const std::ptrdiff_t first = kernel.first_offset();
    const auto taps = static_cast<std::ptrdiff_t>(coef.size());
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -(t + first));
        std::ptrdiff_t hi = std::min<std::ptrdiff_t>(taps, n - (t + first));
        double acc = 0.0;
        double weight = 0.0;
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            acc += coef[i] * raw[t + first + i];
            weight += coef[i];
        }
        out[t] = acc / weight;
    }
    return out;
}

void ScoreMoments::add(double x) {
    ++count_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void ScoreMoments::merge(const ScoreMoments& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    auto na = static_cast<double>(count_);
    auto nb = static_cast<double>(other.count_);
    double delta = other.mean_ - mean_;
    double total = na + nb;
    mean_ += delta * nb / total;
    m2_ += other.m2_ + delta * delta * na * nb / total;
    count_ += other.count_;
}

double global_variance(std::span<const double> scores) {
    if (scores.size() < 2)
        throw Error("global variance needs at least 2 scores, got " +
                    std::to_string(scores.size()));
    ScoreMoments m;
    m.add(scores);
    return m.variance();
}

SigmaPolicy parse_sigma_policy(std::string_view name) {
    if (name == "variance") return SigmaPolicy::variance;
    if (name == "stddev") return SigmaPolicy::stddev;
    if (name == "fixed") return SigmaPolicy::fixed;
    throw ConfigError("unknown sigma policy '" + std::string(name) +
                      "' (expected variance, stddev or fixed)");
}

std::string_view to_string(SigmaPolicy policy) {
    switch (policy) {
        case SigmaPolicy::variance: return "variance";
        case SigmaPolicy::stddev: return "stddev";
        case SigmaPolicy::fixed: return "fixed";
    }
    return "?";
}

double resolve_sigma(SigmaPolicy policy, const ScoreMoments& moments,
                     double fixed_sigma) {
    if (policy == SigmaPolicy::fixed) return fixed_sigma;
    if (moments.count() < 2)
        throw Error("global variance needs at least 2 scores, got " +
                    std::to_string(moments.count()));
    double v = moments.variance();
    return policy == SigmaPolicy::variance ? v : std::sqrt(v);
}

Kernel corpus_kernel(KernelShape shape, int size, SigmaPolicy policy,
                     double fixed_sigma, const ScoreMoments& moments) {
    if (shape != KernelShape::gaussian || policy == SigmaPolicy::fixed)
        return Kernel::build(shape, size, fixed_sigma);
    if (size < 1)
        throw ConfigError("kernel size must be >= 1, got " + std::to_string(size));
    // At most one score, or all scores equal: smoothing is the identity.
    if (moments.count() < 2 || moments.variance() == 0.0)
        return Kernel::build(KernelShape::none, 1);
    return Kernel::build(shape, size, resolve_sigma(policy, moments, fixed_sigma));
}

}  // namespace wordweight
