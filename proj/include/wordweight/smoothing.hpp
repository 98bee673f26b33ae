#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace wordweight {

enum class KernelShape { none, mean, gaussian };

KernelShape parse_kernel_shape(std::string_view name);
std::string_view to_string(KernelShape shape);

/// Normalized symmetric moving-average kernel. Odd sizes cover offsets
/// -(L-1)/2 .. (L-1)/2; even sizes cover -L/2 .. L/2-1.
class Kernel {
public:
    /// Throws ConfigError for L < 1, or for a Gaussian without a positive
    /// finite sigma.
    static Kernel build(KernelShape shape, int size,
                        std::optional<double> sigma = std::nullopt);

    KernelShape shape() const noexcept { return shape_; }
    int size() const noexcept { return static_cast<int>(coefficients_.size()); }
    std::optional<double> sigma() const noexcept { return sigma_; }
    int first_offset() const noexcept { return first_offset_; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }

private:
    Kernel(KernelShape shape, std::optional<double> sigma, int first_offset,
           std::vector<double> coefficients);

    KernelShape shape_;
    std::optional<double> sigma_;
    int first_offset_;
    std::vector<double> coefficients_;
};

/// Weighted moving average. Near sentence edges the kernel is truncated to
/// in-range positions and the remaining coefficients renormalized.
std::vector<double> smooth(std::span<const double> raw, const Kernel& kernel);

/// Streaming count/mean/variance (Welford), mergeable across partitions.
class ScoreMoments {
public:
    void add(double x);
    void add(std::span<const double> xs) {
        for (double x : xs) add(x);
    }
    void merge(const ScoreMoments& other);

    std::uint64_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    /// Population variance.
    double variance() const noexcept {
        return count_ == 0 ? 0.0 : m2_ / static_cast<double>(count_);
    }

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Population variance of all corpus scores; needs at least two scores.
double global_variance(std::span<const double> scores);

enum class SigmaPolicy { variance, stddev, fixed };

SigmaPolicy parse_sigma_policy(std::string_view name);
std::string_view to_string(SigmaPolicy policy);

/// Sigma for the Gaussian kernel from corpus moments. `variance` uses the
/// variance itself as sigma, `stddev` its square root, `fixed` the given
/// value. Throws if fewer than two scores were seen.
double resolve_sigma(SigmaPolicy policy, const ScoreMoments& moments,
                     double fixed_sigma);

/// Kernel for a corpus. When every raw score is identical any normalized
/// kernel leaves the scores unchanged, so the identity kernel is returned
/// instead of failing on a zero sigma.
Kernel corpus_kernel(KernelShape shape, int size, SigmaPolicy policy,
                     double fixed_sigma, const ScoreMoments& moments);

}  // namespace wordweight
