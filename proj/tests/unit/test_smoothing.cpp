#include <cmath>
#include <random>

#include "doctest.h"

#include "wordweight/error.hpp"
#include "wordweight/smoothing.hpp"

#include "brute_force.hpp"

using namespace wordweight;

namespace {

using Vec = std::vector<double>;

Vec random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    Vec v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

std::vector<Kernel> sample_kernels() {
    return {Kernel::build(KernelShape::none, 1),       Kernel::build(KernelShape::mean, 1),
            Kernel::build(KernelShape::mean, 3),       Kernel::build(KernelShape::mean, 4),
            Kernel::build(KernelShape::gaussian, 5, 1.0), Kernel::build(KernelShape::gaussian, 5, 40.0),
            Kernel::build(KernelShape::gaussian, 6, 0.7)};
}

}  // namespace

TEST_CASE("kernel coefficients") {
    auto mean3 = Kernel::build(KernelShape::mean, 3);
    REQUIRE(mean3.size() == 3);
    CHECK(mean3.first_offset() == -1);
    for (double c : mean3.coefficients()) CHECK(c == doctest::Approx(1.0 / 3));

    auto mean1 = Kernel::build(KernelShape::mean, 1);
    CHECK(mean1.coefficients().size() == 1);
    CHECK(mean1.coefficients()[0] == 1.0);

    auto none = Kernel::build(KernelShape::none, 7);
    CHECK(none.size() == 1);
    CHECK(none.coefficients()[0] == 1.0);

    auto g = Kernel::build(KernelShape::gaussian, 3, 1.0);
    double e = std::exp(-0.5);
    REQUIRE(g.size() == 3);
    CHECK(g.coefficients()[0] == doctest::Approx(e / (1 + 2 * e)).epsilon(1e-12));
    CHECK(g.coefficients()[1] == doctest::Approx(1 / (1 + 2 * e)).epsilon(1e-12));
    CHECK(g.coefficients()[0] == doctest::Approx(0.2741).epsilon(1e-4));
    CHECK(g.coefficients()[1] == doctest::Approx(0.4519).epsilon(1e-4));

    auto even = Kernel::build(KernelShape::mean, 4);
    CHECK(even.first_offset() == -2);
    CHECK(even.size() == 4);
}

TEST_CASE("kernels are normalized and non-negative") {
    for (const auto& k : sample_kernels()) {
        double sum = 0.0;
        for (double c : k.coefficients()) {
            CHECK(c >= 0.0);
            sum += c;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("invalid kernels are configuration errors") {
    CHECK_THROWS_AS(Kernel::build(KernelShape::mean, 0), ConfigError);
    CHECK_THROWS_WITH_AS(Kernel::build(KernelShape::gaussian, 5),
                         doctest::Contains("degenerate sigma"), ConfigError);
    CHECK_THROWS_WITH_AS(Kernel::build(KernelShape::gaussian, 5, 0.0),
                         doctest::Contains("degenerate sigma"), ConfigError);
    CHECK_THROWS_AS(Kernel::build(KernelShape::gaussian, 5, -1.0), ConfigError);
    CHECK_THROWS_AS(Kernel::build(KernelShape::gaussian, 5, std::nan("")), ConfigError);
    CHECK_THROWS_AS(parse_kernel_shape("box"), ConfigError);
    CHECK(parse_kernel_shape("gaussian") == KernelShape::gaussian);
    CHECK_THROWS_AS(parse_sigma_policy("range"), ConfigError);
}

TEST_CASE("global variance") {
    CHECK(global_variance(Vec{0, 2}) == 1.0);
    Vec xs{-1, 0, 1, 2};
    double mean = 0.0;
    for (double x : xs) mean += x / 4;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean) / 4;
    CHECK(global_variance(xs) == doctest::Approx(var).epsilon(1e-15));
    CHECK(global_variance(xs) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(global_variance(Vec{1, 1, 1}) == 0.0);
    CHECK_THROWS_AS(global_variance(Vec{1}), Error);

    ScoreMoments m;
    m.add(Vec{1, 1, 1});
    CHECK_THROWS_WITH(Kernel::build(KernelShape::gaussian, 5, resolve_sigma(SigmaPolicy::variance, m, 1.0)),
                      doctest::Contains("degenerate sigma"));
    CHECK(corpus_kernel(KernelShape::gaussian, 5, SigmaPolicy::variance, 1.0, m).shape() == KernelShape::none);
}

TEST_CASE("sigma policies") {
    ScoreMoments m;
    m.add(Vec{0, 4});
    CHECK(resolve_sigma(SigmaPolicy::variance, m, 9.0) == 4.0);
    CHECK(resolve_sigma(SigmaPolicy::stddev, m, 9.0) == 2.0);
    CHECK(resolve_sigma(SigmaPolicy::fixed, m, 9.0) == 9.0);
    auto k = corpus_kernel(KernelShape::gaussian, 5, SigmaPolicy::variance, 1.0, m);
    REQUIRE(k.sigma().has_value());
    CHECK(*k.sigma() == 4.0);
}

TEST_CASE("streaming moments merge like one pass") {
    std::mt19937_64 rng(5);
    auto xs = random_vector(rng, 1001);
    ScoreMoments all, left, right;
    all.add(xs);
    left.add(std::span<const double>(xs).first(400));
    right.add(std::span<const double>(xs).subspan(400));
    left.merge(right);
    CHECK(left.count() == all.count());
    CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-12));
    CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
    CHECK(all.variance() == doctest::Approx(global_variance(xs)).epsilon(1e-12));
}

TEST_CASE("smoothing examples") {
    auto mean3 = Kernel::build(KernelShape::mean, 3);
    auto out = smooth(Vec{0, 0, 6, 0, 0}, mean3);
    Vec want{0, 2, 2, 2, 0};
    for (std::size_t i = 0; i < 5; ++i) CHECK(out[i] == doctest::Approx(want[i]).epsilon(1e-14));

    for (const auto& k : sample_kernels()) {
        for (double v : smooth(Vec{3.5, 3.5, 3.5, 3.5}, k)) CHECK(v == doctest::Approx(3.5).epsilon(1e-14));
        CHECK(smooth(Vec{}, k).empty());
    }

    Vec raw{0.3, -1.2, 4.0, 0.0};
    CHECK(smooth(raw, Kernel::build(KernelShape::none, 5)) == raw);
    CHECK(smooth(raw, Kernel::build(KernelShape::mean, 1)) == raw);
}

TEST_CASE("smoothing agrees with the brute-force loop on random vectors") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = random_vector(rng, rng() % 20);
        int L = 1 + static_cast<int>(rng() % 7);
        double sigma = 0.3 + static_cast<double>(rng() % 50) / 10;
        auto got = smooth(s, Kernel::build(KernelShape::gaussian, L, sigma));
        auto want = oracle::smooth(s, L, true, sigma);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12);
        got = smooth(s, Kernel::build(KernelShape::mean, L));
        want = oracle::smooth(s, L, false);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12);
    }
}

TEST_CASE("smoothing is linear and stays within the input range") {
    std::mt19937_64 rng(13);
    for (const auto& k : sample_kernels()) {
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t n = 1 + rng() % 25;
            auto s = random_vector(rng, n);
            auto u = random_vector(rng, n);
            double a = 2.5, b = -0.75;
            Vec combo(n);
            for (std::size_t i = 0; i < n; ++i) combo[i] = a * s[i] + b * u[i];
            auto lhs = smooth(combo, k);
            auto ss = smooth(s, k);
            auto su = smooth(u, k);
            auto [lo, hi] = std::minmax_element(s.begin(), s.end());
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(lhs[i] - (a * ss[i] + b * su[i])) < 1e-12);
                CHECK(ss[i] >= *lo - 1e-12);
                CHECK(ss[i] <= *hi + 1e-12);
            }
        }
    }
}
