#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bracketsum/expsum.hpp"

using namespace bracketsum;

namespace {

using oct = boost::multiprecision::cpp_bin_float_oct;

// naive high-precision oracle for m_{N;k}(xi)
std::complex<double> naive_sum(std::int64_t N, double xi, const KContext& ctx) {
    oct x(xi);
    std::complex<double> acc = 0.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        oct ph = x * n * floor_n_sqrtk(n, ctx);
        ph -= floor(ph);
        acc += e_of(ph.convert_to<double>());
    }
    return acc / (double)N;
}

}  // namespace

TEST_CASE("exact floors") {
    auto ctx = make_context(2, 1);
    auto half = make_context(1, 2);
    CHECK(floor_n_sqrtk(1, ctx) == 1);
    CHECK(floor_n_sqrtk(10, ctx) == 14);  // isqrt(200) = 14
    CHECK(floor_n_sqrtk(7, half) == 4);   // floor(isqrt(98)/2) = 4

    // f <= n*sqrt(k1/k2) < f+1, exactly: f^2 k2 <= n^2 k1 < (f+1)^2 k2
    for (auto [k1, k2] : {std::pair<std::int64_t, std::int64_t>{2, 1},
                          {3, 1},
                          {1, 2},
                          {5, 3}}) {
        auto c = make_context(k1, k2);
        for (std::int64_t n = 1; n <= 10000; ++n) {
            std::int64_t f = floor_n_sqrtk(n, c);
            CHECK((uint128)f * f * (uint128)k2 <= (uint128)n * n * (uint128)k1);
            CHECK((uint128)(f + 1) * (f + 1) * (uint128)k2 >
                  (uint128)n * n * (uint128)k1);
        }
    }
    CHECK_THROWS_AS(floor_n_sqrtk(7000000000000000000LL, ctx), OverflowError);
}

TEST_CASE("phase fractions") {
    auto ctx = make_context(2, 1);
    CHECK(phase_frac(17, phase_from_real(0.0), ctx) == 0.0);
    // center (1,0,2): alpha = -1/2, n = 3, floor(3 sqrt 2) = 4: {-6} = 0
    auto c = make_quadrat(1, 0, 2, ctx);
    CHECK(phase_frac(3, phase_from_center(c), ctx) == 0.0);
    // center (0,1,1): {4 sqrt(2) - 4} at n = 2
    auto d = make_quadrat(0, 1, 1, ctx);
    CHECK(phase_frac(2, phase_from_center(d), ctx) ==
          doctest::Approx(4.0 * std::sqrt(2.0) - 5.0).epsilon(1e-12));
}

TEST_CASE("exponential sum basics") {
    auto ctx = make_context(2, 1);
    auto r0 = exp_sum(1000, phase_from_real(0.0), ctx);
    CHECK(r0.value == std::complex<double>(1.0, 0.0));
    CHECK(r0.n_terms == 1000);

    auto quarter = make_quadrat(1, 0, 4, ctx);
    auto r1 = exp_sum(1, phase_from_center(quarter), ctx);
    CHECK(std::abs(r1.value - std::complex<double>(0.0, 1.0)) < 1e-15);

    // |m| <= 1 up to phase-truncation slack
    auto r2 = exp_sum(5000, phase_from_real(0.37), ctx);
    CHECK(std::abs(r2.value) <= 1.0 + kTwoPi * r2.est_phase_error);
}

TEST_CASE("raw-mode oracle equivalence and conjugation") {
    auto ctx = make_context(2, 1);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    for (int i = 0; i < 50; ++i) {
        double xi = uni(rng);
        std::int64_t N = 100 + (std::int64_t)(rng() % 9901);
        auto v = exp_sum((double)N, phase_from_real(xi), ctx).value;
        CHECK(std::abs(v - naive_sum(N, xi, ctx)) < 1e-12);
        auto w = exp_sum((double)N, phase_from_real(-xi), ctx).value;
        CHECK(std::abs(w - std::conj(v)) < 1e-12);
    }
}

TEST_CASE("intervals, partitions and prefixes") {
    auto ctx = make_context(2, 1);
    auto xi = phase_from_real(0.2345);

    auto single = exp_sum_interval(5, 5, phase_from_real(0.0), ctx);
    CHECK(single.value == std::complex<double>(1.0, 0.0));
    CHECK_THROWS_AS(exp_sum_interval(7, 4, xi, ctx), EmptyIntervalError);

    auto whole = exp_sum(1000, xi, ctx).value;
    CHECK(std::abs(exp_sum_interval(1, 1000, xi, ctx).value - whole) < 1e-14);

    // partition invariance
    std::complex<double> mix = 0.0;
    std::int64_t cuts[4] = {1, 301, 551, 1001};
    for (int j = 0; j < 3; ++j) {
        auto part = exp_sum_interval(cuts[j], cuts[j + 1] - 1, xi, ctx);
        mix += (double)part.n_terms * part.value;
    }
    CHECK(std::abs(mix / 1000.0 - whole) < 1e-12);

    std::vector<std::int64_t> Ns{100, 500, 1000, 4096};
    auto pre = exp_sum_prefixes(Ns, xi, ctx);
    for (std::size_t i = 0; i < Ns.size(); ++i)
        CHECK(std::abs(pre[i] - exp_sum((double)Ns[i], xi, ctx).value) <
              1e-12);
}

TEST_CASE("parallel reduction is worker-count independent") {
    auto ctx = make_context(2, 1);
    auto xi = phase_from_real(0.37);
    auto a = exp_sum(200000, xi, ctx, 1).value;
    auto b = exp_sum(200000, xi, ctx, 8).value;
    auto c = exp_sum(200000, xi, ctx, 3).value;
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("bracket identity defect") {
    auto ctx = make_context(2, 1);
    auto half = make_context(1, 2);
    CHECK(bracket_identity_check(1, ctx) < 1e-30);
    CHECK(bracket_identity_check(100000, ctx) < 1e-30);
    CHECK(bracket_identity_check(7, half) < 1e-30);
}
