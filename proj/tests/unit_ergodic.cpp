#include <doctest.h>

#include <cmath>
#include <random>

#include "bracketsum/ergodic.hpp"
#include "bracketsum/fit.hpp"

using namespace bracketsum;

namespace {

Signal random_signal(std::int64_t offset, std::int64_t len,
                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<std::complex<double>> v((std::size_t)len);
    for (auto& z : v) z = {uni(rng), uni(rng)};
    return make_signal(offset, std::move(v));
}

std::complex<double> value_at(const Signal& s, std::int64_t x) {
    std::int64_t i = x - s.offset;
    if (i < 0 || i >= (std::int64_t)s.values.size()) return 0.0;
    return s.values[(std::size_t)i];
}

// naive double-loop oscillation oracle at one point
double naive_osc(const std::vector<Signal>& fam, const OscSpec& spec,
                 std::int64_t x) {
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < spec.I.size(); ++j) {
        double block = 0.0;
        for (std::int64_t n = spec.I[j]; n < spec.I[j + 1]; ++n)
            block = std::max(
                block, std::abs(value_at(fam[(std::size_t)n], x) -
                                value_at(fam[(std::size_t)spec.I[j]], x)));
        sum += block * block;
    }
    return std::sqrt(sum);
}

}  // namespace

TEST_CASE("averaging operator") {
    auto ctx = make_context(2, 1);
    auto delta = make_signal(0, {1.0});

    auto a1 = average_op(delta, 1.0, ctx);
    CHECK(a1.offset == -1);
    CHECK(std::abs(a1.values[0] - 1.0) < 1e-15);

    // t = 3: mass 1/3 at -1, -4, -12 (floor table {1, 2, 4})
    auto a3 = average_op(delta, 3.0, ctx);
    CHECK(a3.offset == -12);
    REQUIRE(a3.values.size() == 13);
    for (std::int64_t x = -12; x <= 0; ++x) {
        double want = (x == -1 || x == -4 || x == -12) ? 1.0 / 3.0 : 0.0;
        CHECK(std::abs(value_at(a3, x) - want) < 1e-15);
    }

    // contraction and homogeneity on random data
    auto f = random_signal(-7, 200, 5);
    for (double t : {2.5, 7.0, 31.0}) {
        auto af = average_op(f, t, ctx);
        CHECK(af.l2_norm <= f.l2_norm * (1.0 + 1e-12));
        // shift equivariance, exactly
        auto g = make_signal(f.offset + 5, f.values);
        auto ag = average_op(g, t, ctx);
        CHECK(ag.offset == af.offset + 5);
        CHECK(ag.values == af.values);
    }

    CHECK_THROWS_AS(average_op(f, 1e9, ctx), BudgetExceededError);
    CHECK_THROWS_AS(average_op(f, 0.5, ctx), std::invalid_argument);
}

TEST_CASE("oscillation seminorm") {
    auto ctx = make_context(2, 1);

    // constant family -> 0
    std::vector<Signal> constant(5, make_signal(0, {1.0, 2.0, 3.0}));
    auto z = oscillation(constant, {2.0, {0, 2, 5}});
    for (auto v : z.values) CHECK(std::abs(v) == 0.0);

    // single jump of height h inside one block -> pointwise |h|
    std::vector<Signal> jump{make_signal(0, {0.0}), make_signal(0, {0.0}),
                             make_signal(0, {2.5}), make_signal(0, {2.5})};
    auto oj = oscillation(jump, {2.0, {0, 4}});
    CHECK(std::abs(value_at(oj, 0) - 2.5) < 1e-15);

    // random family vs the naive oracle
    std::vector<Signal> fam;
    for (int n = 0; n < 7; ++n)
        fam.push_back(random_signal(-3 - n, 40 + 5 * n, 100 + (unsigned)n));
    OscSpec spec{2.0, {0, 2, 3, 5, 7}};
    auto o = oscillation(fam, spec);
    for (std::int64_t x = -15; x < 45; ++x)
        CHECK(std::abs(value_at(o, x).real() - naive_osc(fam, spec, x)) <
              1e-12);

    CHECK_THROWS_AS(oscillation(fam, OscSpec{2.0, {0, 9}}),
                    IndexOutOfRangeError);
    CHECK_THROWS(oscillation(fam, OscSpec{2.0, {3, 3}}));

    // maximal-vs-oscillation chain with I = {0, |family|}:
    // sup_n |a_n(x)| <= |a_0(x)| + O2(x) pointwise
    auto chain = oscillation(fam, {2.0, {0, 7}});
    for (std::int64_t x = -15; x < 45; ++x) {
        double sup = 0.0;
        for (const auto& s : fam) sup = std::max(sup, std::abs(value_at(s, x)));
        CHECK(sup <= std::abs(value_at(fam[0], x)) +
                         value_at(chain, x).real() + 1e-12);
    }
}

TEST_CASE("oscillation-ratio experiment") {
    auto ctx = make_context(2, 1);
    std::mt19937_64 rng(9);
    std::vector<std::complex<double>> v(256);
    for (auto& z : v) z = (rng() & 1) ? 1.0 : -1.0;
    auto f = make_signal(0, v);

    auto st = osc_ratio_experiment(f, 2.0, 8, 50, 1, ctx);
    CHECK(std::isfinite(st.max_osc_ratio));
    CHECK(st.max_osc_ratio > 0.0);
    CHECK(st.mean_osc_ratio <= st.max_osc_ratio);
    CHECK(st.maximal_ratio > 0.0);
    // crude sanity: O2 over J blocks is at most ~2 sqrt(J) * sup ||A_n f||
    CHECK(st.max_osc_ratio <= 2.0 * std::sqrt(9.0));

    // determinism and homogeneity (scaling by 2 is exact in binary)
    auto st2 = osc_ratio_experiment(f, 2.0, 8, 50, 1, ctx);
    CHECK(st.max_osc_ratio == st2.max_osc_ratio);
    CHECK(st.mean_osc_ratio == st2.mean_osc_ratio);
    CHECK(st.maximal_ratio == st2.maximal_ratio);
    std::vector<std::complex<double>> w = v;
    for (auto& z : w) z *= 2.0;
    auto st3 = osc_ratio_experiment(make_signal(0, w), 2.0, 8, 50, 1, ctx);
    CHECK(st3.max_osc_ratio == doctest::Approx(st.max_osc_ratio).epsilon(1e-12));
    CHECK(st3.maximal_ratio == doctest::Approx(st.maximal_ratio).epsilon(1e-12));

    // cross-seed stability of the sampled sup
    auto sa = osc_ratio_experiment(f, 2.0, 8, 100, 1, ctx);
    auto sb = osc_ratio_experiment(f, 2.0, 8, 100, 2, ctx);
    CHECK(std::fabs(sa.max_osc_ratio - sb.max_osc_ratio) <=
          0.2 * std::max(sa.max_osc_ratio, sb.max_osc_ratio));

    CHECK_THROWS(osc_ratio_experiment(f, 3.0, 8, 10, 1, ctx));
}

TEST_CASE("approximant operator") {
    auto ctx = make_context(2, 1);
    ArcConfig cfg;
    auto f = random_signal(0, 64, 21);

    // energy bound: the multiplier modulus stays within 1 + o(1)
    auto tf = approx_operator(f, 3, cfg, ctx, 4096);
    CHECK(tf.l2_norm <= f.l2_norm * (1.0 + 1e-9));

    // grid-refinement stability
    auto g = random_signal(0, 16, 22);
    auto t1 = approx_operator(g, 2, cfg, ctx, 1 << 13);
    auto t2 = approx_operator(g, 2, cfg, ctx, 1 << 14);
    double diff = 0.0;
    for (std::int64_t x = t1.offset; x < t1.offset + (std::int64_t)t1.values.size();
         ++x)
        diff += std::norm(value_at(t1, x) - value_at(t2, x));
    CHECK(std::sqrt(diff) < 1e-8);

    CHECK_THROWS_AS(approx_operator(f, 3, cfg, ctx, 256), GridTooSmallError);
    CHECK_THROWS(approx_operator(f, 3, cfg, ctx, 3000));

    // ||A_{2^n} f - T_n f|| / ||f|| decays geometrically in n
    auto h = random_signal(0, 256, 23);
    std::vector<std::pair<double, double>> pts;
    for (int n = 2; n <= 6; ++n) {
        auto an = average_op(h, std::pow(2.0, n), ctx);
        auto tn = approx_operator(h, n, cfg, ctx, 1 << 15);
        std::int64_t lo = std::min(an.offset, tn.offset);
        std::int64_t hi = std::max(
            an.offset + (std::int64_t)an.values.size(),
            tn.offset + (std::int64_t)tn.values.size());
        double err = 0.0;
        for (std::int64_t x = lo; x < hi; ++x)
            err += std::norm(value_at(an, x) - value_at(tn, x));
        pts.emplace_back(std::pow(2.0, n), std::sqrt(err) / h.l2_norm);
    }
    auto fit = fit_loglog(pts);
    CHECK(fit.exponent < -0.05);
}

TEST_CASE("log-log fitting") {
    std::vector<std::pair<double, double>> pts;
    for (int j = 4; j < 12; ++j)
        pts.emplace_back(std::pow(2.0, j), 3.0 * std::pow(2.0, -0.5 * j));
    auto fit = fit_loglog(pts);
    CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(fit.constant == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.r_squared > 0.999);
    CHECK(fit.r_squared <= 1.0);

    CHECK_THROWS(fit_loglog({{1.0, 1.0}, {2.0, 0.5}}));
    CHECK_THROWS(fit_loglog({{1.0, 1.0}, {2.0, -0.5}, {4.0, 1.0}, {8.0, 1.0}}));
}
