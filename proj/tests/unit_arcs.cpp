#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "bracketsum/arcs.hpp"

using namespace bracketsum;

TEST_CASE("center enumeration") {
    auto ctx = make_context(2, 1);
    ArcConfig cfg;

    // N^gamma < 2: only q = 1, |b| <= 1 -> {0, +-(sqrt(2)-1)}
    auto small = enumerate_centers(2.0, cfg, ctx);
    REQUIRE(small.size() == 3);
    std::vector<double> alphas;
    for (const auto& c : small) alphas.push_back(c.alpha);
    std::sort(alphas.begin(), alphas.end());
    CHECK(alphas[0] == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(alphas[1] == doctest::Approx(0.0));
    CHECK(alphas[2] == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));

    // N = 2^20, gamma = 1/20: q, |b| <= 2; closed-form count:
    // q=1: b in [-2,2] (5); q=2: a=0 with b odd (2) + a=1 with any b (5)
    auto big = enumerate_centers(std::pow(2.0, 20), cfg, ctx);
    CHECK(big.size() == 12);
    for (std::size_t i = 0; i < big.size(); ++i)
        for (std::size_t j = i + 1; j < big.size(); ++j)
            CHECK(torus_dist(big[i], big[j]) > 0.0);
}

TEST_CASE("arc classification") {
    auto ctx = make_context(2, 1);
    ArcConfig cfg;
    double N = std::pow(2.0, 20);

    auto center = make_quadrat(0, 1, 1, ctx);
    auto lab = classify_frequency(center.alpha, N, cfg, ctx);
    CHECK(lab.kind == ArcLabel::Kind::Major);
    REQUIRE(lab.center.has_value());
    CHECK(lab.center->same_triple(center));
    CHECK(lab.t == 0.0);

    auto lab2 =
        classify_frequency(center.alpha + std::pow(N, -1.5), N, cfg, ctx);
    CHECK(lab2.kind == ArcLabel::Kind::Minor2);
    CHECK(lab2.center->same_triple(center));

    auto lab3 = classify_frequency(0.23, N, cfg, ctx);
    CHECK(lab3.kind == ArcLabel::Kind::Minor1);
    CHECK(!lab3.center.has_value());

    CHECK_THROWS_AS(classify_frequency(0.7, N, cfg, ctx),
                    std::invalid_argument);
    // at N = 2 the annulus is wider than the center separation
    CHECK_THROWS_AS(classify_frequency(0.2, 2.0, cfg, ctx),
                    AmbiguousClassificationError);

    // arc disjointness at N = 2^20: ||alpha - alpha'|| > 2 N^(gamma-1)
    auto centers = enumerate_centers(N, cfg, ctx);
    double w = 2.0 * std::pow(N, -1.0 + cfg.gamma);
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            CHECK(torus_dist(centers[i], centers[j]) > w);

    // partition totality on a grid: every point gets exactly one label
    for (int i = 0; i < 1000; ++i) {
        double xi = -0.5 + (i + 0.5) / 1000.0;
        CHECK_NOTHROW(classify_frequency(xi, N, cfg, ctx));
    }
}

TEST_CASE("frequency classes P_{s,t}") {
    auto ctx = make_context(2, 1);
    ArcConfig cfg;

    auto base = freq_classes(0, cfg, ctx);
    REQUIRE(base.size() == 1);
    CHECK(base[0].s == 0);
    CHECK(base[0].t == 0);
    CHECK(base[0].members.size() == 3);  // (0,0,1), (0,+-1,1)

    // n = 40: s,t <= 2; check m_{2,1} = 40, disjointness, and that the
    // union reproduces the full q, |b| <= 4 enumeration
    auto classes = freq_classes(40, cfg, ctx);
    CHECK(classes.size() == 9);
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> seen;
    std::size_t total = 0;
    for (const auto& cls : classes) {
        if (cls.s == 2 && cls.t == 1) CHECK(cls.m_st == doctest::Approx(40.0));
        for (const auto& c : cls.members) {
            CHECK(seen.insert({c.a, c.b, c.q}).second);  // pairwise disjoint
            ++total;
        }
    }
    auto all = enumerate_normalized(ctx, 4, 4);
    CHECK(total == all.size());
    for (const auto& c : all)
        CHECK(seen.count({c.a, c.b, c.q}) == 1);
}

TEST_CASE("bump families") {
    BumpSpec eta{BumpFamily::eta, 2.0};
    BumpSpec psi{BumpFamily::psi, 2.0};
    BumpSpec chi{BumpFamily::chi, 2.0};

    CHECK(bump(eta, 0.0) == 1.0);
    CHECK(bump(eta, 1.0) == 1.0);
    CHECK(bump(eta, 2.1) == 0.0);
    double mid = bump(eta, 1.5);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
    CHECK(bump(chi, 0.0) == 1.0);

    // sandwich inequalities on a dense grid
    for (int i = 0; i <= 10000; ++i) {
        double x = -2.5 + 5.0 * i / 10000.0;
        double e = bump(eta, x), p = bump(psi, x), c = bump(chi, x);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        if (std::fabs(x) <= 1.0) CHECK(e == 1.0);
        if (std::fabs(x) >= 2.0) CHECK(e == 0.0);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        if (std::fabs(x) <= 0.125) CHECK(p == 1.0);
        if (std::fabs(x) >= 0.25) CHECK(p == 0.0);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        CHECK(c == bump(chi, -x));
    }

    // psi telescoping: sum_n |psi_{n+1} - psi_n| = psi_0 - psi_top <= 1
    for (int i = 0; i <= 200; ++i) {
        double xi = -0.5 + i / 200.0;
        double tele = 0.0;
        for (int n = 0; n < 30; ++n)
            tele += std::fabs(bump(psi, std::pow(4.0, n + 1) * xi) -
                              bump(psi, std::pow(4.0, n) * xi));
        CHECK(tele <= 1.0 + 1e-12);
    }
}

TEST_CASE("approximant multiplier") {
    auto ctx = make_context(2, 1);
    ArcConfig cfg;

    CHECK(std::abs(approximant(0.0, 5, cfg, ctx) - 1.0) < 1e-12);
    CHECK(approximant(0.107, 20, cfg, ctx) == std::complex<double>(0.0));

    // single-summand composition near a center
    auto c = make_quadrat(1, 1, 2, ctx);
    int n = 20;
    double xi = c.alpha + 1e-12;
    double d = xi - c.alpha;  // the rounded offset actually used
    double rho =
        bump({BumpFamily::eta, cfg.lambda},
             std::pow(cfg.lambda, (2.0 - cfg.gamma_prime) * n) * std::fabs(d));
    auto want = gauss_G(1, 1, 2, ctx).value * fresnel_F(0.25).value *
                v_tilde(std::pow(2.0, n), d, ctx).value * rho;
    CHECK(std::abs(approximant(xi, n, cfg, ctx) - want) < 1e-8);

    // cached evaluator agrees with the direct path
    ApproximantEval ev(cfg, ctx, n);
    for (double x : {0.0, xi, 0.107, -0.41421356, 0.25})
        CHECK(std::abs(ev(x, n) - approximant(x, n, cfg, ctx)) < 1e-13);
}

TEST_CASE("pi multiplier identities") {
    auto ctx = make_context(2, 1);
    ArcConfig cfg;

    // summing Pi^{g_k, V~} over all classes reproduces the approximant
    int n = 20;
    for (double xi : {0.0, 0.2071067811865 + 1e-12, 0.107}) {
        std::complex<double> tot = 0.0;
        for (const auto& cls : freq_classes(n, cfg, ctx))
            tot += pi_multiplier(xi, cls, n, PiG::g_k, PiH::v_tilde, n,
                                 PiRho::eta, cfg, ctx);
        CHECK(std::abs(tot - approximant(xi, n, cfg, ctx)) < 1e-13);
    }

    // arithmetic/oscillatory factorization:
    // Pi^{g,V~}_{<=n} = Pi^{1,V~}_{<=n} * Pi^{g,1}_{<= m_st - 1}
    auto classes = freq_classes(40, cfg, ctx);
    for (const auto& cls : classes) {
        if (cls.s == 0 && cls.t == 0) continue;  // m_st = 0 has no cutoff room
        int nn = 40, m_cut = (int)cls.m_st - 1;
        std::vector<double> grid;
        for (int i = 0; i < 64; ++i) grid.push_back(-0.5 + i / 64.0);
        for (const auto& c : cls.members) {
            grid.push_back(c.alpha);
            grid.push_back(c.alpha + 1.4 * std::pow(2.0, -1.95 * nn));
        }
        for (double xi : grid) {
            if (xi < -0.5 || xi >= 0.5) continue;
            auto lhs = pi_multiplier(xi, cls, nn, PiG::g_k, PiH::v_tilde, nn,
                                     PiRho::eta, cfg, ctx);
            auto rhs = pi_multiplier(xi, cls, nn, PiG::one, PiH::v_tilde, nn,
                                     PiRho::eta, cfg, ctx) *
                       pi_multiplier(xi, cls, m_cut, PiG::g_k, PiH::one, 0,
                                     PiRho::eta, cfg, ctx);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }

    // psi projection law on the base class (m_st = 0):
    // Pi^{1,psi_n,sqrt(eta)} * Pi^{1,psi_m,sqrt(eta)} = Pi^{1,psi_max,eta}
    const auto base = freq_classes(0, cfg, ctx)[0];
    for (auto [a, b] : {std::pair<int, int>{1, 2}, {1, 3}, {2, 5}}) {
        for (int i = 0; i <= 400; ++i) {
            double xi = -0.5 + i / 401.0;
            auto lhs = pi_multiplier(xi, base, 0, PiG::one, PiH::psi_n, a,
                                     PiRho::sqrt_eta, cfg, ctx) *
                       pi_multiplier(xi, base, 0, PiG::one, PiH::psi_n, b,
                                     PiRho::sqrt_eta, cfg, ctx);
            auto rhs = pi_multiplier(xi, base, 0, PiG::one, PiH::psi_n,
                                     std::max(a, b), PiRho::eta, cfg, ctx);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}
