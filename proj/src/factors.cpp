#include "bracketsum/factors.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_complex.hpp>

namespace bracketsum {

namespace {

constexpr std::int64_t kDirectCap = 1 << 13;  // on 2*q*k2

// e(j/q) for j in [0,q)
std::vector<std::complex<double>> root_table(std::int64_t q) {
    std::vector<std::complex<double>> e((std::size_t)q);
    for (std::int64_t j = 0; j < q; ++j)
        e[(std::size_t)j] = e_of((double)j / (double)q);
    return e;
}

std::complex<double> gauss_g_with_table(
    std::int64_t a, std::int64_t b, std::int64_t q,
    const std::vector<std::complex<double>>& e) {
    std::int64_t am = mod_floor(a, q), bm = mod_floor(b, q);
    std::complex<double> sum = 0.0;
    for (std::int64_t r = 0; r < q; ++r) {
        std::int64_t num = (std::int64_t)(((int128)am * r * r + (int128)bm * r) % q);
        sum += e[(std::size_t)num];
    }
    return sum / (double)q;
}

void check_gq(std::int64_t q, const char* who) {
    if (q < 1) throw std::invalid_argument(std::string(who) + ": q must be >= 1");
    if (q > (std::int64_t(1) << 26))
        throw BudgetExceededError(std::string(who) + ": modulus too large");
}

}  // namespace

FactorValue gauss_g(std::int64_t a, std::int64_t b, std::int64_t q) {
    check_gq(q, "gauss_g");
    auto e = root_table(q);
    return {gauss_g_with_table(a, b, q, e), FactorMethod::direct_sum,
            (double)q * std::ldexp(1.0, -50)};
}

FactorValue gauss_G_direct(std::int64_t a, std::int64_t b, std::int64_t q,
                           const KContext& ctx) {
    check_gq(q, "gauss_G_direct");
    std::int64_t Q = 2 * q * ctx.k2;
    if (Q > kDirectCap)
        throw BudgetExceededError("gauss_G_direct: 2*q*k2 beyond double-loop budget");
    std::int64_t am = mod_floor(a, q), bm = mod_floor(b, Q);
    auto e = root_table(Q);
    std::complex<double> sum = 0.0;
    for (std::int64_t r = 0; r < Q; ++r) {
        int128 br2 = (int128)bm * ctx.k1 % Q * r % Q * r % Q;
        for (std::int64_t s = 0; s < Q; ++s) {
            int128 num = (br2 + (int128)2 * ctx.k2 * am % Q * r % Q * s +
                          (int128)bm * ctx.k2 % Q * s % Q * s) %
                         Q;
            sum += e[(std::size_t)num];
        }
    }
    return {sum / (double)Q / (double)Q, FactorMethod::direct_sum,
            (double)Q * 1e-15};
}

FactorValue gauss_G_reduced(std::int64_t a, std::int64_t b, std::int64_t q,
                            const KContext& ctx) {
    check_gq(q, "gauss_G_reduced");
    std::int64_t Q = 2 * q * ctx.k2;
    if (Q > (std::int64_t(1) << 15))
        throw BudgetExceededError("gauss_G_reduced: modulus too large");
    std::int64_t am = mod_floor(a, q), bm = mod_floor(b, Q);
    auto e = root_table(Q);
    std::complex<double> sum = 0.0;
    for (std::int64_t s = 1; s <= Q; ++s) {
        std::int64_t num = (std::int64_t)((int128)bm * ctx.k2 % Q * s % Q * s % Q);
        std::int64_t lin = (std::int64_t)((int128)2 * ctx.k2 * am % Q * s % Q);
        sum += e[(std::size_t)num] * gauss_g_with_table(bm * ctx.k1, lin, Q, e);
    }
    return {sum / (double)Q, FactorMethod::reduced_sum, (double)Q * 1e-14};
}

FactorValue gauss_G(std::int64_t a, std::int64_t b, std::int64_t q,
                    const KContext& ctx) {
    if (2 * q * ctx.k2 <= kDirectCap) return gauss_G_direct(a, b, q, ctx);
    return gauss_G_reduced(a, b, q, ctx);
}

std::vector<std::complex<double>> gauss_G_row(std::int64_t b, std::int64_t q,
                                              const KContext& ctx) {
    check_gq(q, "gauss_G_row");
    std::int64_t Q = 2 * q * ctx.k2;
    std::int64_t bm = mod_floor(b, Q);
    auto e = root_table(Q);
    // residue-class sums of the two quadratic weights: the mixed phase
    // a*r*s/q only sees r,s through their residues mod q
    std::vector<std::complex<double>> A((std::size_t)q), B((std::size_t)q);
    for (std::int64_t r = 0; r < Q; ++r) {
        std::int64_t nr = (std::int64_t)((int128)bm * ctx.k1 % Q * r % Q * r % Q);
        A[(std::size_t)(r % q)] += e[(std::size_t)nr];
        std::int64_t ns = (std::int64_t)((int128)bm * ctx.k2 % Q * r % Q * r % Q);
        B[(std::size_t)(r % q)] += e[(std::size_t)ns];
    }
    std::vector<std::complex<double>> c((std::size_t)q);
    for (std::int64_t rr = 0; rr < q; ++rr)
        for (std::int64_t ss = 0; ss < q; ++ss)
            c[(std::size_t)(rr * ss % q)] += A[(std::size_t)rr] * B[(std::size_t)ss];
    auto eq = root_table(q);
    std::vector<std::complex<double>> out((std::size_t)q);
    for (std::int64_t a = 0; a < q; ++a) {
        std::complex<double> sum = 0.0;
        for (std::int64_t u = 0; u < q; ++u)
            sum += c[(std::size_t)u] * eq[(std::size_t)(a * u % q)];
        out[(std::size_t)a] = sum / (double)Q / (double)Q;
    }
    return out;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1,1] (positive half).
constexpr double kGLX[8] = {
    0.0950125098376374401853, 0.2816035507792589132305,
    0.4580167776572273863424, 0.6178762444026437484467,
    0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr double kGLW[8] = {
    0.1894506104550684962854, 0.1826034150449235888667,
    0.1691565193950025381893, 0.1495959888165767320815,
    0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

}  // namespace

namespace {

// Large-|xi| evaluation: stationary-phase head at x = 0 plus the
// integration-by-parts tail series from the x = 1 endpoint,
//   F(xi) = e^{-i pi/4}/(2 sqrt(2 xi))
//           + e(-xi)/c * sum_m (2m-1)!! / c^m,  c = -4 pi i xi  (xi > 0),
// with F(-xi) = conj(F(xi)).
FactorValue fresnel_F_asymptotic(double xi) {
    double x = std::fabs(xi);
    std::complex<double> head =
        std::polar(1.0 / (2.0 * std::sqrt(2.0 * x)), -kTwoPi / 8.0);
    std::complex<double> c(0.0, -2.0 * kTwoPi * x);
    std::complex<double> endpoint = e_of(-(x - std::floor(x)));
    std::complex<double> term = endpoint / c, tail = 0.0;
    double last = std::abs(term), truncation = last;
    for (int m = 1; m <= 12; ++m) {
        tail += term;
        term *= (double)(2 * m - 1) / c;
        truncation = std::abs(term);
        if (truncation >= last) break;  // past the optimal cut
        last = truncation;
    }
    std::complex<double> v = head + tail;
    if (xi < 0) v = std::conj(v);
    return {v, FactorMethod::series, truncation + 1e-15};
}

}  // namespace

FactorValue fresnel_F(double xi) {
    if (std::fabs(xi) > 1e4) return fresnel_F_asymptotic(xi);
    std::int64_t M = std::max<std::int64_t>(
        64, (std::int64_t)std::ceil(8.0 * std::fabs(xi)));
    double h = 1.0 / (double)M;
    KahanComplex acc;
    for (std::int64_t j = 0; j < M; ++j) {
        double mid = (j + 0.5) * h, half = 0.5 * h;
        for (int i = 0; i < 8; ++i) {
            double xp = mid + half * kGLX[i], xm = mid - half * kGLX[i];
            std::complex<double> v =
                e_of(-xi * xp * xp) + e_of(-xi * xm * xm);
            acc.add(half * kGLW[i] * v);
        }
    }
    return {acc.value(), FactorMethod::quadrature, 1e-12 + (double)M * 1e-18};
}

FactorValue fresnel_F_series(double xi) {
    if (std::fabs(xi) > 4.0)
        throw std::invalid_argument("fresnel_F_series: requires |xi| <= 4");
    using C50 = boost::multiprecision::cpp_complex_50;
    using R50 = C50::value_type;
    const R50 pi = 4 * atan(R50(1));
    C50 z(R50(0), -2 * pi * R50(xi));  // -2*pi*i*xi
    C50 term = 1, sum = 1;
    for (int m = 1; m < 400; ++m) {
        term *= z / m;
        sum += term / (2 * m + 1);
        if (abs(term) < 1e-40) break;
    }
    return {{sum.real().convert_to<double>(), sum.imag().convert_to<double>()},
            FactorMethod::series,
            1e-14};
}

FactorValue v_factor(double N, double t, const KContext& ctx) {
    if (!(N >= 1.0)) throw std::invalid_argument("v_factor: N must be >= 1");
    FactorValue f = fresnel_F(-t * ctx.sqrtk * N * N);
    return f;
}

FactorValue v_tilde(double N, double t, const KContext& ctx) {
    double tt = t - std::floor(t);
    if (tt >= 0.5) tt -= 1.0;
    return v_factor(N, tt, ctx);
}

}  // namespace bracketsum
