#include "bracketsum/heis.hpp"

#include <array>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bracketsum/expsum.hpp"

namespace bracketsum {

namespace {

using quad = boost::multiprecision::cpp_bin_float_quad;

double torus_norm_d(double f) {
    f -= std::floor(f);
    return f <= 0.5 ? f : 1.0 - f;
}

// Frac192 of s*x for a signed 64-bit s and a Frac192 x.
uint256 frac_mul_signed(const uint256& x, std::int64_t s) {
    if (s >= 0) return frac_mul_u64(x, (std::uint64_t)s);
    return frac_sub(uint256(0), frac_mul_u64(x, (std::uint64_t)(-s)));
}

// Frac192 of d * v where v is a nonnegative value scaled by 2^192.
uint256 frac_mul_double(const uint256& v, double d) {
    if (d == 0.0) return uint256(0);
    int e;
    double m = std::frexp(std::fabs(d), &e);
    auto mi = (std::uint64_t)std::ldexp(m, 53);  // exact 53-bit mantissa
    bigint prod = bigint(v) * mi;
    int shift = e - 53;
    bigint scaled = shift >= 0 ? bigint(prod << shift) : bigint(prod >> -shift);
    uint256 frac = (scaled & ((bigint(1) << kPhaseFracBits) - 1))
                       .convert_to<uint256>();
    return d < 0 ? frac_sub(uint256(0), frac) : frac;
}

}  // namespace

bool floor_residue_equiv(double x, std::int64_t q, std::int64_t r) {
    if (q < 1 || r < 0 || r >= q)
        throw std::invalid_argument("floor_residue_equiv: need 0 <= r < q");
    if (std::fabs(x) >= 9e18)
        throw OverflowError("floor_residue_equiv: |x| too large for int64 floor");
    auto fl = (std::int64_t)std::floor(x);
    bool lhs = mod_floor(fl, q) == r;
    double f = x / q - std::floor(x / q);
    bool rhs = f >= (double)r / q && f < (double)(r + 1) / q;
    if (lhs != rhs)
        throw EquivalenceViolationError(
            "floor_residue_equiv: the two sides disagree (precision exhausted)");
    return lhs;
}

std::vector<EquidistCount> equidist_counts(std::int64_t lo, std::int64_t hi,
                                           std::int64_t q, std::int64_t D,
                                           const KContext& ctx) {
    if (hi < lo) throw EmptyIntervalError("equidist_counts: empty interval");
    if (lo < 1) throw std::invalid_argument("equidist_counts: lo must be >= 1");
    if (q < 1 || D < 1)
        throw std::invalid_argument("equidist_counts: q, D must be >= 1");
    std::int64_t len = hi - lo + 1;
    if (q * q * D > (std::int64_t(1) << 24) ||
        (double)len * q * q * D > 1e13)
        throw BudgetExceededError("equidist_counts: |I|*q^2*D beyond budget");

    std::vector<std::int64_t> counts((std::size_t)(q * q * D), 0);
    for (std::int64_t n = lo; n <= hi; ++n) {
        std::int64_t r = n % q;
        std::int64_t s = floor_n_sqrtk(n, ctx) % q;
        uint256 frac = frac_mul_u64(ctx.sqrtk_scaled, (std::uint64_t)n);
        auto d = (std::int64_t)(uint256((frac * (std::uint64_t)D) >>
                                        kPhaseFracBits));
        ++counts[(std::size_t)((r * q + s) * D + d)];
    }

    std::vector<EquidistCount> out;
    out.reserve(counts.size());
    double uniform = 1.0 / ((double)q * q * D);
    for (std::int64_t r = 0; r < q; ++r)
        for (std::int64_t s = 0; s < q; ++s)
            for (std::int64_t d = 0; d < D; ++d) {
                EquidistCount c;
                c.lo = lo;
                c.hi = hi;
                c.q = q;
                c.D = D;
                c.r = r;
                c.s = s;
                c.d = d;
                c.count = counts[(std::size_t)((r * q + s) * D + d)];
                c.deviation = (double)c.count / (double)len - uniform;
                out.push_back(c);
            }
    return out;
}

HeisPoint heis_reduce(double x, double y, double z) {
    auto frac = [](double v) {
        double f = v - std::floor(v);
        return f >= 1.0 ? 0.0 : f;
    };
    HeisPoint p;
    p.x = frac(x);
    p.y = frac(y);
    p.z = frac(z - x * std::floor(y));
    return p;
}

double orbit_identity_defect(double xi, std::int64_t N, const KContext& ctx) {
    if (N < 1) throw std::invalid_argument("orbit_identity_defect: N >= 1");
    // orbit point at step n: (x, y, z) = (-xi*n, sqrt(k)*n, 0); the reduced
    // z-coordinate is {z - x*floor(y)} = {xi * n * floor(n*sqrt(k))},
    // walked here in quad precision as an independent path
    quad xq(xi);
    KahanComplex acc;
    for (std::int64_t n = 1; n <= N; ++n) {
        std::int64_t fy = floor_n_sqrtk(n, ctx);
        quad x = -xq * n;
        quad zf = -x * fy;
        zf -= floor(zf);
        acc.add(e_of(zf.convert_to<double>()));
    }
    std::complex<double> lhs = acc.value() / (double)N;
    std::complex<double> rhs = exp_sum((double)N, phase_from_real(xi), ctx).value;
    return std::abs(lhs - rhs);
}

std::complex<double> test_function(double tau, TestFunctionKind kind,
                                   const HeisPoint& p) {
    if (!(tau > 0.0 && tau < 0.01))
        throw std::invalid_argument("test_function: tau must be in (0, 1/100)");
    auto cut = [tau](double coord) {
        double u = torus_norm_d(coord);
        if (u <= tau / 10) return 0.0;
        if (u >= tau / 5) return 1.0;
        return smoothstep01((u - tau / 10) / (tau / 10));
    };
    double chi = cut(p.x) * cut(p.y);
    if (kind == TestFunctionKind::chi_tau) return chi;
    return e_of(p.z) * chi;
}

std::optional<ObstructionWitness> obstruction_search(double xi, std::int64_t N,
                                                     std::int64_t L,
                                                     double tau_budget,
                                                     const KContext& ctx) {
    if (L < 1 || L > 10000)
        throw std::invalid_argument("obstruction_search: need 1 <= L <= 10^4");
    uint256 fxi = frac_from_double(xi);
    uint256 fsq = ctx.sqrtk_scaled & frac_mask();
    uint256 fxsq = frac_mul_double(ctx.sqrtk_scaled, xi);  // frac(xi*sqrt(k))

    double Nd = (double)N, N2 = Nd * Nd;
    bool found = false;
    double best_score = 0.0;
    std::int64_t b1 = 0, b2 = 0, b3 = 0;
    double b_lin = 0.0, b_quad = 0.0;
    auto key = [](std::int64_t l1, std::int64_t l2, std::int64_t l3) {
        return std::array<std::int64_t, 7>{
            std::max({std::llabs(l1), std::llabs(l2), std::llabs(l3)}),
            std::llabs(l3), l3 < 0 ? 1 : 0,
            std::llabs(l2), l2 < 0 ? 1 : 0,
            std::llabs(l1), l1 < 0 ? 1 : 0};
    };

    for (std::int64_t l3 = -L; l3 <= L; ++l3) {
        uint256 t3 = frac_mul_signed(fxsq, l3);
        double quad_norm = N2 * frac_torus_norm(frac_mul_signed(fxsq, 2 * l3));
        for (std::int64_t l2 = -L; l2 <= L; ++l2) {
            uint256 t23 = frac_add(t3, frac_mul_signed(fsq, l2));
            // walk l1 = -L..L incrementally: value gains +xi per step of -l1
            uint256 v = frac_add(t23, frac_mul_signed(fxi, L));
            for (std::int64_t l1 = -L; l1 <= L; ++l1, v = frac_sub(v, fxi)) {
                if (l1 == 0 && l2 == 0 && l3 == 0) continue;
                double lin_norm = Nd * frac_torus_norm(v);
                double score = std::max(lin_norm, quad_norm);
                if (score > tau_budget) continue;
                if (found && (score > best_score ||
                              (score == best_score &&
                               key(l1, l2, l3) >= key(b1, b2, b3))))
                    continue;
                found = true;
                best_score = score;
                b1 = l1;
                b2 = l2;
                b3 = l3;
                b_lin = lin_norm;
                b_quad = quad_norm;
            }
        }
    }
    if (!found) return std::nullopt;

    ObstructionWitness w;
    w.l1 = b1;
    w.l2 = b2;
    w.l3 = b3;
    w.norm_linear = b_lin;
    w.norm_quadratic = b_quad;
    if (b3 != 0) {
        // 2*l3*xi*sqrt(k) near m  =>  xi near m*sqrt(k)/(2*k*l3)
        auto m = (std::int64_t)std::llround(2.0 * (double)b3 * xi * ctx.sqrtk);
        std::int64_t bq = m * ctx.k2, qq = 2 * ctx.k1 * b3;
        if (qq < 0) {
            qq = -qq;
            bq = -bq;
        }
        w.recovered = make_quadrat(0, bq, qq, ctx);
    } else if (b1 != 0) {
        // -l1*xi + l2*sqrt(k) near m  =>  xi near (-m + l2*sqrt(k))/l1
        auto m = (std::int64_t)std::llround(-(double)b1 * xi +
                                            (double)b2 * ctx.sqrtk);
        std::int64_t aa = -m, bb = b2, qq = b1;
        if (qq < 0) {
            qq = -qq;
            aa = -aa;
            bb = -bb;
        }
        w.recovered = make_quadrat(aa, bb, qq, ctx);
    }
    return w;
}

}  // namespace bracketsum
