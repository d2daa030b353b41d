#include "bracketsum/qfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bracketsum {

namespace {

// floor(sqrt(v)) for nonnegative bigints (Newton, seeded by bit length).
bigint isqrt_big(const bigint& v) {
    if (v <= 0) return 0;
    return boost::multiprecision::sqrt(v);
}

// Continued fraction of sqrt(D)/c (= (0 + sqrt(D))/c) via the integer
// quadratic-surd recurrence with period detection by state repetition.
// Requires D not a perfect square and c | D.
void surd_cf(std::int64_t D, std::int64_t c,
             std::vector<std::int64_t>& preperiod,
             std::vector<std::int64_t>& period) {
    std::int64_t sd = isqrt_u128((uint128)D);
    std::int64_t P = 0, Q = c;
    std::vector<std::int64_t> digits;
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
    for (;;) {
        auto state = std::make_pair(P, Q);
        auto it = seen.find(state);
        if (it != seen.end()) {
            preperiod.assign(digits.begin(), digits.begin() + it->second);
            period.assign(digits.begin() + it->second, digits.end());
            return;
        }
        seen.emplace(state, digits.size());
        std::int64_t a = floor_div(P + sd, Q);
        digits.push_back(a);
        std::int64_t Pn = a * Q - P;
        std::int64_t Qn = (D - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
        if (Q == 0) throw RationalSqrtError("square surd in CF recurrence");
    }
}

}  // namespace

KContext make_context(std::int64_t k1, std::int64_t k2, int precision_bits) {
    if (k1 < 1 || k2 < 1)
        throw std::invalid_argument("make_context: k1, k2 must be >= 1");
    if (precision_bits < 64)
        throw PrecisionTooLowError("make_context: precision_bits < 64");
    std::int64_t g = std::gcd(k1, k2);
    k1 /= g;
    k2 /= g;

    // sqrt(k1/k2) is rational iff k1*k2 is a perfect square.
    uint128 D = (uint128)k1 * k2;
    std::uint64_t sd = isqrt_u128(D);
    if ((uint128)sd * sd == D)
        throw RationalSqrtError("make_context: sqrt(k1/k2) is rational");

    KContext ctx;
    ctx.k1 = k1;
    ctx.k2 = k2;
    ctx.precision_bits = precision_bits;

    // floor(sqrt(k1/k2) * 2^P) = floor(isqrt(k1*k2*2^(2P)) / k2)
    bigint bD = bigint(k1) * k2;
    ctx.sqrtk_fp = isqrt_big(bD << (2 * precision_bits)) / k2;
    bigint scaled = isqrt_big(bD << (2 * kPhaseFracBits)) / k2;
    ctx.sqrtk_scaled = scaled.convert_to<uint256>();
    ctx.sqrtk = fp_to_double(ctx.sqrtk_fp, precision_bits);

    surd_cf((std::int64_t)D, k2, ctx.cf_preperiod, ctx.cf_period);
    ctx.max_partial_quotient = 0;
    for (auto d : ctx.cf_preperiod)
        ctx.max_partial_quotient = std::max(ctx.max_partial_quotient, d);
    for (auto d : ctx.cf_period)
        ctx.max_partial_quotient = std::max(ctx.max_partial_quotient, d);
    return ctx;
}

QuadRat make_quadrat(std::int64_t a, std::int64_t b, std::int64_t q,
                     const KContext& ctx) {
    if (q < 1) throw std::invalid_argument("make_quadrat: q must be >= 1");
    std::int64_t g = std::gcd(std::gcd(std::llabs(a), std::llabs(b)), q);
    if (g > 1) {
        a /= g;
        b /= g;
        q /= g;
    }
    a = mod_floor(a, q);

    const int P = ctx.precision_bits;
    QuadRat x;
    x.q = q;
    x.b = b;
    x.a = a;
    x.k1 = ctx.k1;
    x.k2 = ctx.k2;
    x.precision_bits = P;

    // l = floor((a + b*sqrt(k))/q + 1/2), exactly in fixed point.
    bigint num = (bigint(a) << P) + bigint(b) * ctx.sqrtk_fp;
    bigint denom = bigint(q) << P;
    bigint l = floor_div_big(2 * num + denom, 2 * denom);
    x.shift = l.convert_to<std::int64_t>();
    x.alpha_fp = floor_div_big(num - l * denom, q);
    x.alpha = fp_to_double(x.alpha_fp, P);
    return x;
}

double torus_dist(const QuadRat& x, const QuadRat& y) {
    if (x.k1 != y.k1 || x.k2 != y.k2 || x.precision_bits != y.precision_bits)
        throw ContextMismatchError("torus_dist: QuadRats over different contexts");
    if (x.same_triple(y)) return 0.0;
    const int P = x.precision_bits;
    bigint one = bigint(1) << P;
    bigint d = x.alpha_fp - y.alpha_fp;
    if (d < 0) d = -d;          // in [0, 2^P)
    if (2 * d > one) d = one - d;
    return fp_to_double(d, P);
}

double liouville_floor(const KContext& ctx, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("liouville_floor: q must be >= 1");
    return 1.0 / ((double)ctx.k2 * (double)q * (double)q * (2.0 * ctx.sqrtk + 1.0));
}

std::vector<QuadRat> enumerate_normalized(const KContext& ctx, std::int64_t X,
                                          std::int64_t Y, std::int64_t cap) {
    if (X < 1 || Y < 0)
        throw std::invalid_argument("enumerate_normalized: bad bounds");
    // Upper bound on the number of candidate triples.
    if ((uint128)X * X * (2 * Y + 1) > (uint128)cap)
        throw EnumerationCapExceededError("enumerate_normalized: cap exceeded");
    std::vector<QuadRat> out;
    for (std::int64_t q = 1; q <= X; ++q) {
        for (std::int64_t b = -Y; b <= Y; ++b) {
            for (std::int64_t a = 0; a < q; ++a) {
                if (std::gcd(std::gcd(a, std::llabs(b)), q) != 1) continue;
                out.push_back(make_quadrat(a, b, q, ctx));
            }
        }
    }
    return out;
}

SeparationResult min_separation(const KContext& ctx, std::int64_t X,
                                std::int64_t Y, std::int64_t cap) {
    auto centers = enumerate_normalized(ctx, X, Y, cap);
    if (centers.size() < 2)
        throw std::invalid_argument("min_separation: fewer than two centers");
    // Sort by torus position; the closest pair is adjacent (or the wrap pair).
    std::sort(centers.begin(), centers.end(),
              [](const QuadRat& l, const QuadRat& r) {
                  return l.alpha_fp < r.alpha_fp;
              });
    SeparationResult best;
    best.dist = 2.0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const QuadRat& l = centers[i];
        const QuadRat& r = centers[(i + 1) % centers.size()];
        double d = torus_dist(l, r);
        if (d < best.dist) {
            best.x = l;
            best.y = r;
            best.dist = d;
        }
    }
    return best;
}

std::vector<std::pair<bigint, bigint>> cf_convergents(const KContext& ctx,
                                                      int count) {
    std::vector<std::pair<bigint, bigint>> out;
    bigint pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1;
    for (int n = 0; n < count; ++n) {
        std::int64_t d;
        std::size_t pre = ctx.cf_preperiod.size();
        if ((std::size_t)n < pre)
            d = ctx.cf_preperiod[n];
        else
            d = ctx.cf_period[(n - pre) % ctx.cf_period.size()];
        bigint p = d * pm1 + pm2;
        bigint q = d * qm1 + qm2;
        out.emplace_back(p, q);
        pm2 = pm1;
        pm1 = p;
        qm2 = qm1;
        qm1 = q;
    }
    return out;
}

}  // namespace bracketsum
