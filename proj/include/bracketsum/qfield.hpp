#pragma once

// Exact arithmetic for frequencies (a + b*sqrt(k))/q in Q(sqrt(k)):
// context construction (fixed-point sqrt(k), continued fraction),
// torus normalization, distances and separation certificates.

#include <memory>
#include <vector>

#include "bracketsum/common.hpp"

namespace bracketsum {

struct KContext {
    std::int64_t k1 = 0, k2 = 1;      // gcd-reduced, both >= 1
    int precision_bits = 192;         // P
    bigint sqrtk_fp;                  // floor(sqrt(k1/k2) * 2^P)
    uint256 sqrtk_scaled;             // floor(sqrt(k1/k2) * 2^192), full value
    std::vector<std::int64_t> cf_preperiod;
    std::vector<std::int64_t> cf_period;
    std::int64_t max_partial_quotient = 0;
    double sqrtk = 0.0;               // double approximation of sqrt(k1/k2)

    bool same_field(const KContext& o) const {
        return k1 == o.k1 && k2 == o.k2;
    }
};

// Errors: RationalSqrtError if k1/k2 reduces to the square of a rational,
// PrecisionTooLowError if precision_bits < 64.
KContext make_context(std::int64_t k1, std::int64_t k2,
                      int precision_bits = 192);

struct QuadRat {
    // Canonical triple: q >= 1, a in [0,q), gcd(a,b,q) = 1.
    std::int64_t a = 0, b = 0, q = 1;
    std::int64_t shift = 0;   // l with (a + b*sqrt(k))/q - l in [-1/2, 1/2)
    bigint alpha_fp;          // that value, P fractional bits, signed
    double alpha = 0.0;       // double approximation
    std::int64_t k1 = 0, k2 = 1;  // field tag (for mismatch checks)
    int precision_bits = 192;

    bool same_triple(const QuadRat& o) const {
        return a == o.a && b == o.b && q == o.q && k1 == o.k1 && k2 == o.k2;
    }
};

QuadRat make_quadrat(std::int64_t a, std::int64_t b, std::int64_t q,
                     const KContext& ctx);

// ||alpha_x - alpha_y|| on the torus; exactly 0 iff the triples coincide.
// Throws ContextMismatchError for QuadRats over different fields.
double torus_dist(const QuadRat& x, const QuadRat& y);

// Explicit Liouville lower bound: min_p |sqrt(k) - p/q| >= L(q) with
// L(q) = 1 / (k2 * q^2 * (2*sqrt(k) + 1)).
double liouville_floor(const KContext& ctx, std::int64_t q);

// All normalized centers with q <= X, |b| <= Y.
// Throws EnumerationCapExceededError when the count would exceed `cap`.
std::vector<QuadRat> enumerate_normalized(const KContext& ctx, std::int64_t X,
                                          std::int64_t Y,
                                          std::int64_t cap = (1 << 22));

struct SeparationResult {
    QuadRat x, y;
    double dist = 0.0;
};

// Closest distinct pair among the centers with q <= X, |b| <= Y.
SeparationResult min_separation(const KContext& ctx, std::int64_t X,
                                std::int64_t Y,
                                std::int64_t cap = (1 << 22));

// Continued-fraction convergents p_n/q_n of sqrt(k), n = 0..count-1.
std::vector<std::pair<bigint, bigint>> cf_convergents(const KContext& ctx,
                                                      int count);

}  // namespace bracketsum
