#pragma once

// Shared numeric primitives: wide integers, the 192-bit fractional
// fixed-point used by the phase pipeline, and the library error types.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bracketsum {

using bigint = boost::multiprecision::cpp_int;
using uint256 = boost::multiprecision::uint256_t;
using int128 = __int128;
using uint128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RationalSqrtError : Error { using Error::Error; };
struct PrecisionTooLowError : Error { using Error::Error; };
struct ContextMismatchError : Error { using Error::Error; };
struct EnumerationCapExceededError : Error { using Error::Error; };
struct OverflowError : Error { using Error::Error; };
struct EmptyIntervalError : Error { using Error::Error; };
struct BudgetExceededError : Error { using Error::Error; };
struct AmbiguousClassificationError : Error { using Error::Error; };
struct GridTooSmallError : Error { using Error::Error; };
struct EquivalenceViolationError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Integer helpers

// Floor division / floored modulus for signed 64-bit integers, b > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t b) {
    std::int64_t r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? r + b : r;
}

// Exact integer square root of an unsigned 128-bit value.
inline std::uint64_t isqrt_u128(uint128 m) {
    if (m == 0) return 0;
    auto sq = [](std::uint64_t r) { return (uint128)r * r; };
    std::uint64_t r = (std::uint64_t)std::sqrt((long double)m);
    while (r > 0 && sq(r) > m) --r;
    while (r + 1 != 0 && sq(r + 1) <= m) ++r;
    return r;
}

// Floor division for bigints (denominator > 0).
inline bigint floor_div_big(const bigint& a, const bigint& b) {
    bigint q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0 && r < 0) --q;
    return q;
}

// ---------------------------------------------------------------------------
// 192-bit fractional fixed point (values on the torus R/Z).
//
// A Frac192 is a uint256 holding x * 2^192 mod 2^192 in its low 192 bits.
// Addition/subtraction/multiplication by integers are exact modulo 1;
// approximation error only enters through rounded constants.

inline constexpr int kPhaseFracBits = 192;

inline const uint256& frac_mask() {
    static const uint256 m = (uint256(1) << kPhaseFracBits) - 1;
    return m;
}

inline uint256 frac_add(const uint256& x, const uint256& y) {
    return (x + y) & frac_mask();
}

inline uint256 frac_sub(const uint256& x, const uint256& y) {
    return (x - y) & frac_mask();
}

// x (any uint256, integer-plus-fraction scaled by 2^192) times a 64-bit
// multiplier, reduced to the fractional part.
inline uint256 frac_mul_u64(const uint256& x, std::uint64_t w) {
    return (x * w) & frac_mask();
}

// Fraction in [0,1) as a double (top 128 of the 192 bits are plenty).
inline double frac_to_double(const uint256& x) {
    auto hi = (std::uint64_t)(x >> 128);
    auto mid = (std::uint64_t)((x >> 64) & 0xffffffffffffffffull);
    return std::ldexp((double)hi, -64) + std::ldexp((double)mid, -128);
}

// Distance to the nearest integer, input as a Frac192.
inline double frac_torus_norm(const uint256& x) {
    double f = frac_to_double(x);
    return f <= 0.5 ? f : 1.0 - f;
}

// Exact embedding of a double into Frac192 (reduces mod 1 first).
// Negative inputs are negated modulo 1 so that the reduction never
// rounds: t - floor(t) is exact in double only for t >= 0.
inline uint256 frac_from_double(double t) {
    if (t < 0.0) {
        uint256 m = frac_from_double(-t);
        return (uint256(0) - m) & frac_mask();
    }
    double f = t - std::floor(t);
    if (f >= 1.0) f = 0.0;  // guard against rounding at the boundary
    if (f == 0.0) return uint256(0);
    int e;
    double m = std::frexp(f, &e);            // f = m * 2^e, m in [0.5,1)
    auto mi = (std::uint64_t)std::ldexp(m, 53);  // 53-bit integer mantissa
    int shift = kPhaseFracBits + e - 53;
    if (shift >= 0) return (uint256(mi) << shift) & frac_mask();
    return uint256(mi >> -shift);
}

// Convert a signed bigint fixed-point value (frac_bits fractional bits,
// |v| < 2^(frac_bits+few)) to double.
inline double fp_to_double(const bigint& v, int frac_bits) {
    if (frac_bits <= 900) {
        // shift down so the magnitude fits a double comfortably
        int drop = frac_bits > 100 ? frac_bits - 100 : 0;
        bigint w = v >> drop;
        return std::ldexp(w.convert_to<double>(), drop - frac_bits);
    }
    bigint w = v >> (frac_bits - 100);
    return std::ldexp(w.convert_to<double>(), -100);
}

// ---------------------------------------------------------------------------
// Compensated (Kahan) accumulation for deterministic reductions.

struct KahanAcc {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

struct KahanComplex {
    KahanAcc re, im;
    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    void add(const KahanComplex& o) {
        re.add(o.re.sum);
        im.add(o.im.sum);
    }
    std::complex<double> value() const { return {re.sum, im.sum}; }
};

// C-infinity step: 0 for u <= 0, 1 for u >= 1, exp(-1/x) glue in between.
inline double smoothstep01(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double h0 = std::exp(-1.0 / u);
    double h1 = std::exp(-1.0 / (1.0 - u));
    return h0 / (h0 + h1);
}

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// e(x) = exp(2*pi*i*x)
inline std::complex<double> e_of(double x) {
    return std::polar(1.0, kTwoPi * x);
}

}  // namespace bracketsum
