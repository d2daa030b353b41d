#pragma once

// Exact bracket-sequence evaluation and the exponential sums
//   m_{N;k}(xi) = (1/floor(N)) * sum_{n<=N} e(xi * n * floor(n*sqrt(k)))
// with a deterministic, block-parallel compensated reduction.

#include <complex>
#include <vector>

#include "bracketsum/qfield.hpp"

namespace bracketsum {

struct PhaseSpec {
    enum class Mode { CenterOffset, Raw };
    Mode mode = Mode::Raw;
    QuadRat center;          // CenterOffset mode: the (a+b*sqrt(k))/q part
    double offset_t = 0.0;   // CenterOffset mode: the perturbation t
    double as_real = 0.0;    // alpha + t, or the raw xi reduced to [-1/2,1/2)
};

PhaseSpec phase_from_center(const QuadRat& center, double t = 0.0);
PhaseSpec phase_from_real(double xi);

struct SumResult {
    std::complex<double> value;
    std::int64_t n_terms = 0;
    double est_phase_error = 0.0;  // bound on per-term phase truncation
    std::int64_t wall_ns = 0;
};

// Exactly floor(n * sqrt(k1/k2)) via integer square roots.
// Throws OverflowError when n^2*k1*k2 >= 2^126.
std::int64_t floor_n_sqrtk(std::int64_t n, const KContext& ctx);

// Fractional part of xi * n * floor(n*sqrt(k)) in [0,1).
double phase_frac(std::int64_t n, const PhaseSpec& xi, const KContext& ctx);

// Evaluates the phase fraction for many n against one PhaseSpec; the
// per-spec setup (rational residues, scaled sqrt constants) happens once.
class PhaseEval {
  public:
    PhaseEval(const PhaseSpec& xi, const KContext& ctx);
    // {xi * n * floor(n*sqrt(k))} in [0,1)
    double operator()(std::int64_t n) const;
    // bound on the phase truncation for n <= max_n
    double per_term_error(std::int64_t max_n) const;

  private:
    const KContext* ctx_;
    bool raw_ = true;
    uint256 xi_fp_{};        // raw mode: {xi} * 2^192
    std::int64_t a0_ = 0, b_ = 0, q_ = 1;  // center mode: a - l*q, b, q
    uint256 inv_q_{};        // floor(2^192 / q)
    uint256 sqrt_over_q_{};  // floor(sqrt(k) * 2^192 / q)
    uint256 t_fp_{};         // {t} * 2^192
    bool has_t_ = false;
};

// blocked over [1, floor(N)]; threads <= 0 picks hardware concurrency.
SumResult exp_sum(double N, const PhaseSpec& xi, const KContext& ctx,
                  int threads = 0);

// mean over the integer interval [lo, hi]
SumResult exp_sum_interval(std::int64_t lo, std::int64_t hi,
                           const PhaseSpec& xi, const KContext& ctx,
                           int threads = 0);

// One sequential pass returning m_{N;k}(xi) at each N in `Ns`
// (strictly increasing, all >= 1).
std::vector<std::complex<double>> exp_sum_prefixes(
    const std::vector<std::int64_t>& Ns, const PhaseSpec& xi,
    const KContext& ctx);

// Absolute defect of the identity
//   n*sqrt(k)*floor(n*sqrt(k)) = ((sqrt(k)*n)^2 + floor(n*sqrt(k))^2
//                                 - {n*sqrt(k)}^2) / 2
// evaluated in fixed point.
double bracket_identity_check(std::int64_t n, const KContext& ctx);

}  // namespace bracketsum
