#pragma once

// Averaging operators along n*floor(n*sqrt(k)) on the integer shift
// system, pointwise oscillation seminorms, the lacunary oscillation /
// maximal-function experiment, and the frequency-side approximant
// operator.

#include <complex>
#include <cstdint>
#include <vector>

#include "bracketsum/arcs.hpp"
#include "bracketsum/qfield.hpp"

namespace bracketsum {

struct Signal {
    std::int64_t offset = 0;  // values[i] lives at x = offset + i
    std::vector<std::complex<double>> values;
    double l2_norm = 0.0;
};

// Builds the signal and caches its l2 norm.
Signal make_signal(std::int64_t offset,
                   std::vector<std::complex<double>> values);

struct OscSpec {
    double lambda = 2.0;
    std::vector<std::int64_t> I;  // strictly increasing, J = |I| - 1 blocks
};

struct OscStats {
    double max_osc_ratio = 0.0;   // max over trials of ||O^2||_2 / ||f||_2
    double mean_osc_ratio = 0.0;
    double maximal_ratio = 0.0;   // ||sup_n |A_{lambda^n} f|||_2 / ||f||_2
    double lambda = 2.0;
    int n_max = 0;
    int trials = 0;
    std::uint64_t seed = 0;
};

// A_{t;k} f(x) = (1/floor(t)) * sum_{n <= t} f(x - n*floor(n*sqrt(k))).
Signal average_op(const Signal& f, double t, const KContext& ctx);

// Pointwise O^2_{I,J} of the family (indexed by its position in `family`):
//   ( sum_j sup_{I_j <= n < I_{j+1}} |a_n(x) - a_{I_j}(x)|^2 )^{1/2}.
Signal oscillation(const std::vector<Signal>& family, const OscSpec& spec);

// Computes A_{lambda^n} f for n <= n_max once, then samples `trials`
// random increasing index sequences I (uniform without replacement from
// {0..n_max}, sorted, seeded) and reports the oscillation and maximal
// ratios.
OscStats osc_ratio_experiment(const Signal& f, double lambda, int n_max,
                              int trials, std::uint64_t seed,
                              const KContext& ctx);

// T[multiplier] f via a length-`grid` discrete Fourier transform, the
// approximant multiplier of the arcs module applied on the frequency
// grid. grid must be a power of two >= 4*(support + max shift).
Signal approx_operator(const Signal& f, int n, const ArcConfig& cfg,
                       const KContext& ctx, std::int64_t grid);

}  // namespace bracketsum
