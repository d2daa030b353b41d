#pragma once

// Effective-equidistribution counting for (n mod q, floor(n*sqrt(k)) mod q,
// {n*sqrt(k)}) and Heisenberg-nilmanifold diagnostics: fundamental-domain
// reduction, the orbit identity behind the exponential sum, Lipschitz test
// functions, and the horizontal-character obstruction search.

#include <complex>
#include <optional>
#include <vector>

#include "bracketsum/qfield.hpp"

namespace bracketsum {

struct EquidistCount {
    std::int64_t lo = 0, hi = 0;  // interval [lo, hi]
    std::int64_t q = 1, D = 1;
    std::int64_t r = 0, s = 0, d = 0;
    std::int64_t count = 0;
    double deviation = 0.0;  // count/|I| - 1/(q^2 D)
};

struct HeisPoint {
    double x = 0.0, y = 0.0, z = 0.0;  // all in [0,1)
};

struct ObstructionWitness {
    std::int64_t l1 = 0, l2 = 0, l3 = 0;
    double norm_linear = 0.0;     // N * ||-l1*xi + l2*sqrt(k) + l3*xi*sqrt(k)||
    double norm_quadratic = 0.0;  // N^2 * ||2*l3*xi*sqrt(k)||
    std::optional<QuadRat> recovered;
};

// floor(x) = r (mod q)  <=>  {x/q} in [r/q, (r+1)/q); evaluates both sides
// independently and throws EquivalenceViolationError if they disagree.
bool floor_residue_equiv(double x, std::int64_t q, std::int64_t r);

// Exact cell counts of {n in [lo,hi] : n = r, floor(n*sqrt(k)) = s (mod q),
// {n*sqrt(k)} in [d/D, (d+1)/D)} for all (r,s,d), one pass, exact floors.
std::vector<EquidistCount> equidist_counts(std::int64_t lo, std::int64_t hi,
                                           std::int64_t q, std::int64_t D,
                                           const KContext& ctx);

// Fundamental-domain representative ({x}, {y}, {z - x*floor(y)}).
HeisPoint heis_reduce(double x, double y, double z);

// | E_{n<=N} e(z-coordinate of the reduced orbit point) - exp_sum(N, xi) |,
// the orbit walked in quad precision, the sum in 192-bit fixed point.
double orbit_identity_defect(double xi, std::int64_t N, const KContext& ctx);

enum class TestFunctionKind { F_tau, chi_tau };

// chi_tau: product of smooth 1-d cutoffs in ||x|| and ||y|| (1 above tau/5,
// 0 at or below tau/10); F_tau = e(z) * chi_tau. Requires tau in (0, 1/100).
std::complex<double> test_function(double tau, TestFunctionKind kind,
                                   const HeisPoint& p);

// Exhaustive scan over 0 < ||l||_inf <= L minimizing
// max(norm_linear, norm_quadratic); absent when no triple clears tau_budget.
// Ties prefer l3 = 0, then l2 = 0, then small |l1|, positive before negative.
std::optional<ObstructionWitness> obstruction_search(double xi, std::int64_t N,
                                                     std::int64_t L,
                                                     double tau_budget,
                                                     const KContext& ctx);

}  // namespace bracketsum
