#pragma once

// Arithmetic and oscillatory factors of the major-arc approximation:
// the quadratic Gauss sum g, the double Gauss sum G_k, the Fresnel
// factor F, the oscillatory mean V and its localized periodization.

#include <complex>
#include <vector>

#include "bracketsum/qfield.hpp"

namespace bracketsum {

enum class FactorMethod { direct_sum, reduced_sum, quadrature, series };

struct FactorValue {
    std::complex<double> value;
    FactorMethod method = FactorMethod::direct_sum;
    double est_error = 0.0;
};

// g(a,b,q) = E_{r in [q]} e((a*r^2 + b*r)/q), phases reduced exactly mod q.
FactorValue gauss_g(std::int64_t a, std::int64_t b, std::int64_t q);

// G_k(a,b,q) = E_{r,s in [2qk2]} e(a*r*s/q + b*(k1*r^2 + k2*s^2)/(2qk2)).
// Direct O((2qk2)^2) path; throws BudgetExceededError when 2qk2 > 2^13.
FactorValue gauss_G_direct(std::int64_t a, std::int64_t b, std::int64_t q,
                           const KContext& ctx);

// Single-average reduction:
//   G_k(a,b,q) = (1/(2qk2)) sum_{s in [2qk2]} e(b*s^2/(2q))
//                * g(b*k1, 2*k2*a*s, 2qk2)
FactorValue gauss_G_reduced(std::int64_t a, std::int64_t b, std::int64_t q,
                            const KContext& ctx);

// Direct path when affordable, reduced path beyond the cutover.
FactorValue gauss_G(std::int64_t a, std::int64_t b, std::int64_t q,
                    const KContext& ctx);

// Batch evaluation of G_k(a,b,q) for all a in [0,q) at fixed (b,q):
// shares the O((2qk2)^2) inner work across the whole row.
std::vector<std::complex<double>> gauss_G_row(std::int64_t b, std::int64_t q,
                                              const KContext& ctx);

// F(xi) = int_0^1 e(-xi*x^2) dx, oscillation-aware composite quadrature.
FactorValue fresnel_F(double xi);

// Independent power-series evaluation (requires |xi| <= 4).
FactorValue fresnel_F_series(double xi);

// V_{N;k}(t) = (1/N) int_0^N e(t*sqrt(k)*x^2) dx = F(-t*sqrt(k)*N^2).
FactorValue v_factor(double N, double t, const KContext& ctx);

// The single surviving term of the periodization: reduce t to [-1/2,1/2).
FactorValue v_tilde(double N, double t, const KContext& ctx);

}  // namespace bracketsum
