#pragma once

// Circle-method geometry: arc families, frequency classes, bump
// functions and the major-arc approximant multiplier.

#include <complex>
#include <optional>
#include <vector>

#include "bracketsum/factors.hpp"
#include "bracketsum/qfield.hpp"

namespace bracketsum {

struct ArcConfig {
    double gamma = 1.0 / 20;
    double gamma_prime = 1.0 / 20;
    double lambda = 2.0;
    double c0_surrogate = 0.25;  // stand-in for the absolute constant c0
};

struct ArcLabel {
    enum class Kind { Major, Minor1, Minor2 };
    Kind kind = Kind::Minor1;
    std::optional<QuadRat> center;  // Major / Minor2
    double t = 0.0;                 // signed xi - alpha for Major / Minor2
};

struct FreqClass {
    int s = 0, t = 0;
    std::vector<QuadRat> members;  // P_{s,t}
    double m_st = 0.0;             // max(s,t)/gamma
};

enum class BumpFamily { eta, psi, chi };

struct BumpSpec {
    BumpFamily family = BumpFamily::eta;
    double lambda = 2.0;
};

// All normalized centers with q <= N^gamma, |b| <= N^gamma.
std::vector<QuadRat> enumerate_centers(double N, const ArcConfig& cfg,
                                       const KContext& ctx,
                                       std::int64_t cap = (1 << 22));

// Major / Minor2 / Minor1 label of xi at scale N; throws
// AmbiguousClassificationError when two centers sit within the m~ width.
ArcLabel classify_frequency(double xi, double N, const ArcConfig& cfg,
                            const KContext& ctx);

// All P_{s,t} with 0 <= s,t <= gamma*n.
std::vector<FreqClass> freq_classes(int n, const ArcConfig& cfg,
                                    const KContext& ctx,
                                    std::int64_t cap = (1 << 22));

// Smooth compactly supported bump value; exact 0/1 on the flat regions.
double bump(const BumpSpec& spec, double x);

// The full approximant multiplier at scale lambda^n:
//   sum over P_{s,t}, s,t <= gamma*n of
//     G_k(a,b,q) * F(b/(2q)) * V~_{lambda^n}(xi - alpha)
//     * eta(lambda^((2-gamma')n) * ||xi - alpha||)
std::complex<double> approximant(double xi, int n, const ArcConfig& cfg,
                                 const KContext& ctx);

// Same multiplier with per-center arithmetic factors cached across calls
// (for dense xi grids).
class ApproximantEval {
  public:
    ApproximantEval(const ArcConfig& cfg, const KContext& ctx, int n_max);
    std::complex<double> operator()(double xi, int n) const;

  private:
    const KContext* ctx_;
    ArcConfig cfg_;
    struct Cell {
        QuadRat center;
        std::complex<double> arith;  // G_k(a,b,q) * F(b/(2q))
    };
    std::vector<std::vector<Cell>> cells_by_n_;  // index n = 0..n_max
};

enum class PiG { one, g_k };
enum class PiH { v_tilde, psi_n, chi_n, one };
enum class PiRho { eta, sqrt_eta };

// Pi^{g,h,rho}_{s,t,<=n}(xi) = sum over P_{s,t} of
//   g(a,b,q) * h(xi - alpha) * rho(lambda^((2-gamma')n) * ||xi - alpha||),
// where g is 1 or G_k(a,b,q)*F(b/(2q)) and the psi_n/chi_n/v_tilde scale
// index of h is `h_index`.
std::complex<double> pi_multiplier(double xi, const FreqClass& cls, int n,
                                   PiG g, PiH h, int h_index, PiRho rho,
                                   const ArcConfig& cfg, const KContext& ctx);

}  // namespace bracketsum
