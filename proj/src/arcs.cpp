#include "bracketsum/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace bracketsum {

namespace {

// signed representative of xi - alpha in [-1/2, 1/2)
double signed_torus_diff(double xi, double alpha) {
    double d = xi - alpha;
    d -= std::floor(d + 0.5);
    return d;
}

// plateau [-inner,inner] = 1, support [-outer,outer]
double plateau_bump(double x, double inner, double outer) {
    double ax = std::fabs(x);
    if (ax <= inner) return 1.0;
    if (ax >= outer) return 0.0;
    return smoothstep01((outer - ax) / (outer - inner));
}

std::int64_t checked_pow_floor(double base, double expo) {
    return (std::int64_t)std::floor(std::pow(base, expo));
}

}  // namespace

std::vector<QuadRat> enumerate_centers(double N, const ArcConfig& cfg,
                                       const KContext& ctx, std::int64_t cap) {
    if (!(N >= 1.0))
        throw std::invalid_argument("enumerate_centers: N must be >= 1");
    std::int64_t bound = std::max<std::int64_t>(
        1, checked_pow_floor(N, cfg.gamma));
    return enumerate_normalized(ctx, bound, bound, cap);
}

ArcLabel classify_frequency(double xi, double N, const ArcConfig& cfg,
                            const KContext& ctx) {
    if (xi < -0.5 || xi >= 0.5)
        throw std::invalid_argument("classify_frequency: xi outside [-1/2,1/2)");
    auto centers = enumerate_centers(N, cfg, ctx);
    double best = 2.0, second = 2.0;
    const QuadRat* nearest = nullptr;
    for (const auto& c : centers) {
        double d = std::fabs(signed_torus_diff(xi, c.alpha));
        if (d < best) {
            second = best;
            best = d;
            nearest = &c;
        } else if (d < second) {
            second = d;
        }
    }
    double width_major = std::pow(N, -2.0 + cfg.gamma_prime);
    double width_annulus = std::pow(N, -1.0 + cfg.gamma);
    if (second <= width_annulus)
        throw AmbiguousClassificationError(
            "classify_frequency: two centers within the m~ width");
    ArcLabel label;
    if (best <= width_major) {
        label.kind = ArcLabel::Kind::Major;
    } else if (best <= width_annulus) {
        label.kind = ArcLabel::Kind::Minor2;
    } else {
        label.kind = ArcLabel::Kind::Minor1;
        return label;
    }
    label.center = *nearest;
    label.t = signed_torus_diff(xi, nearest->alpha);
    return label;
}

std::vector<FreqClass> freq_classes(int n, const ArcConfig& cfg,
                                    const KContext& ctx, std::int64_t cap) {
    if (n < 0) throw std::invalid_argument("freq_classes: n must be >= 0");
    int smax = (int)std::floor(cfg.gamma * n);
    double top = std::pow(cfg.lambda, smax);
    if (top > (double)cap)
        throw EnumerationCapExceededError("freq_classes: scale cap exceeded");

    std::vector<FreqClass> out;
    for (int s = 0; s <= smax; ++s) {
        // q in (lambda^(s-1), lambda^s]
        std::int64_t q_lo =
            (std::int64_t)std::floor(std::pow(cfg.lambda, s - 1)) + 1;
        std::int64_t q_hi = checked_pow_floor(cfg.lambda, s);
        for (int t = 0; t <= smax; ++t) {
            FreqClass cls;
            cls.s = s;
            cls.t = t;
            cls.m_st = std::max(s, t) / cfg.gamma;
            // A(0) = [-1,1]; A(t) = [-lambda^t,-lambda^(t-1)) u (lambda^(t-1),lambda^t]
            std::int64_t b_lo, b_hi;
            if (t == 0) {
                b_lo = 0;
                b_hi = 1;
            } else {
                b_lo = (std::int64_t)std::floor(std::pow(cfg.lambda, t - 1)) + 1;
                b_hi = checked_pow_floor(cfg.lambda, t);
            }
            for (std::int64_t q = q_lo; q <= q_hi; ++q) {
                for (std::int64_t ab = b_lo; ab <= b_hi; ++ab) {
                    for (int sign = 0; sign < 2; ++sign) {
                        std::int64_t b = sign ? -ab : ab;
                        if (sign && ab == 0) continue;
                        for (std::int64_t a = 0; a < q; ++a) {
                            if (std::gcd(std::gcd(a, std::llabs(b)), q) != 1)
                                continue;
                            cls.members.push_back(make_quadrat(a, b, q, ctx));
                        }
                    }
                }
            }
            out.push_back(std::move(cls));
        }
    }
    return out;
}

namespace {

// normalized triangle: the frequency profile of the chi position bump
double chi_freq_profile(double xi) {
    return std::max(0.0, 1.0 - 2.0 * std::fabs(xi));
}

}  // namespace

double bump(const BumpSpec& spec, double x) {
    switch (spec.family) {
        case BumpFamily::eta:
            return plateau_bump(x, 1.0, spec.lambda);
        case BumpFamily::psi:
            return plateau_bump(x, 0.25 / spec.lambda, 0.25);
        case BumpFamily::chi: {
            // Fejer profile: squared sinc, chi(0) = 1, frequency support
            // (the triangle) inside [-1/2, 1/2]
            if (x == 0.0) return 1.0;
            double u = 0.25 * kTwoPi * x;  // pi*x/2
            double s = std::sin(u) / u;
            return s * s;
        }
    }
    return 0.0;
}

namespace {

std::complex<double> arith_factor(const QuadRat& c, const KContext& ctx) {
    return gauss_G(c.a, c.b, c.q, ctx).value *
           fresnel_F((double)c.b / (2.0 * (double)c.q)).value;
}

}  // namespace

std::complex<double> approximant(double xi, int n, const ArcConfig& cfg,
                                 const KContext& ctx) {
    double eta_scale = std::pow(cfg.lambda, (2.0 - cfg.gamma_prime) * n);
    double N = std::pow(cfg.lambda, n);
    BumpSpec eta{BumpFamily::eta, cfg.lambda};
    std::complex<double> sum = 0.0;
    for (const auto& cls : freq_classes(n, cfg, ctx)) {
        for (const auto& c : cls.members) {
            double d = signed_torus_diff(xi, c.alpha);
            double rho = bump(eta, eta_scale * std::fabs(d));
            if (rho == 0.0) continue;
            sum += arith_factor(c, ctx) * v_tilde(N, d, ctx).value * rho;
        }
    }
    return sum;
}

ApproximantEval::ApproximantEval(const ArcConfig& cfg, const KContext& ctx,
                                 int n_max)
    : ctx_(&ctx), cfg_(cfg) {
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>,
             std::complex<double>>
        cache;
    cells_by_n_.resize((std::size_t)n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        for (const auto& cls : freq_classes(n, cfg, ctx)) {
            for (const auto& c : cls.members) {
                auto key = std::make_tuple(c.a, c.b, c.q);
                auto it = cache.find(key);
                if (it == cache.end())
                    it = cache.emplace(key, arith_factor(c, ctx)).first;
                cells_by_n_[(std::size_t)n].push_back({c, it->second});
            }
        }
    }
}

std::complex<double> ApproximantEval::operator()(double xi, int n) const {
    const auto& cells = cells_by_n_.at((std::size_t)n);
    double eta_scale = std::pow(cfg_.lambda, (2.0 - cfg_.gamma_prime) * n);
    double N = std::pow(cfg_.lambda, n);
    BumpSpec eta{BumpFamily::eta, cfg_.lambda};
    std::complex<double> sum = 0.0;
    for (const auto& cell : cells) {
        double d = signed_torus_diff(xi, cell.center.alpha);
        double rho = bump(eta, eta_scale * std::fabs(d));
        if (rho == 0.0) continue;
        sum += cell.arith * v_tilde(N, d, *ctx_).value * rho;
    }
    return sum;
}

std::complex<double> pi_multiplier(double xi, const FreqClass& cls, int n,
                                   PiG g, PiH h, int h_index, PiRho rho,
                                   const ArcConfig& cfg, const KContext& ctx) {
    double eta_scale = std::pow(cfg.lambda, (2.0 - cfg.gamma_prime) * n);
    BumpSpec eta{BumpFamily::eta, cfg.lambda};
    BumpSpec psi{BumpFamily::psi, cfg.lambda};
    double h_scale = std::pow(cfg.lambda, 2.0 * h_index);
    std::complex<double> sum = 0.0;
    for (const auto& c : cls.members) {
        double d = signed_torus_diff(xi, c.alpha);
        double r = bump(eta, eta_scale * std::fabs(d));
        if (rho == PiRho::sqrt_eta) r = std::sqrt(r);
        if (r == 0.0) continue;
        std::complex<double> hv;
        switch (h) {
            case PiH::one:
                hv = 1.0;
                break;
            case PiH::v_tilde:
                hv = v_tilde(std::pow(cfg.lambda, h_index), d, ctx).value;
                break;
            case PiH::psi_n:
                hv = bump(psi, h_scale * d);
                break;
            case PiH::chi_n:
                hv = chi_freq_profile(h_scale * d);
                break;
        }
        std::complex<double> gv =
            g == PiG::g_k ? arith_factor(c, ctx) : std::complex<double>(1.0);
        sum += gv * hv * r;
    }
    return sum;
}

}  // namespace bracketsum
