#include "bracketsum/expsum.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace bracketsum {

namespace {
constexpr std::int64_t kBlockSize = 1 << 16;
constexpr std::int64_t kMaxWeight = std::int64_t(1) << 62;  // n*floor(n*sqrt(k)) cap

uint256 u256_from_u128(uint128 v) {
    uint256 r = (std::uint64_t)(v >> 64);
    r <<= 64;
    r |= (std::uint64_t)v;
    return r;
}
}  // namespace

std::int64_t floor_n_sqrtk(std::int64_t n, const KContext& ctx) {
    if (n < 1) throw std::invalid_argument("floor_n_sqrtk: n must be >= 1");
    uint128 m = (uint128)n * n;
    uint128 kk = (uint128)ctx.k1 * ctx.k2;
    if (m > ((uint128)1 << 126) / kk)
        throw OverflowError("floor_n_sqrtk: n^2*k1*k2 >= 2^126");
    return (std::int64_t)(isqrt_u128(m * kk) / (std::uint64_t)ctx.k2);
}

PhaseSpec phase_from_center(const QuadRat& center, double t) {
    PhaseSpec xi;
    xi.mode = PhaseSpec::Mode::CenterOffset;
    xi.center = center;
    xi.offset_t = t;
    xi.as_real = center.alpha + t;
    return xi;
}

PhaseSpec phase_from_real(double v) {
    PhaseSpec xi;
    xi.mode = PhaseSpec::Mode::Raw;
    if (v >= -0.5 && v < 0.5) {
        xi.as_real = v;  // already reduced; keep the exact double
    } else {
        double f = v - std::floor(v);
        xi.as_real = f < 0.5 ? f : f - 1.0;
    }
    return xi;
}

PhaseEval::PhaseEval(const PhaseSpec& xi, const KContext& ctx) : ctx_(&ctx) {
    if (xi.mode == PhaseSpec::Mode::Raw) {
        raw_ = true;
        xi_fp_ = frac_from_double(xi.as_real);
        return;
    }
    if (xi.center.k1 != ctx.k1 || xi.center.k2 != ctx.k2)
        throw ContextMismatchError("PhaseEval: center built over another k");
    raw_ = false;
    const QuadRat& c = xi.center;
    a0_ = c.a - c.shift * c.q;
    b_ = c.b;
    q_ = c.q;
    bigint one = bigint(1) << kPhaseFracBits;
    inv_q_ = (one / q_).convert_to<uint256>();
    bigint sc = ctx.sqrtk_scaled.convert_to<bigint>();
    sqrt_over_q_ = (sc / q_).convert_to<uint256>();
    has_t_ = xi.offset_t != 0.0;
    if (has_t_) t_fp_ = frac_from_double(xi.offset_t);
}

double PhaseEval::operator()(std::int64_t n) const {
    std::int64_t f = floor_n_sqrtk(n, *ctx_);
    uint128 w128 = (uint128)n * (uint128)f;
    if (w128 > (uint128)kMaxWeight)
        throw OverflowError("phase evaluation: n*floor(n*sqrt(k)) too large");
    std::int64_t w = (std::int64_t)w128;

    if (raw_) return frac_to_double(frac_mul_u64(xi_fp_, (std::uint64_t)w));

    // rational part: exact residue of a0*w mod q
    std::int64_t r = (std::int64_t)(((int128)mod_floor(a0_, q_) * (w % q_)) % q_);
    uint256 phi = frac_mul_u64(inv_q_, (std::uint64_t)r);

    if (b_ != 0) {
        int128 bw = (int128)b_ * w;
        int128 u = bw / q_, v = bw % q_;
        if (v < 0) {
            v += q_;
            u -= 1;
        }
        phi = frac_add(phi, frac_mul_u64(sqrt_over_q_, (std::uint64_t)v));
        // frac(u * sqrt(k)): multiply the full scaled sqrt by |u| mod 2^192
        bool neg = u < 0;
        uint256 us = frac_mask() & (ctx_->sqrtk_scaled * u256_from_u128(
                                        (uint128)(neg ? -u : u)));
        phi = neg ? frac_sub(phi, us) : frac_add(phi, us);
    }
    if (has_t_) phi = frac_add(phi, frac_mul_u64(t_fp_, (std::uint64_t)w));
    return frac_to_double(phi);
}

double PhaseEval::per_term_error(std::int64_t max_n) const {
    std::int64_t f = floor_n_sqrtk(max_n, *ctx_);
    double w = (double)max_n * (double)f;
    double coeff = raw_ ? 1.0
                        : (double)std::llabs(b_) * (w / q_ + 1.0) + 2.0 * q_ + w;
    return (coeff + 1.0) * std::ldexp(1.0, -kPhaseFracBits);
}

double phase_frac(std::int64_t n, const PhaseSpec& xi, const KContext& ctx) {
    return PhaseEval(xi, ctx)(n);
}

namespace {

SumResult sum_over_range(std::int64_t lo, std::int64_t hi, const PhaseSpec& xi,
                         const KContext& ctx, int threads) {
    auto start = std::chrono::steady_clock::now();
    PhaseEval eval(xi, ctx);
    std::int64_t count = hi - lo + 1;
    std::int64_t nblocks = (count + kBlockSize - 1) / kBlockSize;

    std::vector<KahanComplex> partial((std::size_t)nblocks);
    auto block_sum = [&](std::int64_t blk) {
        std::int64_t b_lo = lo + blk * kBlockSize;
        std::int64_t b_hi = std::min(hi, b_lo + kBlockSize - 1);
        KahanComplex acc;
        for (std::int64_t n = b_lo; n <= b_hi; ++n) acc.add(e_of(eval(n)));
        partial[(std::size_t)blk] = acc;
    };

    int nthreads = threads > 0 ? threads
                               : (int)std::thread::hardware_concurrency();
    if (nthreads <= 1 || nblocks == 1) {
        for (std::int64_t blk = 0; blk < nblocks; ++blk) block_sum(blk);
    } else {
        std::atomic<std::int64_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::int64_t blk = next.fetch_add(1);
                if (blk >= nblocks) return;
                block_sum(blk);
            }
        };
        std::vector<std::thread> pool;
        int n = std::min<std::int64_t>(nthreads, nblocks);
        pool.reserve((std::size_t)n);
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // blocks combined in index order: result independent of worker count
    KahanComplex total;
    for (auto& p : partial) total.add(p);

    SumResult res;
    res.n_terms = count;
    res.value = total.value() / (double)count;
    res.est_phase_error = eval.per_term_error(hi);
    res.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return res;
}

}  // namespace

SumResult exp_sum(double N, const PhaseSpec& xi, const KContext& ctx,
                  int threads) {
    if (!(N >= 1.0)) throw std::invalid_argument("exp_sum: N must be >= 1");
    return sum_over_range(1, (std::int64_t)std::floor(N), xi, ctx, threads);
}

SumResult exp_sum_interval(std::int64_t lo, std::int64_t hi,
                           const PhaseSpec& xi, const KContext& ctx,
                           int threads) {
    if (hi < lo) throw EmptyIntervalError("exp_sum_interval: empty interval");
    if (lo < 1) throw std::invalid_argument("exp_sum_interval: lo must be >= 1");
    return sum_over_range(lo, hi, xi, ctx, threads);
}

std::vector<std::complex<double>> exp_sum_prefixes(
    const std::vector<std::int64_t>& Ns, const PhaseSpec& xi,
    const KContext& ctx) {
    if (Ns.empty()) throw EmptyIntervalError("exp_sum_prefixes: no scales");
    for (std::size_t i = 0; i < Ns.size(); ++i)
        if (Ns[i] < 1 || (i > 0 && Ns[i] <= Ns[i - 1]))
            throw std::invalid_argument("exp_sum_prefixes: scales must increase");
    PhaseEval eval(xi, ctx);
    std::vector<std::complex<double>> out;
    out.reserve(Ns.size());
    KahanComplex acc;
    std::int64_t n = 1;
    for (std::int64_t N : Ns) {
        for (; n <= N; ++n) acc.add(e_of(eval(n)));
        out.push_back(acc.value() / (double)N);
    }
    return out;
}

double bracket_identity_check(std::int64_t n, const KContext& ctx) {
    const int P = ctx.precision_bits;
    std::int64_t f = floor_n_sqrtk(n, ctx);
    bigint x = n * ctx.sqrtk_fp;            // n*sqrt(k), P frac bits
    bigint frac = x - (bigint(f) << P);     // {n*sqrt(k)}, P frac bits
    // all terms at 2P fractional bits
    bigint lhs = 2 * x * (bigint(f) << P);
    bigint rhs = x * x + (bigint(f) * f << (2 * P)) - frac * frac;
    bigint defect = lhs - rhs;
    if (defect < 0) defect = -defect;
    return fp_to_double(defect, 2 * P) / 2.0;
}

}  // namespace bracketsum
