#include "bracketsum/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bracketsum/expsum.hpp"

namespace bracketsum {

namespace {

constexpr std::int64_t kSupportBudget = std::int64_t(1) << 28;

// largest shift of A_t: T * floor(T*sqrt(k)) with T = floor(t)
std::int64_t max_shift(double t, const KContext& ctx) {
    auto T = (std::int64_t)std::floor(t);
    return T * floor_n_sqrtk(T, ctx);
}

double norm_of(const std::vector<std::complex<double>>& v) {
    KahanAcc acc;
    for (const auto& z : v) acc.add(std::norm(z));
    return std::sqrt(acc.sum);
}

}  // namespace

Signal make_signal(std::int64_t offset,
                   std::vector<std::complex<double>> values) {
    Signal s;
    s.offset = offset;
    s.values = std::move(values);
    s.l2_norm = norm_of(s.values);
    return s;
}

Signal average_op(const Signal& f, double t, const KContext& ctx) {
    if (!(t >= 1.0)) throw std::invalid_argument("average_op: t must be >= 1");
    auto T = (std::int64_t)std::floor(t);
    std::int64_t W = max_shift(t, ctx);
    auto len = (std::int64_t)f.values.size();
    if (len + W > kSupportBudget)
        throw BudgetExceededError("average_op: output support beyond budget");

    std::vector<std::complex<double>> out((std::size_t)(len + W));
    double inv = 1.0 / (double)T;
    for (std::int64_t n = 1; n <= T; ++n) {
        std::int64_t w = n * floor_n_sqrtk(n, ctx);
        // mass of f(x0) lands at x0 - w; output index (x0 - w) - (offset - W)
        std::int64_t base = W - w;
        for (std::int64_t i = 0; i < len; ++i)
            out[(std::size_t)(base + i)] += inv * f.values[(std::size_t)i];
    }
    return make_signal(f.offset - W, std::move(out));
}

Signal oscillation(const std::vector<Signal>& family, const OscSpec& spec) {
    if (spec.I.size() < 2)
        throw std::invalid_argument("oscillation: need at least one block");
    for (std::size_t j = 1; j < spec.I.size(); ++j)
        if (spec.I[j] <= spec.I[j - 1])
            throw std::invalid_argument("oscillation: I must strictly increase");
    if (spec.I.front() < 0 || spec.I.back() > (std::int64_t)family.size())
        throw IndexOutOfRangeError(
            "oscillation: family not defined on [I_0, I_J)");

    // union of the supports of every signal used
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (std::int64_t n = spec.I.front(); n < spec.I.back(); ++n) {
        const Signal& s = family[(std::size_t)n];
        if (s.values.empty()) continue;
        lo = std::min(lo, s.offset);
        hi = std::max(hi, s.offset + (std::int64_t)s.values.size());
    }
    if (lo > hi) return make_signal(0, {});

    auto at = [&](const Signal& s, std::int64_t x) -> std::complex<double> {
        std::int64_t i = x - s.offset;
        if (i < 0 || i >= (std::int64_t)s.values.size()) return 0.0;
        return s.values[(std::size_t)i];
    };

    std::vector<std::complex<double>> out((std::size_t)(hi - lo));
    for (std::int64_t x = lo; x < hi; ++x) {
        double sum = 0.0;
        for (std::size_t j = 0; j + 1 < spec.I.size(); ++j) {
            const Signal& ref = family[(std::size_t)spec.I[j]];
            double block = 0.0;
            for (std::int64_t n = spec.I[j]; n < spec.I[j + 1]; ++n)
                block = std::max(
                    block,
                    std::norm(at(family[(std::size_t)n], x) - at(ref, x)));
            sum += block;
        }
        out[(std::size_t)(x - lo)] = std::sqrt(sum);
    }
    return make_signal(lo, std::move(out));
}

OscStats osc_ratio_experiment(const Signal& f, double lambda, int n_max,
                              int trials, std::uint64_t seed,
                              const KContext& ctx) {
    if (!(lambda > 1.0 && lambda <= 2.0))
        throw std::invalid_argument("osc_ratio_experiment: lambda in (1,2]");
    if (n_max < 1 || trials < 1)
        throw std::invalid_argument("osc_ratio_experiment: n_max, trials >= 1");
    auto len = (std::int64_t)f.values.size();
    if (len == 0 || f.l2_norm == 0.0)
        throw std::invalid_argument("osc_ratio_experiment: zero signal");

    // A_{lambda^n} f, dense on [f.offset - W_n, f.offset + len), floats to
    // keep the whole lacunary family resident
    std::vector<std::int64_t> W((std::size_t)n_max + 1);
    std::int64_t total_support = 0;
    for (int n = 0; n <= n_max; ++n) {
        W[(std::size_t)n] = max_shift(std::pow(lambda, n), ctx);
        total_support += len + W[(std::size_t)n];
    }
    if (total_support > kSupportBudget)
        throw BudgetExceededError("osc_ratio_experiment: supports beyond budget");

    std::vector<std::vector<std::complex<float>>> A((std::size_t)n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        auto T = (std::int64_t)std::floor(std::pow(lambda, n));
        std::int64_t Wn = W[(std::size_t)n];
        std::vector<std::complex<double>> acc((std::size_t)(len + Wn));
        double inv = 1.0 / (double)T;
        for (std::int64_t m = 1; m <= T; ++m) {
            std::int64_t base = Wn - m * floor_n_sqrtk(m, ctx);
            for (std::int64_t i = 0; i < len; ++i)
                acc[(std::size_t)(base + i)] += inv * f.values[(std::size_t)i];
        }
        auto& An = A[(std::size_t)n];
        An.resize(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i)
            An[i] = std::complex<float>(acc[i]);
    }

    // value of A_n at output row index of the widest grid (row 0 = x of
    // f.offset - W[n_max])
    std::int64_t wide = len + W[(std::size_t)n_max];
    auto val = [&](int n, std::int64_t row) -> std::complex<float> {
        std::int64_t i = row - (W[(std::size_t)n_max] - W[(std::size_t)n]);
        if (i < 0 || i >= (std::int64_t)A[(std::size_t)n].size()) return 0.0f;
        return A[(std::size_t)n][(std::size_t)i];
    };

    // Q[a][b] = sum_x max_{a <= n < b} |A_n(x) - A_a(x)|^2; every sampled I
    // then costs only table lookups. One running-max sweep per anchor a.
    std::vector<std::vector<double>> Q((std::size_t)n_max + 1,
                                       std::vector<double>((std::size_t)n_max +
                                                           2));
    std::vector<float> runmax((std::size_t)wide);
    for (int a = 0; a <= n_max; ++a) {
        std::fill(runmax.begin(), runmax.end(), 0.0f);
        double total = 0.0;
        Q[(std::size_t)a][(std::size_t)(a + 1)] = 0.0;
        for (int n = a + 1; n <= n_max; ++n) {
            std::int64_t span = len + W[(std::size_t)n];
            std::int64_t start = wide - span;  // A_a vanishes before this row
            for (std::int64_t row = start; row < wide; ++row) {
                float d = std::norm(val(n, row) - val(a, row));
                float& m = runmax[(std::size_t)row];
                if (d > m) {
                    total += (double)d - (double)m;
                    m = d;
                }
            }
            Q[(std::size_t)a][(std::size_t)(n + 1)] = total;
        }
    }

    // maximal function along the same lacunary family
    double maxsq = 0.0;
    {
        std::fill(runmax.begin(), runmax.end(), 0.0f);
        for (int n = 0; n <= n_max; ++n) {
            std::int64_t start = wide - (len + W[(std::size_t)n]);
            for (std::int64_t row = start; row < wide; ++row) {
                float d = std::norm(val(n, row));
                float& m = runmax[(std::size_t)row];
                if (d > m) m = d;
            }
        }
        for (std::int64_t row = 0; row < wide; ++row)
            maxsq += (double)runmax[(std::size_t)row];
    }

    std::mt19937_64 rng(seed);
    std::vector<int> pool((std::size_t)n_max + 1);
    OscStats st;
    st.lambda = lambda;
    st.n_max = n_max;
    st.trials = trials;
    st.seed = seed;
    double sum_ratio = 0.0;
    for (int tr = 0; tr < trials; ++tr) {
        for (int i = 0; i <= n_max; ++i) pool[(std::size_t)i] = i;
        std::uniform_int_distribution<int> size_dist(2, n_max + 1);
        int m = size_dist(rng);
        for (int i = 0; i < m; ++i) {
            std::uniform_int_distribution<int> pick(i, n_max);
            std::swap(pool[(std::size_t)i], pool[(std::size_t)pick(rng)]);
        }
        std::vector<int> I(pool.begin(), pool.begin() + m);
        std::sort(I.begin(), I.end());
        double osc_sq = 0.0;
        for (int j = 0; j + 1 < m; ++j)
            osc_sq += Q[(std::size_t)I[(std::size_t)j]]
                       [(std::size_t)I[(std::size_t)j + 1]];
        double ratio = std::sqrt(osc_sq) / f.l2_norm;
        st.max_osc_ratio = std::max(st.max_osc_ratio, ratio);
        sum_ratio += ratio;
    }
    st.mean_osc_ratio = sum_ratio / trials;
    st.maximal_ratio = std::sqrt(maxsq) / f.l2_norm;
    return st;
}

namespace {

// iterative radix-2 FFT; sign = +1 evaluates sum f[i] e(+i*j/G)
void fft_radix2(std::vector<std::complex<double>>& v, int sign) {
    std::size_t n = v.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t half = 1; half < n; half <<= 1) {
        std::complex<double> step = e_of(sign * 0.5 / (double)half);
        for (std::size_t blk = 0; blk < n; blk += 2 * half) {
            std::complex<double> w = 1.0;
            for (std::size_t i = 0; i < half; ++i, w *= step) {
                std::complex<double> u = v[blk + i];
                std::complex<double> t = w * v[blk + half + i];
                v[blk + i] = u + t;
                v[blk + half + i] = u - t;
            }
        }
    }
}

}  // namespace

Signal approx_operator(const Signal& f, int n, const ArcConfig& cfg,
                       const KContext& ctx, std::int64_t grid) {
    if (grid < 2 || (grid & (grid - 1)) != 0)
        throw std::invalid_argument("approx_operator: grid must be a power of two");
    auto len = (std::int64_t)f.values.size();
    std::int64_t W = max_shift(std::pow(cfg.lambda, n), ctx);
    if (grid < 4 * (len + W))
        throw GridTooSmallError("approx_operator: grid < 4*(support + max shift)");

    std::int64_t base = f.offset + len / 2 - grid / 2;
    std::vector<std::complex<double>> v((std::size_t)grid);
    for (std::int64_t i = 0; i < len; ++i)
        v[(std::size_t)(f.offset - base + i)] = f.values[(std::size_t)i];

    fft_radix2(v, +1);  // F(xi_j) up to a global phase that cancels below
    ApproximantEval mult(cfg, ctx, n);
    for (std::int64_t j = 0; j < grid; ++j) {
        double xi = (double)j / (double)grid;
        if (xi >= 0.5) xi -= 1.0;
        v[(std::size_t)j] *= mult(xi, n);
    }
    fft_radix2(v, -1);
    double inv = 1.0 / (double)grid;
    for (auto& z : v) z *= inv;
    return make_signal(base, std::move(v));
}

}  // namespace bracketsum
