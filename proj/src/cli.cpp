#include "bracketsum/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bracketsum/arcs.hpp"
#include "bracketsum/ergodic.hpp"
#include "bracketsum/expsum.hpp"
#include "bracketsum/factors.hpp"
#include "bracketsum/fit.hpp"
#include "bracketsum/heis.hpp"
#include "bracketsum/qfield.hpp"

namespace bracketsum {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::pair<std::string, json>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string cell_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt17(v.get<double>());
    return v.dump();
}

void emit(const Table& t, const std::string& format,
          const std::string& out_path) {
    std::ostringstream os;
    if (format == "csv") {
        for (const auto& [k, v] : t.config)
            os << "# " << k << "=" << cell_text(v) << "\n";
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            os << (c ? "," : "") << t.columns[c];
        os << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? "," : "") << cell_text(row[c]);
            os << "\n";
        }
    } else {
        ordered_json doc;
        ordered_json cfg = ordered_json::object();
        for (const auto& [k, v] : t.config) cfg[k] = v;
        doc["config"] = cfg;
        ordered_json rows = ordered_json::array();
        for (const auto& row : t.rows) {
            ordered_json r = ordered_json::object();
            for (std::size_t c = 0; c < row.size(); ++c)
                r[t.columns[c]] = row[c];
            rows.push_back(r);
        }
        doc["rows"] = rows;
        os << doc.dump(2) << "\n";
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw Error("cannot open output file: " + out_path);
        f << os.str();
    }
}

struct Common {
    std::string k = "2";
    double gamma = 1.0 / 20, gamma_prime = 1.0 / 20, lambda = 2.0;
    int precision_bits = 192;
    std::uint64_t seed = 1;
    std::string format = "csv", out;
    int threads = 0;

    std::int64_t k1 = 2, k2 = 1;

    void parse_k() {
        auto slash = k.find('/');
        k1 = std::stoll(k.substr(0, slash));
        k2 = slash == std::string::npos ? 1 : std::stoll(k.substr(slash + 1));
    }
    KContext context() const { return make_context(k1, k2, precision_bits); }
    ArcConfig arc_config() const {
        ArcConfig c;
        c.gamma = gamma;
        c.gamma_prime = gamma_prime;
        c.lambda = lambda;
        return c;
    }
    void add_config(Table& t) const {
        t.config.emplace_back("k1", k1);
        t.config.emplace_back("k2", k2);
        t.config.emplace_back("gamma", gamma);
        t.config.emplace_back("gamma_prime", gamma_prime);
        t.config.emplace_back("lambda", lambda);
        t.config.emplace_back("precision_bits", precision_bits);
        t.config.emplace_back("seed", seed);
        // worker count deliberately not echoed: outputs are
        // byte-identical across thread counts
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--k", c.k, "k as integer or fraction k1/k2");
    cmd->add_option("--gamma", c.gamma);
    cmd->add_option("--gamma-prime", c.gamma_prime);
    cmd->add_option("--lambda", c.lambda);
    cmd->add_option("--precision-bits", c.precision_bits);
    cmd->add_option("--seed", c.seed);
    cmd->add_option("--format", c.format)
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out);
    cmd->add_option("--threads", c.threads);
}

// ---------------------------------------------------------------------------

int cmd_sum(const Common& c, const std::vector<double>& xis, int j_min,
            int j_max) {
    auto ctx = c.context();
    Table t;
    c.add_config(t);
    t.columns = {"xi", "j", "N", "re", "im", "abs"};
    bool ok = true;
    for (double xi : xis) {
        for (int j = j_min; j <= j_max; ++j) {
            auto N = std::pow(c.lambda, j);
            auto res = exp_sum(N, phase_from_real(xi), ctx, c.threads);
            if (xi == 0.0 && res.value != std::complex<double>(1.0, 0.0))
                ok = false;
            if (!std::isfinite(std::abs(res.value))) ok = false;
            t.rows.push_back({xi, j, (std::int64_t)std::floor(N),
                              res.value.real(), res.value.imag(),
                              std::abs(res.value)});
        }
    }
    emit(t, c.format, c.out);
    return ok ? 0 : 1;
}

int cmd_arcs(const Common& c, double N, std::int64_t grid_points) {
    auto ctx = c.context();
    auto cfg = c.arc_config();
    auto centers = enumerate_centers(N, cfg, ctx);
    Table t;
    c.add_config(t);
    t.config.emplace_back("N", N);
    t.config.emplace_back("center_count", (std::int64_t)centers.size());
    t.config.emplace_back("major_width",
                          std::pow(N, -2.0 + cfg.gamma_prime));
    t.config.emplace_back("annulus_width", std::pow(N, -1.0 + cfg.gamma));
    t.columns = {"xi", "kind", "a", "b", "q", "t"};
    bool ok = true;
    std::int64_t counted = 0;
    for (std::int64_t i = 0; i < grid_points; ++i) {
        double xi = -0.5 + ((double)i + 0.5) / (double)grid_points;
        try {
            auto lab = classify_frequency(xi, N, cfg, ctx);
            ++counted;
            const char* kind = lab.kind == ArcLabel::Kind::Major ? "major"
                               : lab.kind == ArcLabel::Kind::Minor2
                                   ? "minor2"
                                   : "minor1";
            if (lab.center)
                t.rows.push_back({xi, kind, lab.center->a, lab.center->b,
                                  lab.center->q, lab.t});
            else
                t.rows.push_back({xi, kind, json(), json(), json(), json()});
        } catch (const AmbiguousClassificationError&) {
            ok = false;
            t.rows.push_back({xi, "ambiguous", json(), json(), json(), json()});
        }
    }
    // closed-form center count when only q = 1 is admissible
    if (std::pow(N, cfg.gamma) < 2.0 && centers.size() != 3) ok = false;
    if (counted != (std::int64_t)t.rows.size()) ok = false;
    emit(t, c.format, c.out);
    return ok ? 0 : 1;
}

int cmd_majtest(const Common& c, std::int64_t q_max, std::int64_t b_max,
                int j_min, int j_max, double t_off) {
    auto ctx = c.context();
    auto centers = enumerate_normalized(ctx, q_max, b_max);
    std::vector<std::int64_t> Ns;
    for (int j = j_min; j <= j_max; ++j) Ns.push_back(std::int64_t(1) << j);
    Table t;
    c.add_config(t);
    t.config.emplace_back("t", t_off);
    t.columns = {"a", "b", "q", "j", "N", "error", "bound", "ratio"};
    std::vector<double> max_err((std::size_t)(j_max - j_min + 1), 0.0);
    bool ok = true;
    for (const auto& ctr : centers) {
        auto sums = exp_sum_prefixes(Ns, phase_from_center(ctr, t_off), ctx);
        auto main_arith = gauss_G(ctr.a, ctr.b, ctr.q, ctx).value *
                          fresnel_F((double)ctr.b / (2.0 * (double)ctr.q))
                              .value;
        for (std::size_t i = 0; i < Ns.size(); ++i) {
            double N = (double)Ns[i];
            auto main = main_arith * v_tilde(N, t_off, ctx).value;
            double err = std::abs(sums[i] - main);
            double bound = (double)(ctr.q * ctr.q) *
                           (1.0 + (double)std::llabs(ctr.b)) *
                           (1.0 + std::log(N)) / std::sqrt(N);
            if (!std::isfinite(err)) ok = false;
            max_err[i] = std::max(max_err[i], err);
            t.rows.push_back({ctr.a, ctr.b, ctr.q, j_min + (int)i,
                              Ns[(std::size_t)i], err, bound, err / bound});
        }
    }
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < Ns.size(); ++i)
        if (max_err[i] > 0) pts.emplace_back((double)Ns[i], max_err[i]);
    if (pts.size() >= 4) {
        auto fit = fit_loglog(pts);
        t.config.emplace_back("fit_exponent", fit.exponent);
        t.config.emplace_back("fit_constant", fit.constant);
        t.config.emplace_back("fit_r_squared", fit.r_squared);
    }
    emit(t, c.format, c.out);
    return ok ? 0 : 1;
}

int cmd_minscan(const Common& c, int samples, int j_min, int j_max) {
    auto ctx = c.context();
    auto cfg = c.arc_config();
    std::vector<std::int64_t> Ns;
    for (int j = j_min; j <= j_max; ++j)
        Ns.push_back((std::int64_t)std::floor(std::pow(c.lambda, j)));
    double N_top = (double)Ns.back();
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    std::vector<double> sup((std::size_t)Ns.size(), 0.0);
    int kept = 0;
    while (kept < samples) {
        double xi = uni(rng);
        auto lab = classify_frequency(xi, N_top, cfg, ctx);
        if (lab.kind == ArcLabel::Kind::Major) continue;  // filter
        ++kept;
        auto sums = exp_sum_prefixes(Ns, phase_from_real(xi), ctx);
        for (std::size_t i = 0; i < sums.size(); ++i)
            sup[i] = std::max(sup[i], std::abs(sums[i]));
    }
    Table t;
    c.add_config(t);
    t.config.emplace_back("samples", samples);
    t.columns = {"j", "N", "sup_abs"};
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        t.rows.push_back({j_min + (int)i, Ns[i], sup[i]});
        pts.emplace_back((double)Ns[i], sup[i]);
    }
    auto fit = fit_loglog(pts);
    t.config.emplace_back("fit_exponent", fit.exponent);
    t.config.emplace_back("fit_constant", fit.constant);
    t.config.emplace_back("fit_r_squared", fit.r_squared);
    emit(t, c.format, c.out);
    return fit.exponent < 0.0 ? 0 : 1;
}

int cmd_oscillation(const Common& c, std::int64_t window, int n_max,
                    int trials) {
    auto ctx = c.context();
    std::mt19937_64 rng(c.seed);
    std::vector<std::complex<double>> v((std::size_t)window);
    for (auto& z : v) z = (rng() & 1) ? 1.0 : -1.0;
    auto f = make_signal(0, std::move(v));
    auto st = osc_ratio_experiment(f, c.lambda, n_max, trials, c.seed, ctx);
    Table t;
    c.add_config(t);
    t.config.emplace_back("window", window);
    t.config.emplace_back("n_max", n_max);
    t.config.emplace_back("trials", trials);
    t.columns = {"max_osc_ratio", "mean_osc_ratio", "maximal_ratio"};
    t.rows.push_back({st.max_osc_ratio, st.mean_osc_ratio, st.maximal_ratio});
    emit(t, c.format, c.out);
    return std::isfinite(st.max_osc_ratio) && std::isfinite(st.maximal_ratio)
               ? 0
               : 1;
}

int cmd_equidist(const Common& c, std::int64_t q, std::int64_t D, int j_min,
                 int j_max) {
    auto ctx = c.context();
    Table t;
    c.add_config(t);
    t.config.emplace_back("q", q);
    t.config.emplace_back("D", D);
    t.columns = {"j", "len", "max_abs_deviation", "rate_constant"};
    bool ok = true;
    for (int j = j_min; j <= j_max; ++j) {
        std::int64_t len = std::int64_t(1) << j;
        auto cells = equidist_counts(1, len, q, D, ctx);
        std::int64_t total = 0;
        double dev = 0.0;
        for (const auto& cell : cells) {
            total += cell.count;
            dev = std::max(dev, std::fabs(cell.deviation));
        }
        if (total != len) ok = false;  // conservation
        double cj = dev * (double)len / (1.0 + std::log((double)len));
        t.rows.push_back({j, len, dev, cj});
    }
    emit(t, c.format, c.out);
    return ok ? 0 : 1;
}

int cmd_heis(const Common& c, std::int64_t N, int samples, std::int64_t L,
             double tau_budget) {
    auto ctx = c.context();
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    Table t;
    c.add_config(t);
    t.config.emplace_back("N", N);
    t.config.emplace_back("L", L);
    t.config.emplace_back("tau_budget", tau_budget);
    t.columns = {"xi", "defect", "l1", "l2", "l3", "norm_linear",
                 "norm_quadratic", "rec_a", "rec_b", "rec_q"};
    bool ok = true;
    for (int s = 0; s < samples; ++s) {
        double xi = uni(rng);
        double defect = orbit_identity_defect(xi, N, ctx);
        if (N <= 100000 && defect > 1e-9) ok = false;
        std::vector<json> row = {xi, defect};
        if (L > 0) {
            auto w = obstruction_search(xi, N, L, tau_budget, ctx);
            if (w) {
                row.insert(row.end(), {w->l1, w->l2, w->l3, w->norm_linear,
                                       w->norm_quadratic});
                if (w->recovered)
                    row.insert(row.end(), {w->recovered->a, w->recovered->b,
                                           w->recovered->q});
                else
                    row.insert(row.end(), {json(), json(), json()});
            } else {
                row.insert(row.end(), 8, json());
            }
        } else {
            row.insert(row.end(), 8, json());
        }
        t.rows.push_back(std::move(row));
    }
    emit(t, c.format, c.out);
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"exponential-sum / circle-method experiment harness"};
    app.require_subcommand(1);

    Common c;
    std::vector<double> xis{0.0};
    int j_min = 10, j_max = 16;
    double N_arg = 65536.0;
    std::int64_t grid_points = 4096;
    std::int64_t q_max = 4, b_max = 4;
    double t_off = 0.0;
    int samples = 50;
    std::int64_t window = 1024;
    int n_max = 10, trials = 100;
    std::int64_t q = 3, D = 8;
    std::int64_t heis_N = 10000, L = 0;
    double tau_budget = 1.0;

    auto* sum = app.add_subcommand("sum", "exponential sums over N/xi grids");
    add_common(sum, c);
    sum->add_option("--xi", xis, "frequencies");
    sum->add_option("--n-min", j_min);
    sum->add_option("--n-max", j_max);

    auto* arcs = app.add_subcommand("arcs", "center enumeration and arc labels");
    add_common(arcs, c);
    arcs->add_option("--N", N_arg);
    arcs->add_option("--grid-points", grid_points);

    auto* maj = app.add_subcommand("majtest", "major-arc approximation sweep");
    add_common(maj, c);
    maj->add_option("--q-max", q_max);
    maj->add_option("--b-max", b_max);
    maj->add_option("--n-min", j_min);
    maj->add_option("--n-max", j_max);
    maj->add_option("--t", t_off);

    auto* minscan = app.add_subcommand("minscan", "minor-arc decay scan");
    add_common(minscan, c);
    minscan->add_option("--samples", samples);
    minscan->add_option("--n-min", j_min);
    minscan->add_option("--n-max", j_max);

    auto* osc = app.add_subcommand("oscillation", "oscillation seminorm experiment");
    add_common(osc, c);
    osc->add_option("--window", window);
    osc->add_option("--osc-n-max", n_max);
    osc->add_option("--trials", trials);

    auto* equi = app.add_subcommand("equidist", "equidistribution tables");
    add_common(equi, c);
    equi->add_option("--q", q);
    equi->add_option("--D", D);
    equi->add_option("--n-min", j_min);
    equi->add_option("--n-max", j_max);

    auto* heis = app.add_subcommand("heis", "Heisenberg orbit diagnostics");
    add_common(heis, c);
    heis->add_option("--N", heis_N);
    heis->add_option("--samples", samples);
    heis->add_option("--L", L);
    heis->add_option("--tau-budget", tau_budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        c.parse_k();
        if (sum->parsed()) return cmd_sum(c, xis, j_min, j_max);
        if (arcs->parsed()) return cmd_arcs(c, N_arg, grid_points);
        if (maj->parsed())
            return cmd_majtest(c, q_max, b_max, j_min, j_max, t_off);
        if (minscan->parsed()) return cmd_minscan(c, samples, j_min, j_max);
        if (osc->parsed()) return cmd_oscillation(c, window, n_max, trials);
        if (equi->parsed()) return cmd_equidist(c, q, D, j_min, j_max);
        if (heis->parsed())
            return cmd_heis(c, heis_N, samples, L, tau_budget);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace bracketsum
