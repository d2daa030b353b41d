#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bracketsum/arcs.hpp"
#include "bracketsum/ergodic.hpp"
#include "bracketsum/expsum.hpp"
#include "bracketsum/factors.hpp"
#include "bracketsum/fit.hpp"
#include "bracketsum/heis.hpp"
#include "bracketsum/qfield.hpp"

namespace py = pybind11;
using namespace bracketsum;

PYBIND11_MODULE(_bracketsum, m) {
    m.doc() = "exponential sums with phase xi*n*floor(n*sqrt(k)) and their "
              "circle-method decomposition";

    py::register_exception<Error>(m, "BracketsumError");

    py::class_<KContext>(m, "KContext")
        .def_readonly("k1", &KContext::k1)
        .def_readonly("k2", &KContext::k2)
        .def_readonly("precision_bits", &KContext::precision_bits)
        .def_readonly("cf_preperiod", &KContext::cf_preperiod)
        .def_readonly("cf_period", &KContext::cf_period)
        .def_readonly("sqrtk", &KContext::sqrtk);

    py::class_<QuadRat>(m, "QuadRat")
        .def_readonly("a", &QuadRat::a)
        .def_readonly("b", &QuadRat::b)
        .def_readonly("q", &QuadRat::q)
        .def_readonly("shift", &QuadRat::shift)
        .def_readonly("alpha", &QuadRat::alpha);

    py::class_<ArcConfig>(m, "ArcConfig")
        .def(py::init<>())
        .def_readwrite("gamma", &ArcConfig::gamma)
        .def_readwrite("gamma_prime", &ArcConfig::gamma_prime)
        .def_readwrite("lambda_", &ArcConfig::lambda);

    py::class_<HeisPoint>(m, "HeisPoint")
        .def(py::init<>())
        .def_readwrite("x", &HeisPoint::x)
        .def_readwrite("y", &HeisPoint::y)
        .def_readwrite("z", &HeisPoint::z);

    py::class_<Signal>(m, "Signal")
        .def_readonly("offset", &Signal::offset)
        .def_readonly("values", &Signal::values)
        .def_readonly("l2_norm", &Signal::l2_norm);

    py::class_<OscStats>(m, "OscStats")
        .def_readonly("max_osc_ratio", &OscStats::max_osc_ratio)
        .def_readonly("mean_osc_ratio", &OscStats::mean_osc_ratio)
        .def_readonly("maximal_ratio", &OscStats::maximal_ratio);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("exponent", &FitResult::exponent)
        .def_readonly("constant", &FitResult::constant)
        .def_readonly("r_squared", &FitResult::r_squared)
        .def_readonly("points", &FitResult::points);

    m.def("make_context", &make_context, py::arg("k1"), py::arg("k2") = 1,
          py::arg("precision_bits") = 192);
    m.def("make_quadrat", &make_quadrat, py::arg("a"), py::arg("b"),
          py::arg("q"), py::arg("ctx"));
    m.def("torus_dist", &torus_dist);
    m.def("floor_n_sqrtk", &floor_n_sqrtk, py::arg("n"), py::arg("ctx"));
    m.def(
        "exp_sum",
        [](double N, double xi, const KContext& ctx, int threads) {
            return exp_sum(N, phase_from_real(xi), ctx, threads).value;
        },
        py::arg("N"), py::arg("xi"), py::arg("ctx"), py::arg("threads") = 0);
    m.def(
        "exp_sum_center",
        [](double N, const QuadRat& center, double t, const KContext& ctx) {
            return exp_sum(N, phase_from_center(center, t), ctx).value;
        },
        py::arg("N"), py::arg("center"), py::arg("t"), py::arg("ctx"));
    m.def(
        "gauss_g",
        [](std::int64_t a, std::int64_t b, std::int64_t q) {
            return gauss_g(a, b, q).value;
        },
        py::arg("a"), py::arg("b"), py::arg("q"));
    m.def(
        "gauss_G",
        [](std::int64_t a, std::int64_t b, std::int64_t q,
           const KContext& ctx) { return gauss_G(a, b, q, ctx).value; },
        py::arg("a"), py::arg("b"), py::arg("q"), py::arg("ctx"));
    m.def(
        "fresnel_F", [](double xi) { return fresnel_F(xi).value; },
        py::arg("xi"));
    m.def(
        "v_tilde",
        [](double N, double t, const KContext& ctx) {
            return v_tilde(N, t, ctx).value;
        },
        py::arg("N"), py::arg("t"), py::arg("ctx"));
    m.def("approximant", &approximant, py::arg("xi"), py::arg("n"),
          py::arg("cfg"), py::arg("ctx"));
    m.def(
        "classify_frequency",
        [](double xi, double N, const ArcConfig& cfg, const KContext& ctx) {
            auto lab = classify_frequency(xi, N, cfg, ctx);
            const char* kind = lab.kind == ArcLabel::Kind::Major ? "major"
                               : lab.kind == ArcLabel::Kind::Minor2
                                   ? "minor2"
                                   : "minor1";
            return py::make_tuple(kind, lab.center, lab.t);
        },
        py::arg("xi"), py::arg("N"), py::arg("cfg"), py::arg("ctx"));
    m.def("heis_reduce", &heis_reduce, py::arg("x"), py::arg("y"),
          py::arg("z"));
    m.def("orbit_identity_defect", &orbit_identity_defect, py::arg("xi"),
          py::arg("N"), py::arg("ctx"));
    m.def(
        "equidist_max_deviation",
        [](std::int64_t lo, std::int64_t hi, std::int64_t q, std::int64_t D,
           const KContext& ctx) {
            double dev = 0.0;
            for (const auto& c : equidist_counts(lo, hi, q, D, ctx))
                dev = std::max(dev, std::fabs(c.deviation));
            return dev;
        },
        py::arg("lo"), py::arg("hi"), py::arg("q"), py::arg("D"),
        py::arg("ctx"));
    m.def("make_signal", &make_signal, py::arg("offset"), py::arg("values"));
    m.def("average_op", &average_op, py::arg("f"), py::arg("t"),
          py::arg("ctx"));
    m.def("osc_ratio_experiment", &osc_ratio_experiment, py::arg("f"),
          py::arg("lambda_"), py::arg("n_max"), py::arg("trials"),
          py::arg("seed"), py::arg("ctx"));
    m.def("fit_loglog", &fit_loglog, py::arg("points"));
}
