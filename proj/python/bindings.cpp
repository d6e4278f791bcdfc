// Python bindings for the mapcones core: map representations, cone
// membership verdicts, Lindblad-form generators, idempotent-started
// exponentials, and the commuting four-coefficient family.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mapcones/family4.hpp"
#include "mapcones/generators.hpp"
#include "mapcones/json_io.hpp"

namespace py = pybind11;
using namespace mapcones;

namespace {

CMatrix matrix_from_array(const py::array_t<cplx, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw dimension_error("expected a 2-d array");
    CMatrix m(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = r(i, j);
    return m;
}

py::array_t<cplx> matrix_to_array(const CMatrix& m) {
    py::array_t<cplx> a({m.rows(), m.cols()});
    auto w = a.mutable_unchecked<2>();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
    return a;
}

using NpMatrix = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

py::dict verdict_to_dict(const ConeVerdict& v) {
    py::dict d;
    d["cone"] = v.cone;
    if (v.k > 0) d["k"] = v.k;
    d["status"] = to_string(v.status);
    d["margin"] = v.margin;
    if (v.witness) d["witness"] = matrix_to_array(*v.witness);
    return d;
}

py::dict entry_to_dict(const EntryTimeResult& r) {
    py::dict d;
    d["cone"] = r.cone;
    d["found"] = r.status == EntryStatus::Found;
    if (r.status == EntryStatus::Found) d["t_star"] = r.t_star;
    d["method"] = r.method;
    d["bracket"] = py::make_tuple(r.bracket_lo, r.bracket_hi);
    d["residual"] = r.residual;
    d["crossings"] = r.crossings;
    d["already_member_at_start"] = r.already_member_at_start;
    if (r.closed_form) d["closed_form"] = *r.closed_form;
    return d;
}

WitnessOptions options_from_kwargs(int samples, int restarts, int refine_steps, double tol,
                                   uint64_t seed) {
    WitnessOptions o;
    o.samples = samples;
    o.restarts = restarts;
    o.refine_steps = refine_steps;
    o.tol = tol;
    o.seed = Seed{seed};
    return o;
}

FamilyParams params_from_tuple(double alpha, double beta, double gamma, double delta, int n) {
    return {alpha, beta, gamma, delta, n};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cones of positive maps on M_n and their one-parameter semigroups";

    py::register_exception<schema_error>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<dimension_error>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<unsupported_construction>(m, "UnsupportedConstruction",
                                                     PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_RuntimeError);

    py::class_<SuperOp>(m, "SuperOp")
        .def_static(
            "from_choi",
            [](int n, const NpMatrix& c) { return SuperOp::from_choi(n, matrix_from_array(c)); },
            py::arg("n"), py::arg("choi"))
        .def_static(
            "from_natural",
            [](int n, const NpMatrix& c) {
                return SuperOp::from_natural(n, matrix_from_array(c));
            },
            py::arg("n"), py::arg("natural"))
        .def_static(
            "from_tensor",
            [](int n, const NpMatrix& c) { return SuperOp::from_tensor(n, matrix_from_array(c)); },
            py::arg("n"), py::arg("tensor"))
        .def_static(
            "from_kraus",
            [](int n, const std::vector<NpMatrix>& ls) {
                std::vector<CMatrix> ms;
                for (const auto& l : ls) ms.push_back(matrix_from_array(l));
                return SuperOp::from_kraus(n, ms);
            },
            py::arg("n"), py::arg("kraus"))
        .def_static(
            "standard",
            [](const std::string& name, int n) {
                if (name.size() != 1)
                    throw schema_error("standard map name must be one of P, D, T, I");
                return SuperOp::standard_map(name[0], n);
            },
            py::arg("name"), py::arg("n"))
        .def_static(
            "conjugation",
            [](const NpMatrix& v) { return SuperOp::conjugation(matrix_from_array(v)); },
            py::arg("v"))
        .def_property_readonly("n", &SuperOp::n)
        .def("choi", [](const SuperOp& s) { return matrix_to_array(s.choi()); })
        .def("natural", [](const SuperOp& s) { return matrix_to_array(s.natural()); })
        .def("tensor", [](const SuperOp& s) { return matrix_to_array(s.tensor()); })
        .def(
            "kraus",
            [](const SuperOp& s, double tol) {
                std::vector<py::array_t<cplx>> out;
                for (const CMatrix& l : s.kraus(tol)) out.push_back(matrix_to_array(l));
                return out;
            },
            py::arg("tol") = 1e-10)
        .def(
            "apply",
            [](const SuperOp& s, const NpMatrix& x) {
                return matrix_to_array(s.apply(matrix_from_array(x)));
            },
            py::arg("x"))
        .def("star", &SuperOp::star)
        .def("sharp", &SuperOp::sharp)
        .def("is_hermiticity_preserving", &SuperOp::is_hermiticity_preserving,
             py::arg("tol") = 1e-12)
        .def("is_unital", &SuperOp::is_unital, py::arg("tol") = 1e-10)
        .def("is_trace_preserving", &SuperOp::is_trace_preserving, py::arg("tol") = 1e-10)
        .def("__mul__", [](const SuperOp& a, const SuperOp& b) { return a * b; })
        .def("__add__", [](const SuperOp& a, const SuperOp& b) { return a + b; })
        .def("__sub__", [](const SuperOp& a, const SuperOp& b) { return a - b; })
        .def("scaled", [](const SuperOp& a, cplx s) { return a.scaled(s); }, py::arg("s"))
        .def("__repr__", [](const SuperOp& s) {
            return "<SuperOp on M_" + std::to_string(s.n()) + ">";
        });

    m.def("hs_inner", &hs_inner, py::arg("a"), py::arg("b"));
    m.def("dual_pairing", &dual_pairing, py::arg("a"), py::arg("b"));
    m.def("superop_distance", &superop_distance, py::arg("a"), py::arg("b"));
    m.def(
        "pairing_with_ray",
        [](const SuperOp& s, const NpMatrix& v) {
            return pairing_with_ray(s, matrix_from_array(v));
        },
        py::arg("s"), py::arg("v"));

    // cone tests
    m.def(
        "is_cp", [](const SuperOp& s, double tol) { return verdict_to_dict(is_cp(s, tol)); },
        py::arg("s"), py::arg("tol") = 1e-9);
    m.def(
        "is_ppt", [](const SuperOp& s, double tol) { return verdict_to_dict(is_ppt(s, tol)); },
        py::arg("s"), py::arg("tol") = 1e-9);
    m.def(
        "is_eb", [](const SuperOp& s, double tol) { return verdict_to_dict(is_eb(s, tol)); },
        py::arg("s"), py::arg("tol") = 1e-9);
    m.def(
        "is_k_positive_witnessed",
        [](const SuperOp& s, int k, int samples, int restarts, int refine_steps, double tol,
           uint64_t seed) {
            return verdict_to_dict(is_k_positive_witnessed(
                s, k, options_from_kwargs(samples, restarts, refine_steps, tol, seed)));
        },
        py::arg("s"), py::arg("k"), py::arg("samples") = 20000, py::arg("restarts") = 20,
        py::arg("refine_steps") = 200, py::arg("tol") = 1e-9, py::arg("seed") = 42);
    m.def("kraus_rank_bound", &kraus_rank_bound, py::arg("s"), py::arg("tol") = 1e-10);

    // generators
    m.def(
        "build_gksl",
        [](const NpMatrix& h, const std::vector<NpMatrix>& vs) {
            GKSLData g;
            g.h = matrix_from_array(h);
            for (const auto& v : vs) g.v.push_back(matrix_from_array(v));
            return build_gksl(g);
        },
        py::arg("h"), py::arg("v") = std::vector<NpMatrix>{});
    m.def(
        "gksl_decompose",
        [](const SuperOp& s) {
            GKSLData g = gksl_decompose(s);
            std::vector<py::array_t<cplx>> vs;
            for (const CMatrix& v : g.v) vs.push_back(matrix_to_array(v));
            return py::make_tuple(matrix_to_array(g.h), vs);
        },
        py::arg("s"));
    m.def("is_cp_generator", &is_cp_generator, py::arg("s"), py::arg("tol") = 1e-9);
    m.def(
        "k_positive_generator_witnessed",
        [](const SuperOp& s, int k, int samples, int restarts, int refine_steps, double tol,
           uint64_t seed) {
            return verdict_to_dict(k_positive_generator_witnessed(
                s, k, options_from_kwargs(samples, restarts, refine_steps, tol, seed)));
        },
        py::arg("s"), py::arg("k"), py::arg("samples") = 20000, py::arg("restarts") = 20,
        py::arg("refine_steps") = 200, py::arg("tol") = 1e-9, py::arg("seed") = 42);
    m.def(
        "positive_generator_m2",
        [](const SuperOp& s, int samples, int restarts, int refine_steps, double tol,
           uint64_t seed) {
            return verdict_to_dict(positive_generator_m2(
                s, options_from_kwargs(samples, restarts, refine_steps, tol, seed)));
        },
        py::arg("s"), py::arg("samples") = 20000, py::arg("restarts") = 20,
        py::arg("refine_steps") = 200, py::arg("tol") = 1e-9, py::arg("seed") = 42);
    m.def("unitality_relations_check", &unitality_relations_check, py::arg("s"),
          py::arg("tol") = 1e-9);
    m.def(
        "exp_idempotent",
        [](const SuperOp& t0, const SuperOp& s, double t, double tail_tol) {
            return exp_idempotent(IdempotentPair{t0, s}, t, tail_tol);
        },
        py::arg("t0"), py::arg("s"), py::arg("t"), py::arg("tail_tol") = 1e-12);
    m.def(
        "conditional_positivity",
        [](const SuperOp& t0, const SuperOp& s, int k, int samples, int restarts,
           int refine_steps, double tol, uint64_t seed) {
            return verdict_to_dict(conditional_positivity(
                IdempotentPair{t0, s}, k,
                options_from_kwargs(samples, restarts, refine_steps, tol, seed)));
        },
        py::arg("t0"), py::arg("s"), py::arg("k"), py::arg("samples") = 20000,
        py::arg("restarts") = 20, py::arg("refine_steps") = 200, py::arg("tol") = 1e-9,
        py::arg("seed") = 42);
    m.def(
        "semigroup_split",
        [](const SuperOp& t0) {
            SplitResult r = semigroup_split(t0);
            return py::make_tuple(r.proj_im, r.proj_ker, py::make_tuple(r.dim_im, r.dim_ker));
        },
        py::arg("t0"));
    m.def(
        "compression_idempotent",
        [](const NpMatrix& p) { return compression_idempotent(matrix_from_array(p)); },
        py::arg("p"));
    m.def("lift_block_map", &lift_block_map, py::arg("s"), py::arg("alpha"));

    // four-coefficient family
    m.def(
        "family_superop",
        [](double a, double b, double c, double d, int n) {
            return params_from_tuple(a, b, c, d, n).to_superop();
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("n"));
    m.def(
        "family_choi_eigs",
        [](double a, double b, double c, double d, int n) {
            return choi_eigs(params_from_tuple(a, b, c, d, n));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("n"));
    m.def(
        "family_is_cp",
        [](double a, double b, double c, double d, int n) {
            return is_cp_family(params_from_tuple(a, b, c, d, n));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("n"));
    m.def(
        "family_evolve",
        [](double a, double b, double c, double d, int n, double t) {
            FamilyParams r = evolve_family(params_from_tuple(a, b, c, d, n), t);
            return py::make_tuple(r.alpha, r.beta, r.gamma, r.delta);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("n"),
        py::arg("t"));
    m.def(
        "entry_time",
        [](double a, double b, double c, double d, int n, const std::string& cone, double t_lo,
           double t_hi, double tol) {
            return entry_to_dict(entry_time(params_from_tuple(a, b, c, d, n),
                                            parse_family_cone(cone), t_lo, t_hi, tol));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("n"),
        py::arg("cone"), py::arg("t_lo") = 1e-3, py::arg("t_hi") = 100.0,
        py::arg("tol") = 1e-10);
    m.def(
        "is_k_positive_10",
        [](double alpha, double delta, int k, int n) {
            return is_k_positive_10({alpha, 0.0, 0.0, delta, n}, k);
        },
        py::arg("alpha"), py::arg("delta"), py::arg("k"), py::arg("n"));
    m.def(
        "is_k_positive_01",
        [](double alpha, double gamma, int k, int n) {
            return is_k_positive_01({alpha, 0.0, gamma, 0.0, n}, k);
        },
        py::arg("alpha"), py::arg("gamma"), py::arg("k"), py::arg("n"));

    // json interchange (same documents as the CLI)
    m.def(
        "superop_to_json",
        [](const SuperOp& s, const std::string& rep) { return superop_to_json(s, rep).dump(); },
        py::arg("s"), py::arg("rep") = "choi");
    m.def(
        "superop_from_json",
        [](const std::string& text) { return superop_from_json(json::parse(text)); },
        py::arg("text"));
}
