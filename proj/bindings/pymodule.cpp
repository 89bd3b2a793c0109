// Python bindings for the core operations. Point sets travel as
// list[list[float]]; matrices as row-major nested lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sfs/catalog.hpp"
#include "sfs/trajectory.hpp"

namespace py = pybind11;
using namespace sfs;

namespace {

using Rows = std::vector<std::vector<double>>;

PointSet to_set(const Rows& rows) {
    if (rows.empty()) throw Error("point set must be nonempty");
    return PointSet::from_points(static_cast<int>(rows[0].size()), rows);
}

Rows from_set(const PointSet& s) {
    Rows rows;
    rows.reserve(s.size());
    for (int i = 0; i < s.size(); ++i) rows.push_back(s.point_vec(i));
    return rows;
}

Rows from_mat(const Mat& m) {
    Rows rows;
    for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    return rows;
}

py::dict trajectory_dict(const TrajectoryResult& r) {
    py::dict out;
    out["depths"] = r.depths;
    py::list sets;
    for (const auto& s : r.sets) sets.append(from_set(s));
    out["sets"] = sets;
    out["h_steps"] = r.step_hausdorff;
    return out;
}

}  // namespace

PYBIND11_MODULE(sfskit, m) {
    m.doc() = "attractors of iterated and sequential function systems";

    py::register_exception<Error>(m, "SfsError");

    // ---- point sets --------------------------------------------------------
    m.def("hausdorff", [](const Rows& a, const Rows& b) { return hausdorff(to_set(a), to_set(b)); });
    m.def("directed_distance",
          [](const Rows& a, const Rows& b) { return directed_distance(to_set(a), to_set(b)); });
    m.def("decimate",
          [](const Rows& a, double eps) { return from_set(decimate(to_set(a), eps)); });
    m.def("diameter", [](const Rows& a) { return diameter(to_set(a)); });

    // ---- masks and subdivision ---------------------------------------------
    py::class_<Mask>(m, "Mask")
        .def(py::init<int, std::vector<double>>(), py::arg("offset"), py::arg("coeffs"))
        .def_property_readonly("offset", &Mask::offset)
        .def_property_readonly("coeffs", &Mask::coeffs)
        .def("__eq__", [](const Mask& a, const Mask& b) { return a == b; });

    m.def("cubic_bspline_mask", &cubic_bspline_mask);
    m.def("fourpoint_mask", &fourpoint_mask, py::arg("w"));
    m.def("parse_laurent_mask", &parse_laurent_mask, py::arg("text"));
    m.def("check_constant_reproduction", [](const Mask& mask) {
        const auto r = check_constant_reproduction(mask);
        return py::make_tuple(r.ok, r.even_sum, r.odd_sum);
    });
    m.def("refine",
          [](const Mask& mask, const Rows& p) { return from_set(refine(mask, to_set(p))); });
    m.def("slice_matrices", [](const Mask& mask, int n) {
        const auto s = slice_matrices(mask, n);
        return py::make_tuple(from_mat(s.s1), from_mat(s.s2));
    });

    py::class_<MaskSequence>(m, "MaskSequence")
        .def("mask", &MaskSequence::mask, py::arg("k"), py::return_value_policy::copy)
        .def_property_readonly("support_size", &MaskSequence::support_size)
        .def_property_readonly("description", &MaskSequence::description);
    m.def("constant_masks", [](const Mask& mask) { return MaskSequence::constant(mask); });
    m.def("exponential_spline_masks", &exponential_spline_masks, py::arg("lam"));
    m.def("random_fourpoint_masks", &random_fourpoint_masks, py::arg("b"), py::arg("seed"));
    m.def("subdivide_levels", [](const MaskSequence& masks, const Rows& p0, int levels) {
        return from_set(subdivide_levels(masks, to_set(p0), levels));
    });
    m.def("c0_convergence_estimate",
          [](const MaskSequence& masks, const Rows& p0, int levels) {
              const auto est = c0_convergence_estimate(masks, to_set(p0), levels);
              py::dict out;
              out["classification"] = std::string(to_string(est.classification));
              out["max_adjacent_diff"] = est.max_adjacent_diff;
              out["hausdorff_steps"] = est.hausdorff_steps;
              out["delta_ratios"] = est.delta_ratios;
              return out;
          });

    // ---- function systems ---------------------------------------------------
    py::class_<FunctionSystem>(m, "FunctionSystem")
        .def_property_readonly("dim", &FunctionSystem::dim)
        .def_property_readonly("count", &FunctionSystem::count)
        .def_property_readonly("label", &FunctionSystem::label)
        .def("map", [](const FunctionSystem& f, int i) {
            if (i < 0 || i >= f.count()) throw Error("map index out of range");
            return py::make_tuple(from_mat(f.map(i).a), f.map(i).b);
        });
    m.def("function_system", [](const std::vector<std::pair<Rows, Vec>>& maps) {
        if (maps.empty()) throw Error("needs at least one map");
        std::vector<AffineMap> ms;
        for (const auto& [a_rows, b] : maps) ms.emplace_back(Mat::from_rows(a_rows), b);
        const int dim = ms[0].dim();
        return FunctionSystem(dim, std::move(ms));
    });
    m.def("koch_ifs", &koch_ifs);
    m.def("cantor_ifs", &cantor_ifs);
    m.def("interval_ifs", &interval_ifs);
    m.def("cubic_spline_fs", &cubic_spline_fs, py::arg("n") = 5);
    m.def("contraction_factor", &contraction_factor);
    m.def("hutchinson_apply", [](const FunctionSystem& f, const Rows& b, double eps) {
        return from_set(hutchinson_apply(f, to_set(b), eps));
    });
    m.def(
        "ifs_attractor",
        [](const FunctionSystem& f, const Rows& b0, double tol, int max_iter, double eps,
           bool assume_contractive) {
            const auto r = ifs_attractor(f, to_set(b0), tol, max_iter, eps, assume_contractive);
            py::dict out;
            out["set"] = from_set(r.set);
            out["iterations"] = r.iterations;
            out["converged"] = r.converged;
            out["final_step"] = r.final_step;
            out["h_steps"] = r.h_steps;
            out["contraction_factor"] = r.contraction;
            return out;
        },
        py::arg("system"), py::arg("start"), py::arg("tol") = 1e-6, py::arg("max_iter") = 100,
        py::arg("eps") = 0.0, py::arg("assume_contractive") = false);

    // ---- schedules and trajectories ------------------------------------------
    py::class_<SfsSchedule>(m, "SfsSchedule")
        .def_property_readonly("dim", &SfsSchedule::dim)
        .def_property_readonly("description", &SfsSchedule::description)
        .def("system", &SfsSchedule::system, py::arg("k"), py::return_value_policy::copy)
        .def("factor", &SfsSchedule::factor, py::arg("k"))
        .def_property_readonly("start", [](const SfsSchedule& s) -> py::object {
            if (!s.lifted()) return py::none();
            return py::cast(from_set(s.lifted()->start));
        })
        .def_property_readonly("projection_dim", [](const SfsSchedule& s) -> py::object {
            if (!s.lifted()) return py::none();
            return py::cast(s.lifted()->m);
        });
    m.def("constant_schedule", [](const FunctionSystem& f) { return SfsSchedule::constant(f); });
    m.def("alternating_halves_schedule", &alternating_halves_schedule, py::arg("c"));
    m.def("hidden_fractal_schedule", &hidden_fractal_schedule, py::arg("block") = 5);
    m.def(
        "exponential_spline_schedule",
        [](double lam, int n) { return exponential_spline_schedule(lam, n); },
        py::arg("lam"), py::arg("n") = 5);
    m.def(
        "random_fourpoint_schedule",
        [](double b, uint64_t seed, int n) { return random_fourpoint_schedule(b, seed, n); },
        py::arg("b"), py::arg("seed"), py::arg("n") = 6);
    m.def(
        "cubic_spline_schedule", [](int n) { return cubic_spline_schedule(n); },
        py::arg("n") = 5);
    m.def(
        "forward_trajectory",
        [](const SfsSchedule& s, const Rows& a, const std::vector<int>& depths, double eps) {
            return trajectory_dict(forward_trajectory(s, to_set(a), depths, eps));
        },
        py::arg("schedule"), py::arg("start"), py::arg("depths"), py::arg("eps") = 1e-4);
    m.def(
        "backward_trajectory",
        [](const SfsSchedule& s, const Rows& a, const std::vector<int>& depths, double eps) {
            return trajectory_dict(backward_trajectory(s, to_set(a), depths, eps));
        },
        py::arg("schedule"), py::arg("start"), py::arg("depths"), py::arg("eps") = 1e-4);
    m.def("project", [](const Rows& a, int dim) { return from_set(project(to_set(a), dim)); });

    // ---- lift machinery -------------------------------------------------------
    py::class_<LiftMatrix>(m, "LiftMatrix")
        .def_property_readonly("n", &LiftMatrix::n)
        .def_property_readonly("embedded_dim", &LiftMatrix::embedded_dim)
        .def_property_readonly("matrix", [](const LiftMatrix& l) { return from_mat(l.matrix()); })
        .def_property_readonly("rows", [](const LiftMatrix& l) {
            return from_set(l.rows_as_points());
        });
    m.def("build_p_matrix", [](const Rows& p0) { return LiftMatrix::build_p(to_set(p0)); });
    m.def("build_h_matrix", &LiftMatrix::build_h, py::arg("n"));
    m.def("lift", [](const Rows& s_r, const LiftMatrix& l) {
        const auto lifted = lift(Mat::from_rows(s_r), l);
        return py::make_tuple(from_mat(lifted.m), lifted.reproduces_constants);
    });
    m.def("block_structure", [](const Rows& lifted_m, bool reproduces_constants) {
        LiftedMap lm{Mat::from_rows(lifted_m), reproduces_constants};
        const auto b = block_structure(lm);
        py::dict out;
        out["G"] = from_mat(b.g);
        out["v"] = b.v;
        out["g_spectral_norm"] = b.g_spectral_norm;
        return out;
    });
    m.def(
        "sfs_from_subdivision",
        [](const MaskSequence& masks, const LiftMatrix& l) {
            return sfs_from_subdivision(masks, l, l.n());
        },
        py::arg("masks"), py::arg("lift"));
    m.def("word_limit",
          [](const MaskSequence& masks, const std::vector<int>& word, const LiftMatrix& l,
             const Rows& p0) {
              const auto r = word_limit(masks, IndexWord(word), l, to_set(p0));
              py::dict out;
              out["point"] = r.point;
              out["spread"] = r.spread;
              out["rows"] = from_mat(r.rows);
              return out;
          });
    m.def("attractor_from_basis",
          [](const Rows& h_inf, const LiftMatrix& h, const Rows& p0) {
              return from_set(attractor_from_basis(to_set(h_inf), h, to_set(p0)));
          });
    m.def("invariant_ball_radius", [](double mu, double m_bound) {
        return invariant_ball(Vec{0.0}, mu, m_bound).radius;
    });
    m.def("similarity_bound", [](const std::vector<double>& s, double d_xy) {
        return similarity_bound({s.data(), s.size()}, d_xy);
    });

    m.def("product_diagnostic", [](const std::vector<double>& factors) {
        const auto d = product_diagnostic({factors.data(), factors.size()});
        py::dict out;
        out["classification"] = std::string(to_string(d.classification));
        out["partial_products"] = d.partial_products;
        out["partial_sums"] = d.partial_sums;
        out["tail_ratio"] = d.tail_ratio;
        return out;
    });
    m.def("word_parameter", [](const std::vector<int>& digits) {
        return word_parameter(IndexWord(digits));
    });
}
