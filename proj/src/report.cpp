#include "jlab/report.hpp"

#include <cmath>

#include "jlab/errors.hpp"

namespace jlab {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("complex numbers are encoded as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

namespace {

Json complex_list(const std::vector<Complex>& v) {
    Json arr = Json::array();
    for (const Complex& z : v) arr.push_back(complex_to_json(z));
    return arr;
}

std::vector<Complex> complex_list_from(const Json& j) {
    std::vector<Complex> v;
    for (const auto& e : j) v.push_back(complex_from_json(e));
    return v;
}

}  // namespace

Json point_to_json(const Point& p) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) arr.push_back(complex_to_json(p[i]));
    return arr;
}

Point point_from_json(const Json& j) {
    Point p(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) p[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
    return p;
}

Json matrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    return m;
}

void to_json(Json& j, const FoliationParams& p) {
    j = Json{{"n", p.n}, {"d", p.d}, {"alpha", complex_list(p.alpha_or_zero())}};
}

void from_json(const Json& j, FoliationParams& p) {
    p.n = j.at("n").get<int>();
    p.d = j.at("d").get<int>();
    p.alpha = complex_list_from(j.at("alpha"));
}

void to_json(Json& j, const RunConfig& c) {
    j = Json{{"newton_tol", c.newton_tol}, {"max_iters", c.max_iters},
             {"continuation_steps", c.continuation_steps}, {"dedup_tol", c.dedup_tol},
             {"radius", c.radius}, {"fd_step", c.fd_step}, {"tol_hyp", c.tol_hyp},
             {"tol_nd", c.tol_nd}, {"align_tol", c.align_tol}, {"delta", c.delta},
             {"max_order", c.max_order}, {"seed", c.seed}, {"samples", c.samples}};
}

void from_json(const Json& j, RunConfig& c) {
    c.newton_tol = j.at("newton_tol").get<double>();
    c.max_iters = j.at("max_iters").get<int>();
    c.continuation_steps = j.at("continuation_steps").get<int>();
    c.dedup_tol = j.at("dedup_tol").get<double>();
    c.radius = j.at("radius").get<double>();
    c.fd_step = j.at("fd_step").get<double>();
    c.tol_hyp = j.at("tol_hyp").get<double>();
    c.tol_nd = j.at("tol_nd").get<double>();
    c.align_tol = j.at("align_tol").get<double>();
    c.delta = j.at("delta").get<double>();
    c.max_order = j.at("max_order").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.samples = j.at("samples").get<int>();
    // jobs is not echoed: output must not depend on the worker count.
    c.jobs = j.value("jobs", 1);
}

void to_json(Json& j, const Counts& c) { j = Json{{"N", c.N}, {"M", c.M}, {"K", c.K}}; }

void to_json(Json& j, const SingularPoint& p) {
    j = Json{{"m", p.m}, {"coords", point_to_json(p.coords)}, {"residual", p.residual},
             {"converged", p.converged}, {"newton_iters", p.newton_iters}};
    if (!p.diagnostic.empty()) j["diagnostic"] = p.diagnostic;
}

void from_json(const Json& j, SingularPoint& p) {
    p.m = j.at("m").get<int>();
    p.coords = point_from_json(j.at("coords"));
    p.residual = j.at("residual").get<double>();
    p.converged = j.at("converged").get<bool>();
    p.newton_iters = j.at("newton_iters").get<int>();
    p.diagnostic = j.value("diagnostic", std::string{});
}

void to_json(Json& j, const DivisorRecord& r) {
    j = Json{{"delta", r.delta}, {"max_order", r.max_order}, {"c_min", r.c_min},
             {"worst_j", r.worst_j}, {"worst_m", r.worst_m}, {"resonant", r.resonant}};
}

void to_json(Json& j, const SpectrumReport& r) {
    j = Json{{"m", r.m},
             {"sigma", complex_list(r.sigma)},
             {"eigenvalues", complex_list(r.eigenvalues)},
             {"classification", std::string(to_string(r.classification))},
             {"divisor", r.divisor},
             {"near_diagonal", r.near_diagonal},
             {"linearizable_truncated", r.linearizable()}};
}

void to_json(Json& j, const SubmersionReport& r) {
    Json sv = Json::array();
    for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) sv.push_back(r.singular_values[i]);
    j = Json{{"m", r.m},
             {"jac", matrix_to_json(r.jac)},
             {"det", complex_to_json(r.det)},
             {"abs_det", std::abs(r.det)},
             {"expected_modulus", r.expected_modulus},
             {"rel_error", r.rel_error},
             {"fd_step", r.fd_step},
             {"singular_values", sv},
             {"rank_certified", r.rank_certified}};
}

void to_json(Json& j, const DerivativeEntry& e) {
    j = Json{{"i", e.i}, {"j", e.j}, {"fd", complex_to_json(e.fd)}};
    if (e.formula) {
        j["formula"] = *e.formula;
        j["rel_error"] = e.rel_error;
    } else {
        j["formula"] = nullptr;
    }
}

void to_json(Json& j, const AlignmentRecord& r) {
    j = Json{{"indices", r.indices}, {"line_point", point_to_json(r.line_point)},
             {"line_dir", point_to_json(r.line_dir)}, {"residual", r.residual}};
}

void to_json(Json& j, const HyperplaneSet& h) {
    Json images = Json::array();
    for (const auto& v : h.images) images.push_back(complex_list(v));
    j = Json{{"base_normal", complex_list(h.base_normal)}, {"group_powers", h.group_powers}, {"images", images}};
}

void to_json(Json& j, const DefectResult& r) {
    j = Json{{"mu", r.mu},
             {"defect", r.defect},
             {"slope", std::isnan(r.slope) ? Json(nullptr) : Json(r.slope)},
             {"q_indices", r.q_indices},
             {"group_power", r.group_power},
             {"persistent_alignment", r.persistent_alignment}};
}

void to_json(Json& j, const GenericityStats& s) {
    j = Json{{"samples", s.samples},
             {"successes", s.successes},
             {"tracking_failures", s.tracking_failures},
             {"all_hyperbolic", s.all_hyperbolic},
             {"any_resonant", s.any_resonant},
             {"success_fraction", s.success_fraction},
             {"all_hyperbolic_fraction", s.all_hyperbolic_fraction},
             {"any_resonant_fraction", s.any_resonant_fraction},
             {"min_c_min", s.min_c_min}};
}

void to_json(Json& j, const PushforwardFactor& f) {
    j = Json{{"c", complex_to_json(f.c)}, {"alpha_tilde", complex_list(f.alpha_tilde)}, {"residual", f.residual}};
}

void to_json(Json& j, const GroupElement& g) {
    j = Json{{"power", g.power}, {"order", g.order}, {"weights", g.weights}};
}

void to_json(Json& j, const Report& r) {
    j = Json{{"tool_version", r.tool_version}, {"params", r.params}, {"cfg", r.cfg},
             {"payload", r.payload}, {"warnings", r.warnings}};
}

void from_json(const Json& j, Report& r) {
    r.tool_version = j.at("tool_version").get<std::string>();
    r.params = j.at("params").get<FoliationParams>();
    r.cfg = j.at("cfg").get<RunConfig>();
    r.payload = j.at("payload");
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
}

}  // namespace jlab
