#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wreathscope/errors.hpp"
#include "wreathscope/json_io.hpp"
#include "wreathscope/poly.hpp"

namespace py = pybind11;
using namespace wreathscope;

namespace {

// A QSpec argument is either a built-in name or a JSON object.
QSpec load_qspec(const std::string& text) {
    if (!text.empty() && text.front() == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed QSpec JSON: ") + e.what(), 0);
        }
        return qspec_from_json(j);
    }
    return QSpec::builtin(text);
}

Direction parse_direction(const std::string& d) {
    if (d == "t") return Direction::t;
    if (d == "t^-1" || d == "t-1" || d == "t_inv") return Direction::t_inv;
    throw ParseError("direction must be t or t^-1", 0);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hyperbolic structures on lamplighter groups G wr Z";

    auto base = py::register_exception<Error>(m, "WreathscopeError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<GroupMismatch>(m, "GroupMismatch", base.ptr());
    py::register_exception<BoundExceeded>(m, "BoundExceeded", base.ptr());
    py::register_exception<WindowExceeded>(m, "WindowExceeded", base.ptr());
    py::register_exception<PreconditionViolated>(m, "PreconditionViolated", base.ptr());

    m.def("group_order", [](const std::string& g) { return GroupDesc::parse(g).order(); }, py::arg("group"));

    m.def("subgroups", [](const std::string& group, bool proper) {
        const auto g = GroupDesc::parse(group);
        std::vector<std::string> out;
        for (const auto& h : enumerate_subgroups(g, proper)) out.push_back(h.format(g));
        return out;
    }, py::arg("group"), py::arg("proper_only") = true);

    m.def("qp_count", &qp_count, py::arg("n"));

    m.def("poset_json", [](const std::string& group) { return poset_to_json(build_B_poset(GroupDesc::parse(group))).dump(); },
          py::arg("group"));
    m.def("poset_dot", [](const std::string& group) { return poset_to_dot(build_B_poset(GroupDesc::parse(group))); },
          py::arg("group"));

    m.def("normalize", [](const std::string& group, const std::string& element) {
        const auto g = GroupDesc::parse(group);
        return format_element(parse_element(element, g), g);
    }, py::arg("group"), py::arg("element"));

    m.def("multiply", [](const std::string& group, const std::string& x, const std::string& y) {
        const auto g = GroupDesc::parse(group);
        return format_element(elem_mul(parse_element(x, g), parse_element(y, g), g), g);
    }, py::arg("group"), py::arg("x"), py::arg("y"));

    m.def("inverse", [](const std::string& group, const std::string& x) {
        const auto g = GroupDesc::parse(group);
        return format_element(elem_inv(parse_element(x, g), g), g);
    }, py::arg("group"), py::arg("x"));

    m.def("busemann", [](const std::string& group, const std::string& x) {
        return busemann(parse_element(x, GroupDesc::parse(group)));
    }, py::arg("group"), py::arg("element"));

    m.def("wordlen", [](const std::string& group, const std::string& structure, const std::string& element) {
        const auto g = GroupDesc::parse(group);
        return wordlen(parse_element(element, g), GenSetDesc::parse(structure, g), g);
    }, py::arg("group"), py::arg("structure"), py::arg("element"));

    m.def("plan_json", [](const std::string& group, const std::string& structure, const std::string& element) {
        const auto g = GroupDesc::parse(group);
        return plan_to_json(plan(parse_element(element, g), GenSetDesc::parse(structure, g), g), g).dump();
    }, py::arg("group"), py::arg("structure"), py::arg("element"));

    m.def("bfs_wordlen", [](const std::string& group, const std::string& structure, const std::string& element,
                            int window, int cursor_bound) {
        const auto g = GroupDesc::parse(group);
        py::gil_scoped_release release;
        return bfs_wordlen(parse_element(element, g), GenSetDesc::parse(structure, g), window, cursor_bound, g);
    }, py::arg("group"), py::arg("structure"), py::arg("element"), py::arg("window"), py::arg("cursor_bound"));

    m.def("compare_json", [](const std::string& group, const std::string& x, const std::string& y, int window,
                             int depth) {
        const auto g = GroupDesc::parse(group);
        return empirical_to_json(compare_empirical(GenSetDesc::parse(x, g), GenSetDesc::parse(y, g), g, window, depth))
            .dump();
    }, py::arg("group"), py::arg("x"), py::arg("y"), py::arg("window") = 3, py::arg("depth") = 20);

    m.def("delta_json", [](const std::string& group, const std::string& structure, std::int64_t radius,
                           std::int64_t samples, std::uint64_t seed) {
        const auto g = GroupDesc::parse(group);
        return delta_to_json(delta_four_point(GenSetDesc::parse(structure, g), g, radius, samples, seed)).dump();
    }, py::arg("group"), py::arg("structure"), py::arg("radius"), py::arg("samples") = 2000, py::arg("seed") = 0);

    m.def("qspec_json", [](const std::string& q) { return qspec_to_json(load_qspec(q)).dump(); }, py::arg("qspec"));

    m.def("contains", [](const std::string& q, const std::string& poly) {
        const QSpec spec = load_qspec(q);
        return q_membership(parse_poly(poly, spec.group()), spec);
    }, py::arg("qspec"), py::arg("config"));

    m.def("check_json", [](const std::string& q, const std::string& direction, int window, int n0_max,
                           std::uint64_t seed) {
        const QSpec spec = load_qspec(q);
        ConfiningOptions opt;
        opt.window = window;
        opt.n0_max = n0_max;
        opt.seed = seed;
        return report_to_json(check_confining(spec, parse_direction(direction), opt), spec).dump();
    }, py::arg("qspec"), py::arg("direction") = "t", py::arg("window") = 4, py::arg("n0_max") = 4,
       py::arg("seed") = 0);

    m.def("saturate_json", [](const std::string& q, int window, std::int64_t iteration_cap) {
        const QSpec spec = load_qspec(q);
        SaturationOptions opt;
        opt.window = window;
        opt.iteration_cap = iteration_cap;
        return saturation_to_json(saturate(spec, opt), spec.group()).dump();
    }, py::arg("qspec"), py::arg("window") = 4, py::arg("iteration_cap") = 20000);

    m.def("recover_json", [](const std::string& q, int window, int depth) {
        const QSpec spec = load_qspec(q);
        return recovery_to_json(recover_subgroup(spec, window, depth), spec).dump();
    }, py::arg("qspec"), py::arg("window") = 8, py::arg("depth") = -1);

    m.def("validate_json", [](const std::string& q, const std::string& subgroup, int depth) {
        const QSpec spec = load_qspec(q);
        const auto h = parse_subgroup(subgroup, spec.group());
        return validation_to_json(validate_equivalence(spec, h, depth), h, spec).dump();
    }, py::arg("qspec"), py::arg("subgroup"), py::arg("depth") = 20);
}
