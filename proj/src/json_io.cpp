#include "wreathscope/json_io.hpp"

#include "wreathscope/errors.hpp"
#include "wreathscope/poly.hpp"

namespace wreathscope {

namespace {

Json opt_poly(const std::optional<LampConfig>& f, const GroupDesc& g) {
    return f ? Json(format_poly(*f, g)) : Json(nullptr);
}

std::string side_name(Side s) { return s == Side::plus ? "plus" : "minus"; }

}  // namespace

Json poset_to_json(const Poset& poset) {
    Json nodes = Json::array();
    for (const auto& n : poset.nodes) {
        Json node;
        node["id"] = n.id;
        node["kind"] = to_string(n.kind);
        if (n.descriptor.is_qp()) {
            node["subgroup"] = n.descriptor.subgroup->format(poset.group);
            node["side"] = side_name(n.descriptor.side());
        } else {
            node["subgroup"] = nullptr;
            node["side"] = nullptr;
        }
        nodes.push_back(std::move(node));
    }
    Json hasse = Json::array();
    for (auto [a, b] : poset.hasse) hasse.push_back({a, b});
    Json out;
    out["group"] = poset.group.name();
    out["nodes"] = std::move(nodes);
    out["hasse"] = std::move(hasse);
    return out;
}

Json plan_to_json(const WalkPlan& plan, const GroupDesc& g) {
    Json bursts = Json::array();
    for (const auto& b : plan.bursts)
        bursts.push_back({{"step", b.step}, {"at", plan.visits[b.step]}, {"generator", format_element(b.generator, g)}});
    return {{"cost", plan.cost}, {"visits", plan.visits}, {"bursts", std::move(bursts)}};
}

Json delta_to_json(const DeltaEstimate& est) {
    return {{"radius", est.radius},
            {"samples", est.samples},
            {"seed", est.seed},
            {"twice_delta", est.twice_delta},
            {"delta", est.value()},
            {"kind", "estimate"}};
}

Json empirical_to_json(const EmpiricalReport& report) {
    auto side = [](const SupEvidence& e) {
        Json j;
        j["status"] = e.bounded ? "bounded" : "growing";
        j["sup"] = e.value;
        j["sequence"] = e.sequence;
        return j;
    };
    Json out;
    out["window"] = report.window;
    out["depth"] = report.depth;
    out["sup_x_in_y"] = side(report.sup_x_in_y);
    out["sup_y_in_x"] = side(report.sup_y_in_x);
    out["note"] = "bounded up to depth " + std::to_string(report.depth);
    return out;
}

Json qspec_to_json(const QSpec& q) {
    const GroupDesc& g = q.group();
    Json out;
    Json params = Json::object();
    switch (q.kind()) {
        case QSpec::Kind::qh:
            out["kind"] = "qh";
            params["subgroup"] = q.subgroup()->format(g);
            params["side"] = q.mirrored() ? "minus" : "plus";
            break;
        case QSpec::Kind::bplus: out["kind"] = q.mirrored() ? "bminus" : "bplus"; break;
        case QSpec::Kind::fullbase: out["kind"] = "fullbase"; break;
        case QSpec::Kind::span_family:
            out["kind"] = "span_family";
            params["family"] = q.family_name();
            params["horizon_margin"] = q.horizon_margin();
            break;
        case QSpec::Kind::custom: {
            out["kind"] = "custom";
            Json configs = Json::array();
            for (const auto& f : q.custom_family().configs) configs.push_back(format_poly(f, g));
            params["configs"] = std::move(configs);
            params["shift_closed"] = q.custom_family().shift_closed;
            params["sum_closed"] = q.custom_family().sum_closed;
            params["bplus_closed"] = q.custom_family().bplus_closed;
            params["horizon_margin"] = q.horizon_margin();
            break;
        }
        case QSpec::Kind::predicate: out["kind"] = "predicate"; break;
    }
    if (q.kind() != QSpec::Kind::qh && q.kind() != QSpec::Kind::bplus) params["mirrored"] = q.mirrored();
    out["group"] = g.name();
    out["params"] = std::move(params);
    return out;
}

QSpec qspec_from_json(const Json& j) {
    try {
        if (!j.is_object()) throw ParseError("QSpec must be a JSON object", 0);
        const std::string kind = j.at("kind").get<std::string>();
        const GroupDesc g = GroupDesc::parse(j.at("group").get<std::string>());
        const Json params = j.contains("params") ? j.at("params") : Json::object();
        if (!params.is_object()) throw ParseError("QSpec params must be an object", 0);
        const bool mirrored = params.value("mirrored", false);
        std::optional<QSpec> q;
        if (kind == "qh") {
            std::string side = params.value("side", "plus");
            if (side != "plus" && side != "minus") throw ParseError("qh side must be plus or minus", 0);
            q = QSpec::qh(g, parse_subgroup(params.value("subgroup", "{}"), g),
                          side == "minus" ? Side::minus : Side::plus);
        } else if (kind == "bplus") {
            q = QSpec::bplus(g);
        } else if (kind == "bminus") {
            q = QSpec::bminus(g);
        } else if (kind == "fullbase") {
            q = QSpec::fullbase(g);
        } else if (kind == "span_family" || kind == "counterexample") {
            q = QSpec::span_family(g, params.value("family", kind == "counterexample" ? "counterexample" : ""));
        } else if (kind == "custom") {
            QSpec::CustomFamily fam;
            for (const auto& text : params.at("configs")) fam.configs.push_back(parse_poly(text.get<std::string>(), g));
            fam.shift_closed = params.value("shift_closed", false);
            fam.sum_closed = params.value("sum_closed", false);
            fam.bplus_closed = params.value("bplus_closed", false);
            q = QSpec::custom(g, std::move(fam));
        } else {
            throw ParseError("unknown QSpec kind '" + kind + "'", 0);
        }
        if (params.contains("horizon_margin")) {
            int m = params.at("horizon_margin").get<int>();
            if (m < 0) throw ParseError("horizon_margin must be >= 0", 0);
            q->set_horizon_margin(m);
        }
        if (mirrored && kind != "qh" && kind != "bminus") q = q->mirror();
        return *q;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed QSpec: ") + e.what(), 0);
    }
}

Json report_to_json(const ConfiningReport& r, const QSpec& q) {
    const GroupDesc& g = q.group();
    Json out;
    out["qspec"] = q.name();
    out["direction"] = to_string(r.direction);
    out["window"] = r.window;
    out["mode"] = r.mode;
    out["cond_a"] = {{"pass", r.cond_a},
                     {"strictness_witness", opt_poly(r.strictness_witness, g)},
                     {"counterexample", opt_poly(r.cond_a_counterexample, g)}};
    out["cond_b"] = {{"pass", r.cond_b}, {"max_n", r.max_n}, {"counterexample", opt_poly(r.cond_b_counterexample, g)}};
    Json c = {{"pass", r.cond_c}, {"n0", r.n0 ? Json(*r.n0) : Json(nullptr)}};
    if (r.cond_c_counterexample)
        c["counterexample"] = {format_poly(r.cond_c_counterexample->first, g),
                               format_poly(r.cond_c_counterexample->second, g)};
    else
        c["counterexample"] = nullptr;
    out["cond_c"] = std::move(c);
    out["verdict"] = to_string(r.verdict);
    out["lineal"] = r.lineal();
    return out;
}

Json saturation_to_json(const SaturationState& s, const GroupDesc& g) {
    Json known = Json::array();
    for (const auto& f : s.known) known.push_back(format_poly(f, g));
    Json trace = Json::array();
    for (const auto& t : s.trace) trace.push_back({{"rule", t.rule}, {"from", t.from}, {"result", t.result}});
    Json lamps = Json::array();
    for (const auto& [p, cs] : s.lamps) {
        Json values = Json::array();
        for (const auto& c : cs) values.push_back(g.format(c));
        lamps.push_back({{"position", p}, {"coefficients", std::move(values)}});
    }
    Json out;
    out["window"] = s.window;
    out["n0"] = s.n0;
    out["iterations"] = s.iterations;
    out["partial"] = s.partial;
    out["sound"] = s.sound;
    out["known"] = std::move(known);
    out["lamps"] = std::move(lamps);
    out["trace"] = std::move(trace);
    return out;
}

Json recovery_to_json(const RecoveryResult& r, const QSpec& q) {
    return {{"qspec", q.name()}, {"window", r.window},       {"depth", r.depth},
            {"subgroup", r.subgroup.format(q.group())}, {"order", r.subgroup.order()},
            {"certified", r.certified}, {"note", r.note}};
}

Json validation_to_json(const ValidationReport& r, const SubgroupDesc& h, const QSpec& q) {
    Json families = Json::array();
    for (const auto& f : r.families)
        families.push_back({{"name", f.name}, {"q_side", f.q_side}, {"h_side", f.h_side}, {"refutes", f.refutes}});
    return {{"qspec", q.name()},
            {"subgroup", h.format(q.group())},
            {"depth", r.depth},
            {"result", r.refuted ? "refuted" : "consistent"},
            {"families", std::move(families)}};
}

}  // namespace wreathscope
