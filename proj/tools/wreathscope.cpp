// wreathscope: command-line front end for the wreathscope library.
//
// Exit codes: 0 ok, 2 invalid group or bound, 3 parse error or bad QSpec,
// 4 oracle window / empty domain / precondition, 5 inconclusive verdict.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "wreathscope/confining.hpp"
#include "wreathscope/errors.hpp"
#include "wreathscope/json_io.hpp"
#include "wreathscope/poly.hpp"
#include "wreathscope/structures.hpp"

using namespace wreathscope;

namespace {

enum Exit { kOk = 0, kGroup = 2, kParse = 3, kWindow = 4, kInconclusive = 5 };

struct ExitWith {
    int code;
    std::string message;
};

struct RunConfig {
    std::string group;
    int window = -1;
    int cursor_bound = -1;
    std::uint64_t seed = 0;
    std::string format = "json";
    int n0_max = 4;
    std::int64_t iter_cap = 20000;
};

GroupDesc load_group(const std::string& text) {
    if (text.empty()) throw ExitWith{kGroup, "no group given (use --group or a positional group)"};
    try {
        return GroupDesc::parse(text);
    } catch (const Error& e) {
        throw ExitWith{kGroup, std::string("invalid group: ") + e.what()};
    }
}

// Positionals are [group] args...; --group takes precedence over a positional group.
GroupDesc take_group(RunConfig& cfg, std::vector<std::string>& pos, std::size_t needed) {
    if (cfg.group.empty()) {
        if (pos.size() < needed + 1) throw ExitWith{kParse, "missing positional arguments"};
        cfg.group = pos.front();
        pos.erase(pos.begin());
    }
    if (pos.size() != needed) throw ExitWith{kParse, "expected " + std::to_string(needed) + " positional arguments"};
    return load_group(cfg.group);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_poset(RunConfig& cfg, std::vector<std::string> pos) {
    GroupDesc g = take_group(cfg, pos, 0);
    Poset p = build_B_poset(g);
    const auto qp = p.count(StructureKind::quasi_parabolic);
    std::ostringstream summary;
    summary << "group " << g.name() << ": " << p.nodes.size() << " nodes, " << p.count(StructureKind::elliptic)
            << " elliptic, " << p.count(StructureKind::lineal) << " lineal, " << qp << " quasi-parabolic\n";
    if (g.single_factor()) {
        auto expected = qp_count(g.order());
        summary << "qp_count(" << g.order() << ") = " << expected << (expected == static_cast<std::int64_t>(qp) ? " (match)" : " (MISMATCH)") << "\n";
    } else if (!g.is_cyclic()) {
        summary << "warning: B(G) is a proper subset of H(G wr Z) for this group\n";
    }
    if (cfg.format == "dot") {
        std::cout << poset_to_dot(p);
        std::cerr << summary.str();
    } else if (cfg.format == "text") {
        std::cout << summary.str();
        for (const auto& n : p.nodes) std::cout << "  " << n.id << "  " << to_string(n.kind) << "  " << node_label(n, g) << "\n";
        for (auto [a, b] : p.hasse) std::cout << "  " << a << " < " << b << "\n";
    } else {
        emit(poset_to_json(p));
        std::cerr << summary.str();
    }
    return kOk;
}

int cmd_wordlen(RunConfig& cfg, std::vector<std::string> pos, bool oracle) {
    GroupDesc g = take_group(cfg, pos, 2);
    GenSetDesc gens = GenSetDesc::parse(pos[0], g);
    Element x = parse_element(pos[1], g);
    std::int64_t len = wordlen(x, gens, g);
    WalkPlan pl = plan(x, gens, g);
    Json out;
    out["group"] = g.name();
    out["structure"] = gens.name(g);
    out["element"] = format_element(x, g);
    out["length"] = len;
    out["plan"] = plan_to_json(pl, g);
    if (oracle) {
        const LampConfig lamps = x.lamps();
        int reach = 0;
        if (!lamps.empty()) reach = static_cast<int>(std::max(-lamps.min_position(), lamps.max_position()));
        int w = cfg.window >= 0 ? cfg.window : std::max(reach, 1);
        int wc = cfg.cursor_bound >= 0 ? cfg.cursor_bound : w + 2 + static_cast<int>(std::abs(x.shift));
        BfsOracle o(g, gens, w, wc);
        auto d = o.distance(x);
        out["oracle"] = {{"window", w},
                         {"cursor_bound", wc},
                         {"states", o.state_count()},
                         {"length", d ? Json(*d) : Json("unreachable-in-window")},
                         {"agrees", d && *d == len}};
    }
    if (cfg.format == "text") {
        std::cout << len << "\n";
        std::cout << "visits:";
        for (auto v : pl.visits) std::cout << " " << v;
        std::cout << "\n";
        for (const auto& b : pl.bursts)
            std::cout << "burst at " << pl.visits[b.step] << ": " << format_element(b.generator, g) << "\n";
        if (oracle) std::cout << "oracle: " << out["oracle"]["length"].dump() << "\n";
    } else {
        emit(out);
    }
    return kOk;
}

int cmd_compare(RunConfig& cfg, std::vector<std::string> pos, int depth) {
    GroupDesc g = take_group(cfg, pos, 2);
    GenSetDesc x = GenSetDesc::parse(pos[0], g);
    GenSetDesc y = GenSetDesc::parse(pos[1], g);
    int w = cfg.window >= 0 ? cfg.window : 3;
    EmpiricalReport rep = compare_empirical(x, y, g, w, depth);
    Json out;
    out["group"] = g.name();
    out["x"] = x.name(g);
    out["y"] = y.name(g);
    out["empirical"] = empirical_to_json(rep);
    // Exact relation when both structures are nodes of B(G).
    Poset p = build_B_poset(g);
    auto find = [&](const GenSetDesc& d) -> int {
        for (const auto& n : p.nodes)
            if (n.descriptor.name(g) == d.name(g)) return n.id;
        return -1;
    };
    int ix = find(x), iy = find(y);
    if (ix >= 0 && iy >= 0) {
        out["exact"] = to_string(compare_exact(p, ix, iy));
        out["exact_scope"] = g.is_cyclic() ? "complete" : "within B(G) only";
    } else {
        out["exact"] = nullptr;
    }
    if (cfg.format == "text") {
        std::cout << "sup_{s in X} |s|_Y: " << out["empirical"]["sup_x_in_y"]["status"].get<std::string>() << " "
                  << rep.sup_x_in_y.value << "\n";
        std::cout << "sup_{s in Y} |s|_X: " << out["empirical"]["sup_y_in_x"]["status"].get<std::string>() << " "
                  << rep.sup_y_in_x.value << "\n";
        if (!out["exact"].is_null()) std::cout << "exact: " << out["exact"].get<std::string>() << "\n";
    } else {
        emit(out);
    }
    return kOk;
}

QSpec load_qspec(const std::string& builtin, const std::string& file) {
    try {
        if (!builtin.empty() && !file.empty()) throw ExitWith{kParse, "give either --builtin or --qspec"};
        if (!builtin.empty()) return QSpec::builtin(builtin);
        if (file.empty()) throw ExitWith{kParse, "no QSpec given (use --builtin NAME or --qspec FILE)"};
        std::ifstream in(file);
        if (!in) throw ExitWith{kParse, "cannot open " + file};
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ExitWith{kParse, std::string("invalid JSON: ") + e.what()};
        }
        return qspec_from_json(j);
    } catch (const Error& e) {
        throw ExitWith{kParse, std::string("bad QSpec: ") + e.what()};
    }
}

struct ConfiningArgs {
    std::string builtin, file, direction = "t", subgroup;
    int depth = -1;
    int validate_depth = 20;
};

int cmd_confining(const std::string& sub, RunConfig& cfg, const ConfiningArgs& a) {
    QSpec q = load_qspec(a.builtin, a.file);
    if (!cfg.group.empty() && !(load_group(cfg.group) == q.group()))
        throw ExitWith{kGroup, "--group does not match the QSpec group " + q.group().name()};
    const int w = cfg.window >= 0 ? cfg.window : (sub == "recover" ? 8 : 4);
    if (a.direction != "t" && a.direction != "t^-1" && a.direction != "tinv")
        throw ExitWith{kParse, "direction must be t or t^-1"};
    const bool inverse = a.direction != "t";
    if (sub == "check") {
        ConfiningOptions o;
        o.window = w;
        o.n0_max = cfg.n0_max;
        o.seed = cfg.seed;
        auto r = check_confining(q, inverse ? Direction::t_inv : Direction::t, o);
        emit(report_to_json(r, q));
        return r.verdict == Verdict::inconclusive ? kInconclusive : kOk;
    }
    // The remaining subcommands work in t orientation; t^-1 mirrors first.
    const QSpec qq = inverse ? q.mirror() : q;
    if (sub == "recover") {
        emit(recovery_to_json(recover_subgroup(qq, w, a.depth, cfg.iter_cap), qq));
        return kOk;
    }
    if (sub == "saturate") {
        SaturationOptions o;
        o.window = w;
        o.iteration_cap = cfg.iter_cap;
        emit(saturation_to_json(saturate(qq, o), qq.group()));
        return kOk;
    }
    // validate
    if (a.subgroup.empty()) throw ExitWith{kParse, "validate needs --subgroup {g1,...}"};
    SubgroupDesc h = parse_subgroup(a.subgroup, qq.group());
    emit(validation_to_json(validate_equivalence(qq, h, a.validate_depth), h, qq));
    return kOk;
}

std::vector<std::int64_t> parse_radii(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument("radius");
            out.push_back(v);
        } catch (const std::exception&) {
            throw ExitWith{kParse, "radii must be a comma-separated list of nonnegative integers"};
        }
    }
    if (out.empty()) throw ExitWith{kParse, "no radii given"};
    return out;
}

int cmd_delta(RunConfig& cfg, std::vector<std::string> pos, const std::string& radii, std::int64_t samples) {
    GroupDesc g = take_group(cfg, pos, 1);
    GenSetDesc gens = GenSetDesc::parse(pos[0], g);
    Json rows = Json::array();
    std::vector<DeltaEstimate> ests;
    for (auto r : parse_radii(radii)) {
        ests.push_back(delta_four_point(gens, g, r, samples, cfg.seed));
        rows.push_back(delta_to_json(ests.back()));
    }
    if (cfg.format == "text") {
        std::cout << "radius  samples  delta (estimate)\n";
        for (const auto& e : ests)
            std::cout << std::setw(6) << e.radius << "  " << std::setw(7) << e.samples << "  " << std::fixed
                      << std::setprecision(1) << e.value() << "\n";
    } else {
        emit({{"group", g.name()}, {"structure", gens.name(g)}, {"estimates", std::move(rows)}});
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic structures on wreath products G wr Z"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--group", cfg.group, "coefficient group, e.g. Z12 or Z2xZ2");
    app.add_option("--window", cfg.window, "lamp window W")->check(CLI::NonNegativeNumber);
    app.add_option("--cursor-bound", cfg.cursor_bound, "cursor bound W' for the BFS oracle")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", cfg.seed, "64-bit seed");
    app.add_option("--format", cfg.format, "json | dot | text")->check(CLI::IsMember({"json", "dot", "text"}));
    app.add_option("--n0-max", cfg.n0_max, "largest n0 tried for condition (c)")->check(CLI::NonNegativeNumber);
    app.add_option("--iter-cap", cfg.iter_cap, "saturation iteration cap")->check(CLI::PositiveNumber);

    std::vector<std::string> pos;
    auto* poset = app.add_subcommand("poset", "emit the poset B(G)");
    poset->add_option("args", pos, "[group]");

    bool oracle = false;
    auto* wl = app.add_subcommand("wordlen", "word length with a replayable witness");
    wl->add_option("args", pos, "[group] structure element")->required();
    wl->add_flag("--oracle", oracle, "cross-check with the BFS oracle");

    int depth = 20;
    auto* cmp = app.add_subcommand("compare", "empirical and exact comparison of two structures");
    cmp->add_option("args", pos, "[group] X Y")->required();
    cmp->add_option("--depth", depth, "witness family depth N")->check(CLI::Range(2, 10000));

    ConfiningArgs ca;
    auto* conf = app.add_subcommand("confining", "confining-subset checks");
    conf->require_subcommand(1);
    for (const char* name : {"check", "recover", "validate", "saturate"}) {
        auto* s = conf->add_subcommand(name);
        s->add_option("--builtin", ca.builtin, "qh:Z4:{2}, qh-:Z4:{2}, bplus:Z2, bminus:Z2, fullbase:Z3, counterexample, z8example");
        s->add_option("--qspec", ca.file, "QSpec JSON file");
        s->add_option("--direction", ca.direction, "t or t^-1");
        if (std::string(name) == "recover") s->add_option("--depth", ca.depth, "depth threshold D (default ceil(W/2))");
        if (std::string(name) == "validate") {
            s->add_option("--subgroup", ca.subgroup, "H as {g1,...}")->required();
            s->add_option("--depth", ca.validate_depth, "family depth N")->check(CLI::Range(2, 10000));
        }
    }

    std::string radii = "6,10,14";
    std::int64_t samples = 2000;
    auto* delta = app.add_subcommand("delta", "four-point delta estimates");
    delta->add_option("args", pos, "[group] structure")->required();
    delta->add_option("--radii", radii, "comma-separated radii");
    delta->add_option("--samples", samples, "quadruples per radius")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*poset) return cmd_poset(cfg, pos);
        if (*wl) return cmd_wordlen(cfg, pos, oracle);
        if (*cmp) return cmd_compare(cfg, pos, depth);
        if (*delta) return cmd_delta(cfg, pos, radii, samples);
        for (auto* s : conf->get_subcommands())
            if (*s) return cmd_confining(s->get_name(), cfg, ca);
    } catch (const ExitWith& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kGroup;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const GroupMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const WindowExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kWindow;
    } catch (const PreconditionViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kWindow;
    }
    return kOk;
}
