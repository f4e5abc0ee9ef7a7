#include "wreathscope/structures.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wreathscope/errors.hpp"

namespace wreathscope {

std::vector<SubgroupDesc> enumerate_subgroups(const GroupDesc& g, bool proper_only) {
    // Every subgroup is reached from {0} by repeatedly adjoining one element.
    std::set<std::vector<Coeff>> seen;
    std::vector<SubgroupDesc> out;
    std::vector<SubgroupDesc> frontier{subgroup_closure({}, g)};
    seen.insert(frontier.front().elements());
    const auto all = g.elements();
    while (!frontier.empty()) {
        std::vector<SubgroupDesc> next;
        for (const auto& s : frontier) {
            out.push_back(s);
            for (const auto& c : all) {
                if (s.contains(c)) continue;
                std::vector<Coeff> gens = s.generators();
                gens.push_back(c);
                SubgroupDesc bigger = subgroup_closure(gens, g);
                if (seen.insert(bigger.elements()).second) next.push_back(std::move(bigger));
            }
        }
        frontier = std::move(next);
    }
    if (proper_only)
        std::erase_if(out, [&](const SubgroupDesc& s) { return s.order() == g.order(); });
    std::sort(out.begin(), out.end(), [](const SubgroupDesc& a, const SubgroupDesc& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements() < b.elements();
    });
    return out;
}

std::string to_string(StructureKind kind) {
    switch (kind) {
        case StructureKind::elliptic: return "elliptic";
        case StructureKind::lineal: return "lineal";
        case StructureKind::quasi_parabolic: return "quasi-parabolic";
        case StructureKind::general_type: return "general-type";
    }
    return "?";
}

bool Poset::less(int a, int b) const {
    return std::binary_search(relation.begin(), relation.end(), std::make_pair(a, b));
}

std::size_t Poset::count(StructureKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [&](const StructureNode& n) { return n.kind == kind; }));
}

Poset build_B_poset(const GroupDesc& g) {
    Poset p{g, {}, {}, {}};
    p.nodes.push_back({0, StructureKind::elliptic, GenSetDesc::trivial()});
    p.nodes.push_back({1, StructureKind::lineal, GenSetDesc::lineal()});
    const auto subs = enumerate_subgroups(g, true);
    for (Side side : {Side::plus, Side::minus})
        for (const auto& h : subs)
            p.nodes.push_back({static_cast<int>(p.nodes.size()), StructureKind::quasi_parabolic, GenSetDesc::qp(h, side)});

    p.relation.emplace_back(0, 1);
    for (std::size_t i = 2; i < p.nodes.size(); ++i) {
        p.relation.emplace_back(0, static_cast<int>(i));
        p.relation.emplace_back(1, static_cast<int>(i));
    }
    // Inside one copy the order is reversed inclusion.
    for (std::size_t a = 2; a < p.nodes.size(); ++a)
        for (std::size_t b = 2; b < p.nodes.size(); ++b) {
            const auto& x = p.nodes[a].descriptor;
            const auto& y = p.nodes[b].descriptor;
            if (a == b || x.side() != y.side()) continue;
            if (y.subgroup->is_subset_of(*x.subgroup) && !(*x.subgroup == *y.subgroup))
                p.relation.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    std::sort(p.relation.begin(), p.relation.end());
    p.hasse = transitive_reduction(p.nodes.size(), p.relation);
    return p;
}

std::vector<std::pair<int, int>> transitive_reduction(std::size_t n, const std::vector<std::pair<int, int>>& relation) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (auto [a, b] : relation) r[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    std::vector<std::pair<int, int>> out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!r[a][b]) continue;
            bool covered = true;
            for (std::size_t c = 0; c < n && covered; ++c)
                if (r[a][c] && r[c][b]) covered = false;
            if (covered) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    return out;
}

std::string to_string(Comparison c) {
    switch (c) {
        case Comparison::equivalent: return "equivalent";
        case Comparison::x_below_y: return "x<y";
        case Comparison::y_below_x: return "y<x";
        case Comparison::incomparable: return "incomparable";
    }
    return "?";
}

Comparison compare_exact(const Poset& poset, int x, int y) {
    const int n = static_cast<int>(poset.nodes.size());
    if (x < 0 || y < 0 || x >= n || y >= n) throw PreconditionViolated("node id not in poset");
    if (x == y) return Comparison::equivalent;
    if (poset.less(x, y)) return Comparison::x_below_y;
    if (poset.less(y, x)) return Comparison::y_below_x;
    return Comparison::incomparable;
}

namespace {

// Elements of X at the far end of the schedule: single lamps at -i and +i
// that belong to X, and t^{+-i} when X is the whole group.
std::vector<Element> family_members(const GenSetDesc& x, const GroupDesc& g, std::int64_t i) {
    std::vector<Element> out;
    if (x.variant == GenSetDesc::Variant::standard) return out;
    for (const auto& c : g.elements()) {
        if (c.is_zero()) continue;
        for (std::int64_t p : {-i, i}) {
            LampConfig f = LampConfig::single(p, c);
            if (x.base_contains(f, g)) out.push_back(Element::base(f));
        }
    }
    if (x.variant == GenSetDesc::Variant::trivial) {
        out.push_back(Element::t_power(i));
        out.push_back(Element::t_power(-i));
    }
    return out;
}

std::int64_t window_generator_sup(const GenSetDesc& x, const GenSetDesc& y, const GroupDesc& g, int window) {
    std::int64_t best = wordlen(Element::t_power(1), y, g);
    const auto elems = g.elements();
    const int width = 2 * window + 1;
    // Exhaustive while the window is small; beyond that only single lamps.
    double total = 1;
    for (int i = 0; i < width; ++i) total *= static_cast<double>(elems.size());
    if (total <= 1e6) {
        std::vector<std::size_t> digits(static_cast<std::size_t>(width), 0);
        while (true) {
            LampConfig f;
            for (int i = 0; i < width; ++i) f.set(i - window, elems[digits[static_cast<std::size_t>(i)]]);
            if (x.base_contains(f, g)) best = std::max(best, wordlen(Element::base(f), y, g));
            int i = 0;
            for (; i < width; ++i) {
                auto ui = static_cast<std::size_t>(i);
                if (++digits[ui] < elems.size()) break;
                digits[ui] = 0;
            }
            if (i == width) break;
        }
    } else {
        for (int p = -window; p <= window; ++p)
            for (const auto& c : elems) {
                LampConfig f = LampConfig::single(p, c);
                if (x.base_contains(f, g)) best = std::max(best, wordlen(Element::base(f), y, g));
            }
    }
    return best;
}

SupEvidence sup_evidence(const GenSetDesc& x, const GenSetDesc& y, const GroupDesc& g, int window, int depth) {
    SupEvidence ev;
    const std::int64_t base = window_generator_sup(x, y, g, window);
    std::int64_t first_half = base;
    std::int64_t overall = base;
    for (int i = 1; i <= depth; ++i) {
        std::int64_t m = 0;
        for (const auto& s : family_members(x, g, i)) m = std::max(m, wordlen(s, y, g));
        ev.sequence.push_back(m);
        overall = std::max(overall, m);
        if (i <= depth / 2) first_half = std::max(first_half, m);
    }
    ev.bounded = overall == first_half;
    ev.value = overall;
    return ev;
}

}  // namespace

EmpiricalReport compare_empirical(const GenSetDesc& x, const GenSetDesc& y, const GroupDesc& g, int window,
                                  int depth) {
    if (window < 0 || depth < 2) throw PreconditionViolated("compare needs window >= 0 and depth >= 2");
    return {sup_evidence(x, y, g, window, depth), sup_evidence(y, x, g, window, depth), window, depth};
}

std::int64_t qp_count(std::int64_t n) {
    if (n < 2) throw PreconditionViolated("qp_count needs n >= 2");
    std::int64_t divisors = 0;
    for (std::int64_t d = 1; d < n; ++d)
        if (n % d == 0) ++divisors;
    return 2 * divisors;
}

std::string node_label(const StructureNode& node, const GroupDesc& g) {
    switch (node.kind) {
        case StructureKind::elliptic: return "elliptic";
        case StructureKind::lineal: return "lineal";
        default: return node.descriptor.name(g);
    }
}

std::string poset_to_dot(const Poset& poset) {
    std::ostringstream out;
    out << "digraph B {\n  rankdir=BT;\n";
    for (const auto& n : poset.nodes)
        out << "  n" << n.id << " [label=\"" << to_string(n.kind) << "\\n" << node_label(n, poset.group) << "\"];\n";
    for (auto [a, b] : poset.hasse) out << "  n" << a << " -> n" << b << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace wreathscope
