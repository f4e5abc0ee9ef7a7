// Runs the eight acceptance criteria and prints one line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"
#include "wreathscope/confining.hpp"
#include "wreathscope/metrics.hpp"
#include "wreathscope/structures.hpp"

using namespace wreathscope;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (pass) detail << "FAILED: " << why << "; ";
        pass = false;
    }
};

GroupDesc Z(int n) { return GroupDesc({n}); }

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Generator d of a subgroup of Z_n (n for the trivial subgroup).
int generator_of(const SubgroupDesc& h, int n) { return h.is_trivial() ? n : n / h.order(); }

void poset_counts(Outcome& out) {
    const std::vector<std::pair<int, std::size_t>> expect{{2, 2}, {3, 2}, {4, 4}, {6, 6}, {12, 10}};
    for (auto [n, qp] : expect) {
        const Poset p = build_B_poset(Z(n));
        const auto got = p.count(StructureKind::quasi_parabolic);
        out.detail << "Z" << n << ":" << got << " ";
        if (got != qp) out.fail("qp count for Z" + std::to_string(n));
        if (p.count(StructureKind::lineal) != 1 || p.count(StructureKind::elliptic) != 1)
            out.fail("lineal/elliptic count for Z" + std::to_string(n));
        if (static_cast<std::int64_t>(got) != qp_count(n)) out.fail("qp_count disagrees");

        // Expected covering pairs from divisor arithmetic: elliptic < lineal;
        // lineal < Q(<p>) for primes p | n; Q(<d>) < Q(<e>) when e/d is prime.
        std::set<std::pair<int, int>> expected;
        expected.insert({0, 1});
        for (const auto& x : p.nodes) {
            if (!x.descriptor.is_qp()) continue;
            const int dx = generator_of(*x.descriptor.subgroup, n);
            if (is_prime(dx)) expected.insert({1, x.id});
            for (const auto& y : p.nodes) {
                if (!y.descriptor.is_qp() || y.descriptor.side() != x.descriptor.side()) continue;
                const int dy = generator_of(*y.descriptor.subgroup, n);
                if (dy % dx == 0 && is_prime(dy / dx)) expected.insert({x.id, y.id});
            }
        }
        const std::set<std::pair<int, int>> hasse(p.hasse.begin(), p.hasse.end());
        if (hasse != expected) out.fail("Hasse diagram shape for Z" + std::to_string(n));
    }
}

void oracle_equivalence(Outcome& out) {
    constexpr int W = 3, R = 2, WC = W + R;
    std::size_t compared = 0;
    for (int n : {2, 3}) {
        const auto g = Z(n);
        std::vector<GenSetDesc> sets{GenSetDesc::standard(), GenSetDesc::lineal(), GenSetDesc::trivial()};
        for (const auto& h : enumerate_subgroups(g, false)) {
            sets.push_back(GenSetDesc::qp(h, Side::plus));
            sets.push_back(GenSetDesc::qp(h, Side::minus));
        }
        // Every config on [-W, W].
        std::vector<LampConfig> configs;
        std::vector<int> digits(2 * W + 1, 0);
        while (true) {
            LampConfig f;
            for (int i = 0; i <= 2 * W; ++i) f.set(i - W, g.from_index(digits[static_cast<std::size_t>(i)]));
            configs.push_back(f);
            int i = 0;
            for (; i <= 2 * W; ++i) {
                if (++digits[static_cast<std::size_t>(i)] < n) break;
                digits[static_cast<std::size_t>(i)] = 0;
            }
            if (i > 2 * W) break;
        }
        for (const auto& s : sets) {
            const BfsOracle small(g, s, W, WC);
            const BfsOracle large(g, s, W + 1, WC + 1);
            std::size_t mismatches = 0;
            for (const auto& f : configs)
                for (int k = -R; k <= R; ++k) {
                    const Element x = Element::from_lamps(f, k);
                    const auto closed = wordlen(x, s, g);
                    const auto a = small.distance(x);
                    const auto b = large.distance(x);
                    if (!a || !b || *a != closed || *b != closed) ++mismatches;
                    ++compared;
                }
            if (mismatches) out.fail(std::to_string(mismatches) + " mismatches for " + s.name(g) + " over Z" +
                                     std::to_string(n));
        }
    }
    out.detail << compared << " elements compared at (W,W')=(3,5) and (4,6) ";
}

void witness_growth(Outcome& out) {
    std::size_t bfs_checks = 0;
    for (int n : {2, 3, 4, 6}) {
        const auto g = Z(n);
        for (const auto& h : enumerate_subgroups(g, true)) {
            Coeff outside;
            for (const auto& c : g.elements())
                if (!h.contains(c)) outside = c;
            const auto gens = GenSetDesc::qp(h, Side::plus);
            const BfsOracle oracle(g, gens, 3, 4);
            for (int i = 1; i <= 50; ++i) {
                const Element f = Element::base(LampConfig::single(-i, outside));
                if (wordlen_qp(f, h, Side::plus, g) != 2 * i + 1) out.fail("|f_i|_{S_H} != 2i+1");
                if (i <= 3) {
                    ++bfs_checks;
                    if (oracle.distance(f) != 2 * i + 1) out.fail("BFS disagrees on f_i");
                }
                for (const auto& k : enumerate_subgroups(g, false))
                    if (wordlen_qp(f, k, Side::minus, g) != 1) out.fail("|f_i|_{S'_K} != 1");
            }
        }
    }
    out.detail << "i=1..50 over Z2,Z3,Z4,Z6, " << bfs_checks << " BFS confirmations ";
}

void confining_verdicts(Outcome& out) {
    std::size_t checked = 0;
    for (int n : {2, 3, 4, 6, 8, 12}) {
        const auto g = Z(n);
        for (const auto& h : enumerate_subgroups(g, true)) {
            const auto a = check_confining(QSpec::qh(g, h), Direction::t);
            const auto b = check_confining(QSpec::qh(g, h, Side::minus), Direction::t_inv);
            for (const auto* r : {&a, &b})
                if (r->verdict != Verdict::strictly_confining || r->n0 != 0 || !r->strictness_witness)
                    out.fail("Q_H over Z" + std::to_string(n) + " H=" + h.format(g));
            checked += 2;
        }
    }
    const auto full = check_confining(QSpec::fullbase(Z(3)), Direction::t);
    if (full.verdict != Verdict::confining_not_strict || !full.lineal()) out.fail("full base not lineal");
    const GroupDesc v4({2, 2});
    for (int w = 4; w <= 10; ++w) {
        ConfiningOptions opt;
        opt.window = w;
        const auto r = check_confining(QSpec::counterexample(), Direction::t, opt);
        if (r.verdict != Verdict::strictly_confining || !r.strictness_witness)
            out.fail("counterexample at W=" + std::to_string(w));
    }
    out.detail << checked << " subgroup sets, full base lineal, counterexample W=4..10 ";
}

void recovery(Outcome& out) {
    const auto z12 = Z(12);
    double worst = 0;
    auto timed = [&](const std::function<void()>& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    };
    for (const auto& h : enumerate_subgroups(z12, true))
        timed([&] {
            const auto r = recover_subgroup(QSpec::qh(z12, h), 8);
            if (!(r.subgroup == h) || !r.certified) out.fail("Z12 H=" + h.format(z12));
        });
    timed([&] {
        const auto r = recover_subgroup(QSpec::z8_example(), 8);
        out.detail << "Z8 family H=" << r.subgroup.format(Z(8)) << (r.certified ? " certified" : " uncertified");
        if (r.subgroup.format(Z(8)) != "{2,4,6}" || !r.certified) out.fail("Z8 family");
    });
    out.detail << ", slowest case " << worst << " s ";
    if (worst >= 10) out.fail("case exceeded 10 s");
}

void refutation(Outcome& out) {
    const QSpec q = QSpec::counterexample();
    const GroupDesc v4({2, 2});
    for (const auto& h : enumerate_subgroups(v4, true)) {
        const auto r = validate_equivalence(q, h, 20);
        if (!r.refuted) out.fail("not refuted for H=" + h.format(v4));
        for (int i = 2; i <= 20; ++i) {
            LampConfig p;
            p.set(-i, v4.make({0, 1}));
            p.set(-i + 1, v4.make({1, 0}));
            if (!q.contains(p)) out.fail("p_i not in Q");
            if (wordlen_qp(Element::base(p), h, Side::plus, v4) < 2 * i - 1) out.fail("|p_i|_{S_H} too small");
        }
    }
    out.detail << "all 4 proper subgroups refuted at N=20 ";
}

void busemann_additivity(Outcome& out) {
    testing_support::Gen gen(2024);
    for (const auto& g : {Z(2), Z(3), Z(8), Z(12), GroupDesc({2, 2})})
        for (int i = 0; i < 10000; ++i) {
            const Element x = gen.element(g, 6, 20), y = gen.element(g, 6, 20);
            if (busemann(elem_mul(x, y, g)) != busemann(x) + busemann(y)) out.fail("additivity");
        }
    out.detail << "10^4 pairs over 5 groups ";
}

void delta_evidence(Outcome& out) {
    const auto g = Z(2);
    const auto qp = GenSetDesc::qp(parse_subgroup("{}", g), Side::plus);
    std::vector<double> a, b;
    for (int r : {6, 10, 14}) {
        a.push_back(delta_four_point(qp, g, r, 2000, 0).value());
        b.push_back(delta_four_point(GenSetDesc::standard(), g, r, 2000, 0).value());
    }
    out.detail << "S_H delta " << a[0] << "," << a[1] << "," << a[2] << "; standard " << b[0] << "," << b[1] << ","
               << b[2] << " ";
    if (*std::max_element(a.begin(), a.end()) - *std::min_element(a.begin(), a.end()) > 2)
        out.fail("S_H estimates vary by more than 2");
    if (!(b[0] < b[1] && b[1] < b[2])) out.fail("standard estimates not strictly increasing");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*run)(Outcome&);
        double budget;
    };
    const Criterion criteria[] = {
        {"poset counts and Hasse shape", poset_counts, 1},
        {"closed forms equal the BFS oracle", oracle_equivalence, 60},
        {"witness growth", witness_growth, 60},
        {"confining verdicts", confining_verdicts, 30},
        {"subgroup recovery", recovery, 60},
        {"counterexample refutation", refutation, 60},
        {"Busemann additivity", busemann_additivity, 60},
        {"four-point delta evidence", delta_evidence, 120},
    };
    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget) out.fail("time budget exceeded");
        std::printf("%s criterion %d (%s): %s[%.2f s]\n", out.pass ? "PASS" : "FAIL", index, c.name,
                    out.detail.str().c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
