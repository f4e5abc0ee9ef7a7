#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "wreathscope/confining.hpp"
#include "wreathscope/errors.hpp"
#include "wreathscope/structures.hpp"

using namespace wreathscope;
using testing_support::Gen;

namespace {

GroupDesc Z(int n) { return GroupDesc({n}); }

// Every config supported in [-w, w], by mixed-radix counting.
template <class F>
void for_each_window_config(const GroupDesc& g, int w, F&& f) {
    const int width = 2 * w + 1;
    std::vector<int> digits(static_cast<std::size_t>(width), 0);
    while (true) {
        LampConfig c;
        for (int i = 0; i < width; ++i) c.set(i - w, g.from_index(digits[static_cast<std::size_t>(i)]));
        f(c);
        int i = 0;
        for (; i < width; ++i) {
            if (++digits[static_cast<std::size_t>(i)] < g.order()) break;
            digits[static_cast<std::size_t>(i)] = 0;
        }
        if (i == width) return;
    }
}

bool negative_values_in(const LampConfig& f, const SubgroupDesc& h) {
    for (const auto& [p, c] : f.entries())
        if (p < 0 && !h.contains(c)) return false;
    return true;
}

LampConfig p_i(std::int64_t i) {
    const GroupDesc v4({2, 2});
    LampConfig f;
    f.set(-i, v4.make({0, 1}));
    f.set(-i + 1, v4.make({1, 0}));
    return f;
}

}  // namespace

TEST_CASE("membership for the subgroup sets matches the direct predicate") {
    struct Case {
        GroupDesc g;
        int w;
    };
    for (const Case& c : {Case{Z(2), 4}, Case{Z(3), 3}, Case{Z(4), 3}, Case{GroupDesc({2, 2}), 3}})
        for (const auto& h : enumerate_subgroups(c.g, false)) {
            const QSpec q = QSpec::qh(c.g, h);
            const QSpec qm = QSpec::qh(c.g, h, Side::minus);
            for_each_window_config(c.g, c.w, [&](const LampConfig& f) {
                REQUIRE(q_membership(f, q) == negative_values_in(f, h));
                REQUIRE(q_membership(f, qm) == negative_values_in(config_mirror(f), h));
            });
        }
}

TEST_CASE("built-in membership facts") {
    const auto z2 = Z(2);
    for (const char* name : {"qh:Z4:{2}", "qh-:Z4:{2}", "bplus:Z2", "bminus:Z2", "fullbase:Z3", "counterexample",
                             "z8example"})
        CHECK(QSpec::builtin(name).contains(LampConfig{}));
    const QSpec bp = QSpec::bplus(z2);
    CHECK(bp.contains(LampConfig::single(3, z2.make({1}))));
    CHECK_FALSE(bp.contains(LampConfig::single(-1, z2.make({1}))));
    CHECK(QSpec::bminus(z2).contains(LampConfig::single(-1, z2.make({1}))));
    CHECK(QSpec::fullbase(Z(3)).contains(LampConfig::single(-7, Z(3).make({2}))));
    CHECK_THROWS_AS(QSpec::builtin("qh:Z4:{5}"), Error);
    CHECK_THROWS_AS(QSpec::builtin("nonsense"), Error);
}

TEST_CASE("counterexample membership") {
    const QSpec q = QSpec::counterexample();
    const GroupDesc v4({2, 2});
    CHECK(q.contains(p_i(2)));
    CHECK_FALSE(q.contains(LampConfig::single(-1, v4.make({1, 0}))));
    for (int i = 2; i <= 30; ++i) {
        REQUIRE(q.contains(p_i(i)));
        REQUIRE(q.contains(config_shift(p_i(i), 1)));
        REQUIRE_FALSE(q.contains(LampConfig::single(-i, v4.make({0, 1}))));
        REQUIRE_FALSE(q.contains(LampConfig::single(-i, v4.make({1, 0}))));
        REQUIRE(q.contains(config_add(p_i(i), p_i(i + 3), v4)));
    }
    // Sum of two shifted generators cancels in the middle.
    const LampConfig s = config_add(p_i(3), config_shift(p_i(4), 1), v4);
    CHECK(q.contains(s));
}

TEST_CASE("confining verdicts for subgroup sets") {
    for (int n : {2, 3, 4, 6, 8, 12}) {
        const auto g = Z(n);
        for (const auto& h : enumerate_subgroups(g, true)) {
            CAPTURE(n);
            CAPTURE(h.format(g));
            const auto r = check_confining(QSpec::qh(g, h), Direction::t);
            REQUIRE(r.verdict == Verdict::strictly_confining);
            REQUIRE(r.n0 == 0);
            REQUIRE(r.strictness_witness.has_value());
            const auto rm = check_confining(QSpec::qh(g, h, Side::minus), Direction::t_inv);
            REQUIRE(rm.verdict == Verdict::strictly_confining);
            REQUIRE(rm.n0 == 0);
        }
    }
    const auto r = check_confining(QSpec::builtin("qh:Z4:{2}"), Direction::t);
    CHECK(format_poly(*r.strictness_witness, Z(4)) == "1");
}

TEST_CASE("full base and half bases") {
    const auto full = check_confining(QSpec::fullbase(Z(3)), Direction::t);
    CHECK(full.verdict == Verdict::confining_not_strict);
    CHECK(full.lineal());
    CHECK(check_confining(QSpec::bplus(Z(2)), Direction::t).verdict == Verdict::strictly_confining);
    // B+ is not invariant under t^-1.
    CHECK(check_confining(QSpec::bplus(Z(2)), Direction::t_inv).verdict == Verdict::not_confining);
    CHECK(check_confining(QSpec::bminus(Z(2)), Direction::t_inv).verdict == Verdict::strictly_confining);
}

TEST_CASE("finite predicate sets fail or stay inconclusive") {
    const auto z2 = Z(2);
    const QSpec tiny = QSpec::predicate(z2, "support-at-most-1", [](const LampConfig& f) { return f.size() <= 1; });
    const auto r = check_confining(tiny, Direction::t);
    CHECK(r.verdict == Verdict::not_confining);
    CHECK_FALSE(r.cond_c);
    CHECK(r.cond_c_counterexample.has_value());

    ConfiningOptions big;
    big.window = 12;
    big.sample_budget = 2000;
    const QSpec q = QSpec::predicate(Z(4), "qh-like", [](const LampConfig& f) {
        for (const auto& [p, c] : f.entries())
            if (p < 0 && c.residues[0] % 2 != 0) return false;
        return true;
    });
    const auto s = check_confining(q, Direction::t, big);
    CHECK(s.mode == "sampled");
    CHECK(s.verdict == Verdict::inconclusive);
}

TEST_CASE("mirror coherence") {
    for (const char* name : {"qh:Z4:{2}", "qh-:Z6:{3}", "bplus:Z2", "fullbase:Z3", "counterexample"}) {
        const QSpec q = QSpec::builtin(name);
        for (Direction d : {Direction::t, Direction::t_inv}) {
            const Direction other = d == Direction::t ? Direction::t_inv : Direction::t;
            const auto a = check_confining(q, d);
            const auto b = check_confining(q.mirror(), other);
            CAPTURE(name);
            REQUIRE(a.verdict == b.verdict);
            REQUIRE(a.cond_a == b.cond_a);
            REQUIRE(a.cond_b == b.cond_b);
            REQUIRE(a.cond_c == b.cond_c);
            REQUIRE(a.n0 == b.n0);
            REQUIRE(a.max_n == b.max_n);
            REQUIRE(a.strictness_witness.has_value() == b.strictness_witness.has_value());
            if (a.strictness_witness) REQUIRE(*a.strictness_witness == config_mirror(*b.strictness_witness));
        }
    }
}

TEST_CASE("counterexample regression across windows") {
    const QSpec q = QSpec::counterexample();
    const GroupDesc v4({2, 2});
    for (int w = 4; w <= 10; ++w) {
        ConfiningOptions opt;
        opt.window = w;
        const auto r = check_confining(q, Direction::t, opt);
        CAPTURE(w);
        REQUIRE(r.verdict == Verdict::strictly_confining);
        REQUIRE(r.n0 == 0);
        REQUIRE(r.strictness_witness == LampConfig::single(0, v4.make({1, 0})));
        for (int i = 2; i <= w; ++i) REQUIRE(q.contains(p_i(i)));
        REQUIRE_FALSE(q.contains(LampConfig::single(-1, v4.make({1, 0}))));
    }
}

TEST_CASE("saturation is sound and certifies the subgroup lamps") {
    const auto z4 = Z(4);
    const auto h = parse_subgroup("{2}", z4);
    const auto s = saturate(QSpec::qh(z4, h));
    CHECK(s.sound);
    CHECK_FALSE(s.partial);
    CHECK(s.covers_qtilde(h, z4));
    for (int p = -4; p <= -1; ++p) CHECK(s.certified_at(p, z4) == h);

    const auto bp = saturate(QSpec::bplus(Z(2)));
    CHECK(bp.sound);
    // Every B+ config on the window is a sum of these basis lamps.
    for (int p = 0; p <= 4; ++p)
        CHECK(std::find(bp.known.begin(), bp.known.end(), LampConfig::single(p, Z(2).make({1}))) != bp.known.end());
    CHECK(bp.certified_at(-1, Z(2)).is_trivial());

    SaturationOptions w8;
    w8.window = 8;
    const auto z8 = saturate(QSpec::z8_example(), w8);
    CHECK(z8.sound);
    CHECK(z8.certified_at(-4, Z(8)).format(Z(8)) == "{2,4,6}");

    for (const char* name : {"qh:Z12:{4}", "qh-:Z6:{2}", "counterexample", "fullbase:Z3"}) {
        const QSpec q = QSpec::builtin(name);
        const auto st = saturate(q);
        CAPTURE(name);
        REQUIRE(st.sound);
        for (const auto& f : st.known) REQUIRE(q_membership(f, q));
        for (const auto& t : st.trace) {
            REQUIRE(t.result < st.known.size());
            for (auto i : t.from) REQUIRE(i < st.known.size());
        }
    }
}

TEST_CASE("saturation reports the iteration cap") {
    SaturationOptions opt;
    opt.window = 6;
    opt.iteration_cap = 3;
    const auto s = saturate(QSpec::builtin("qh:Z12:{3}"), opt);
    CHECK(s.partial);
    CHECK(s.sound);
}

TEST_CASE("subgroup recovery") {
    const auto z12 = Z(12);
    for (const auto& h : enumerate_subgroups(z12, true)) {
        const auto r = recover_subgroup(QSpec::qh(z12, h), 8);
        CAPTURE(h.format(z12));
        REQUIRE(r.subgroup == h);
        REQUIRE(r.certified);
        REQUIRE(r.depth == 4);
    }
    const auto z8 = recover_subgroup(QSpec::z8_example(), 8);
    CHECK(z8.subgroup.format(Z(8)) == "{2,4,6}");
    CHECK(z8.certified);
    const auto cx = recover_subgroup(QSpec::counterexample(), 8);
    CHECK(cx.subgroup.order() == 4);
    CHECK_FALSE(cx.certified);

    CHECK_THROWS_AS(recover_subgroup(QSpec::fullbase(Z(3)), 8), PreconditionViolated);
    CHECK_THROWS_AS(recover_subgroup(QSpec::qh(z12, parse_subgroup("{4}", z12)), 4, 4), PreconditionViolated);
}

TEST_CASE("recovery never shrinks as the window grows") {
    for (const char* name : {"qh:Z12:{4}", "qh:Z8:{2}", "z8example", "counterexample", "bplus:Z2"}) {
        const QSpec q = QSpec::builtin(name);
        SubgroupDesc prev;
        for (int w = 4; w <= 9; ++w) {
            const auto r = recover_subgroup(q, w);
            CAPTURE(name);
            CAPTURE(w);
            if (w > 4) REQUIRE(prev.is_subset_of(r.subgroup));
            prev = r.subgroup;
        }
    }
}

TEST_CASE("equivalence validation") {
    const auto z4 = Z(4);
    const auto h2 = parse_subgroup("{2}", z4);
    CHECK_FALSE(validate_equivalence(QSpec::qh(z4, h2), h2, 20).refuted);
    CHECK(validate_equivalence(QSpec::qh(z4, h2), parse_subgroup("{}", z4), 20).refuted);
    const auto z2 = Z(2);
    const auto h0 = parse_subgroup("{}", z2);
    CHECK_FALSE(validate_equivalence(QSpec::qh(z2, h0), h0, 20).refuted);

    const GroupDesc v4({2, 2});
    for (const auto& h : enumerate_subgroups(v4, true)) {
        const auto r = validate_equivalence(QSpec::counterexample(), h, 20);
        CAPTURE(h.format(v4));
        REQUIRE(r.refuted);
        for (int i = 2; i <= 20; ++i)
            REQUIRE(wordlen_qp(Element::base(p_i(i)), h, Side::plus, v4) >= 2 * i - 1);
    }
}

TEST_CASE("custom and span families") {
    const auto z4 = Z(4);
    QSpec::CustomFamily fam;
    fam.configs.push_back(parse_poly("2t^-1", z4));
    fam.shift_closed = true;
    fam.sum_closed = true;
    fam.bplus_closed = true;
    const QSpec q = QSpec::custom(z4, fam);
    CHECK(q.contains(parse_poly("2t^-1 + 3t^2", z4)));
    CHECK(q.contains(parse_poly("2 + t", z4)));
    CHECK_FALSE(q.contains(parse_poly("2t^-3", z4)));
    CHECK_FALSE(q.contains(parse_poly("t^-1", z4)));
    const auto r = check_confining(q, Direction::t);
    CHECK(r.verdict == Verdict::strictly_confining);

    const QSpec z8 = QSpec::z8_example();
    const auto g8 = Z(8);
    CHECK(z8.contains(parse_poly("4t^-5 + 2t^-4 + t^-1 + 7t^3", g8)));
    CHECK_FALSE(z8.contains(parse_poly("t^-5", g8)));
    ConfiningOptions w8;
    w8.window = 8;
    CHECK(check_confining(z8, Direction::t, w8).verdict == Verdict::strictly_confining);
}
