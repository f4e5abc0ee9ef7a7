#include "wreathscope/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>

#include "wreathscope/errors.hpp"

namespace wreathscope {

// ---------------------------------------------------------------------------
// Generating-set descriptors

std::string GenSetDesc::name(const GroupDesc& g) const {
    switch (variant) {
        case Variant::standard: return "standard";
        case Variant::lineal: return "lineal";
        case Variant::trivial: return "trivial";
        case Variant::qplus: return "qp+:" + subgroup->format(g);
        case Variant::qminus: return "qp-:" + subgroup->format(g);
    }
    return "?";
}

GenSetDesc GenSetDesc::parse(std::string_view text, const GroupDesc& g) {
    if (text == "standard") return standard();
    if (text == "lineal") return lineal();
    if (text == "trivial") return trivial();
    if (text.starts_with("qp+:") || text.starts_with("qp-:")) {
        Side side = text[2] == '+' ? Side::plus : Side::minus;
        return qp(parse_subgroup(text.substr(4), g), side);
    }
    throw ParseError("unknown structure '" + std::string(text) + "' (standard|lineal|trivial|qp+:H|qp-:H)", 0);
}

bool GenSetDesc::base_contains(const LampConfig& q, const GroupDesc& g) const {
    switch (variant) {
        case Variant::standard: {
            if (q.size() != 1 || q.min_position() != 0) return false;
            const Coeff& c = q.entries().begin()->second;
            int nonzero = 0;
            for (std::size_t j = 0; j < c.residues.size(); ++j) {
                if (c.residues[j] == 0) continue;
                ++nonzero;
                if (c.residues[j] != 1 && c.residues[j] != g.orders()[j] - 1) return false;
            }
            return nonzero == 1;
        }
        case Variant::lineal:
        case Variant::trivial: return true;
        case Variant::qplus:
            for (const auto& [p, c] : q.entries())
                if (p < 0 && !subgroup->contains(c)) return false;
            return true;
        case Variant::qminus:
            for (const auto& [p, c] : q.entries())
                if (p > 0 && !subgroup->contains(c)) return false;
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Walk plans

namespace {

void walk_to(WalkPlan& plan, std::int64_t target) {
    std::int64_t at = plan.visits.back();
    while (at != target) {
        at += at < target ? 1 : -1;
        plan.visits.push_back(at);
    }
}

void burst(WalkPlan& plan, Element generator) {
    plan.bursts.push_back({plan.visits.size() - 1, std::move(generator)});
}

void finish(WalkPlan& plan) {
    plan.cost = static_cast<std::int64_t>(plan.visits.size() - 1 + plan.bursts.size());
}

WalkPlan mirror_plan(const WalkPlan& plan) {
    WalkPlan out = plan;
    for (auto& v : out.visits) v = -v;
    for (auto& b : out.bursts) b.generator = elem_mirror(b.generator);
    return out;
}

}  // namespace

Element replay(const WalkPlan& plan, const GroupDesc& g) {
    Element x;
    std::size_t next_burst = 0;
    for (std::size_t step = 0; step < plan.visits.size(); ++step) {
        if (step > 0) {
            std::int64_t d = plan.visits[step] - plan.visits[step - 1];
            if (d != 1 && d != -1) throw PreconditionViolated("walk plan visits must move in unit steps");
            x = elem_mul(x, Element::t_power(d), g);
        }
        while (next_burst < plan.bursts.size() && plan.bursts[next_burst].step == step)
            x = elem_mul(x, plan.bursts[next_burst++].generator, g);
    }
    if (next_burst != plan.bursts.size()) throw PreconditionViolated("walk plan burst out of order");
    return x;
}

// ---------------------------------------------------------------------------
// Closed forms

// One burst at a cursor c <= min{p : L(p) not in H} installs every lamp at
// once, because the generator shift(L, -c) only has non-H values at
// nonnegative positions. The walk must start at 0, reach such a c and end
// at the cursor k.
WalkPlan plan_qp(const Element& x, const SubgroupDesc& h, Side side, const GroupDesc& g) {
    validate_element(x, g);
    if (side == Side::minus) return mirror_plan(plan_qp(elem_mirror(x), h, Side::plus, g));

    const LampConfig lamps = x.lamps();
    const std::int64_t k = x.shift;
    WalkPlan plan;
    if (lamps.empty()) {
        walk_to(plan, k);
        finish(plan);
        return plan;
    }
    std::optional<std::int64_t> first_bad;
    for (const auto& [p, c] : lamps.entries())
        if (!h.contains(c)) {
            first_bad = p;
            break;
        }
    const std::int64_t low = std::min<std::int64_t>(0, k);
    std::int64_t burst_at = 0;
    if (first_bad && *first_bad < low) {
        burst_at = *first_bad;
    } else if (first_bad) {
        burst_at = low;
    }
    walk_to(plan, burst_at);
    burst(plan, Element::base(config_shift(lamps, -burst_at)));
    walk_to(plan, k);
    finish(plan);
    return plan;
}

std::int64_t wordlen_qp(const Element& x, const SubgroupDesc& h, Side side, const GroupDesc& g) {
    validate_element(x, g);
    const Element y = side == Side::plus ? x : elem_mirror(x);
    const LampConfig lamps = y.lamps();
    const std::int64_t k = y.shift;
    if (lamps.empty()) return std::abs(k);
    for (const auto& [p, c] : lamps.entries()) {
        if (h.contains(c)) continue;
        if (p >= std::min<std::int64_t>(0, k)) break;
        return 1 + std::abs(p) + std::abs(k - p);
    }
    return 1 + std::abs(k);
}

namespace {

// Distances in G from 0 with respect to {e_j^{+-1}}, with the generator
// used on the last edge of a shortest path.
struct CoeffGeodesics {
    std::vector<int> dist;
    std::vector<int> last_factor;  // factor index
    std::vector<int> last_sign;    // +1 / -1
};

CoeffGeodesics coeff_geodesics(const GroupDesc& g) {
    CoeffGeodesics out;
    auto n = static_cast<std::size_t>(g.order());
    out.dist.assign(n, -1);
    out.last_factor.assign(n, -1);
    out.last_sign.assign(n, 0);
    std::deque<int> queue{0};
    out.dist[0] = 0;
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        Coeff c = g.from_index(cur);
        for (int j = 0; j < g.rank(); ++j) {
            for (int sign : {1, -1}) {
                int nxt = g.index(g.add(c, g.scale(g.unit(j), sign)));
                auto un = static_cast<std::size_t>(nxt);
                if (out.dist[un] >= 0) continue;
                out.dist[un] = out.dist[static_cast<std::size_t>(cur)] + 1;
                out.last_factor[un] = j;
                out.last_sign[un] = sign;
                queue.push_back(nxt);
            }
        }
    }
    return out;
}

}  // namespace

int coeff_word_length(const Coeff& c, const GroupDesc& g) {
    return coeff_geodesics(g).dist[static_cast<std::size_t>(g.index(c))];
}

namespace {

struct StandardRoute {
    std::int64_t lo, hi;
    bool left_first;
    std::int64_t travel;
};

StandardRoute standard_route(const LampConfig& lamps, std::int64_t k) {
    std::int64_t lo = std::min<std::int64_t>(0, k), hi = std::max<std::int64_t>(0, k);
    if (!lamps.empty()) {
        lo = std::min(lo, lamps.min_position());
        hi = std::max(hi, lamps.max_position());
    }
    std::int64_t left = (0 - lo) + (hi - lo) + (hi - k);
    std::int64_t right = (hi - 0) + (hi - lo) + (k - lo);
    return {lo, hi, left <= right, std::min(left, right)};
}

}  // namespace

std::int64_t wordlen_standard(const Element& x, const GroupDesc& g) {
    validate_element(x, g);
    const LampConfig lamps = x.lamps();
    auto geo = coeff_geodesics(g);
    std::int64_t cost = standard_route(lamps, x.shift).travel;
    for (const auto& [p, c] : lamps.entries()) cost += geo.dist[static_cast<std::size_t>(g.index(c))];
    return cost;
}

WalkPlan plan_standard(const Element& x, const GroupDesc& g) {
    validate_element(x, g);
    const LampConfig lamps = x.lamps();
    auto geo = coeff_geodesics(g);
    auto route = standard_route(lamps, x.shift);
    WalkPlan plan;
    std::map<Position, bool> done;
    auto light = [&](std::int64_t at) {
        auto value = lamps.find(at);
        if (!value || done[at]) return;
        done[at] = true;
        // Unwind the BFS tree from the target coefficient back to 0.
        std::vector<Element> letters;
        int idx = g.index(*value);
        while (idx != 0) {
            auto u = static_cast<std::size_t>(idx);
            Coeff step = g.scale(g.unit(geo.last_factor[u]), geo.last_sign[u]);
            letters.push_back(Element::base(LampConfig::single(0, step)));
            idx = g.index(g.sub(g.from_index(idx), step));
        }
        for (auto& l : letters) burst(plan, std::move(l));
    };
    auto sweep_to = [&](std::int64_t target) {
        light(plan.visits.back());
        while (plan.visits.back() != target) {
            walk_to(plan, plan.visits.back() + (plan.visits.back() < target ? 1 : -1));
            light(plan.visits.back());
        }
    };
    if (route.left_first) {
        sweep_to(route.lo);
        sweep_to(route.hi);
    } else {
        sweep_to(route.hi);
        sweep_to(route.lo);
    }
    sweep_to(x.shift);
    finish(plan);
    return plan;
}

std::int64_t wordlen_lineal(const Element& x) { return std::abs(x.shift) + (x.config.empty() ? 0 : 1); }

WalkPlan plan_lineal(const Element& x) {
    WalkPlan plan;
    if (!x.config.empty()) burst(plan, Element::base(x.lamps()));
    walk_to(plan, x.shift);
    finish(plan);
    return plan;
}

std::int64_t wordlen_trivial(const Element& x) { return x == Element::identity() ? 0 : 1; }

std::int64_t wordlen(const Element& x, const GenSetDesc& gens, const GroupDesc& g) {
    switch (gens.variant) {
        case GenSetDesc::Variant::standard: return wordlen_standard(x, g);
        case GenSetDesc::Variant::lineal: return wordlen_lineal(x);
        case GenSetDesc::Variant::trivial: return wordlen_trivial(x);
        case GenSetDesc::Variant::qplus:
        case GenSetDesc::Variant::qminus: return wordlen_qp(x, *gens.subgroup, gens.side(), g);
    }
    return 0;
}

WalkPlan plan(const Element& x, const GenSetDesc& gens, const GroupDesc& g) {
    switch (gens.variant) {
        case GenSetDesc::Variant::standard: return plan_standard(x, g);
        case GenSetDesc::Variant::lineal: return plan_lineal(x);
        case GenSetDesc::Variant::trivial: {
            WalkPlan p;
            if (!(x == Element::identity())) burst(p, x);
            finish(p);
            return p;
        }
        case GenSetDesc::Variant::qplus:
        case GenSetDesc::Variant::qminus: return plan_qp(x, *gens.subgroup, gens.side(), g);
    }
    return {};
}

std::int64_t distance(const Element& x, const Element& y, const GenSetDesc& gens, const GroupDesc& g) {
    return wordlen(elem_mul(elem_inv(x, g), y, g), gens, g);
}

// ---------------------------------------------------------------------------
// Breadth-first oracle

std::uint64_t default_state_limit() {
    if (const char* env = std::getenv("WREATHSCOPE_STATE_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return std::uint64_t{1} << 25;
}

namespace {

constexpr std::uint16_t kUnvisited = std::numeric_limits<std::uint16_t>::max();

}  // namespace

BfsOracle::BfsOracle(const GroupDesc& g, const GenSetDesc& gens, int window, int cursor_bound,
                     std::uint64_t state_limit)
    : group_(g), window_(window), cursor_bound_(cursor_bound) {
    if (window < 0 || cursor_bound < 0) throw PreconditionViolated("window bounds must be nonnegative");
    const int width = 2 * window + 1;
    const auto order = static_cast<std::uint64_t>(g.order());
    const auto cursors = static_cast<std::uint64_t>(2 * cursor_bound + 1);
    for (int i = 0; i < width; ++i) {
        if (configs_ > state_limit / order) throw WindowExceeded("BFS state space exceeds limit");
        configs_ *= order;
    }
    if (configs_ > state_limit / cursors) throw WindowExceeded("BFS state space exceeds limit");
    const std::uint64_t states = configs_ * cursors;
    dist_.assign(states, kUnvisited);

    // Coefficient arithmetic on indices.
    const auto n = static_cast<std::size_t>(order);
    std::vector<std::vector<int>> add(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            add[a][b] = g.index(g.add(g.from_index(static_cast<int>(a)), g.from_index(static_cast<int>(b))));
    std::vector<std::uint64_t> weight(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) weight[static_cast<std::size_t>(i)] = i == 0 ? 1 : weight[i - 1] * order;
    auto digit = [&](std::uint64_t cfg, int i) {
        return static_cast<int>((cfg / weight[static_cast<std::size_t>(i)]) % order);
    };

    std::vector<int> subgroup_idx, all_idx;
    for (std::size_t a = 0; a < n; ++a) all_idx.push_back(static_cast<int>(a));
    std::vector<int> coset_rep(n);
    if (gens.is_qp()) {
        for (const auto& e : gens.subgroup->elements()) subgroup_idx.push_back(g.index(e));
        for (std::size_t a = 0; a < n; ++a) {
            int best = static_cast<int>(n);
            for (int hidx : subgroup_idx) best = std::min(best, add[a][static_cast<std::size_t>(hidx)]);
            coset_rep[a] = best;
        }
    }

    std::deque<std::uint64_t> queue;
    const std::uint64_t start = cursors / 2;  // empty config, cursor 0
    dist_[start] = 0;
    queue.push_back(start);

    if (gens.variant == GenSetDesc::Variant::trivial) {
        // Every window element is itself a generator.
        for (auto& d : dist_)
            if (d == kUnvisited) d = 1;
        return;
    }

    // expanded[c] marks cosets (by canonical representative) already expanded at cursor c.
    std::vector<std::vector<bool>> expanded;
    const bool coset_moves = gens.variant != GenSetDesc::Variant::standard;
    if (coset_moves) expanded.assign(cursors, std::vector<bool>(configs_, false));

    std::vector<const std::vector<int>*> allowed(static_cast<std::size_t>(width));
    std::vector<int> values_buf;
    while (!queue.empty()) {
        const std::uint64_t s = queue.front();
        queue.pop_front();
        const std::uint16_t d = dist_[s];
        if (d + 1 >= kUnvisited) throw WindowExceeded("BFS distance overflow");
        const std::uint64_t cfg = s / cursors;
        const auto ci = static_cast<int>(s % cursors);
        const int cursor = ci - cursor_bound;
        auto visit = [&](std::uint64_t t) {
            if (dist_[t] != kUnvisited) return;
            dist_[t] = static_cast<std::uint16_t>(d + 1);
            queue.push_back(t);
        };
        if (ci > 0) visit(s - 1);
        if (ci + 1 < static_cast<int>(cursors)) visit(s + 1);

        if (!coset_moves) {
            // a_j^{+-1} at the cursor, if the cursor is inside the window.
            if (cursor < -window || cursor > window) continue;
            const int pos = cursor + window;
            const int cur = digit(cfg, pos);
            const Coeff cc = g.from_index(cur);
            for (int j = 0; j < g.rank(); ++j)
                for (int sign : {1, -1}) {
                    int nxt = g.index(g.add(cc, g.scale(g.unit(j), sign)));
                    std::uint64_t ncfg = cfg + (static_cast<std::uint64_t>(nxt) - static_cast<std::uint64_t>(cur)) *
                                                   weight[static_cast<std::size_t>(pos)];
                    visit(ncfg * cursors + static_cast<std::uint64_t>(ci));
                }
            continue;
        }

        // Base moves at this cursor reach exactly the coset cfg + U, where U
        // restricts some positions to H. Expand each coset once per cursor.
        std::uint64_t key = 0;
        for (int i = 0; i < width; ++i) {
            const int p = i - window;
            bool restricted = (gens.variant == GenSetDesc::Variant::qplus && p < cursor) ||
                              (gens.variant == GenSetDesc::Variant::qminus && p > cursor);
            allowed[static_cast<std::size_t>(i)] = restricted ? &subgroup_idx : &all_idx;
            if (restricted)
                key += static_cast<std::uint64_t>(coset_rep[static_cast<std::size_t>(digit(cfg, i))]) *
                       weight[static_cast<std::size_t>(i)];
        }
        auto& done = expanded[static_cast<std::size_t>(ci)];
        if (done[key]) continue;
        done[key] = true;

        // Mixed-radix walk over the coset members.
        std::vector<std::size_t> counter(static_cast<std::size_t>(width), 0);
        std::vector<int> base_digit(static_cast<std::size_t>(width));
        for (int i = 0; i < width; ++i) base_digit[static_cast<std::size_t>(i)] = digit(cfg, i);
        while (true) {
            std::uint64_t member = 0;
            for (int i = 0; i < width; ++i) {
                auto ui = static_cast<std::size_t>(i);
                int v = add[static_cast<std::size_t>(base_digit[ui])]
                           [static_cast<std::size_t>((*allowed[ui])[counter[ui]])];
                member += static_cast<std::uint64_t>(v) * weight[ui];
            }
            visit(member * cursors + static_cast<std::uint64_t>(ci));
            int i = 0;
            for (; i < width; ++i) {
                auto ui = static_cast<std::size_t>(i);
                if (++counter[ui] < allowed[ui]->size()) break;
                counter[ui] = 0;
            }
            if (i == width) break;
        }
    }
}

std::uint64_t BfsOracle::encode(const Element& x) const {
    const LampConfig lamps = x.lamps();
    if (!lamps.supported_in(-window_, window_))
        throw WindowExceeded("target lamps outside window [-" + std::to_string(window_) + "," +
                             std::to_string(window_) + "]");
    if (x.shift < -cursor_bound_ || x.shift > cursor_bound_)
        throw WindowExceeded("target cursor outside bound " + std::to_string(cursor_bound_));
    std::uint64_t cfg = 0, weight = 1;
    const auto order = static_cast<std::uint64_t>(group_.order());
    for (int p = -window_; p <= window_; ++p) {
        cfg += static_cast<std::uint64_t>(group_.index(lamps.at(p, group_))) * weight;
        weight *= order;
    }
    const auto cursors = static_cast<std::uint64_t>(2 * cursor_bound_ + 1);
    return cfg * cursors + static_cast<std::uint64_t>(x.shift + cursor_bound_);
}

std::optional<std::int64_t> BfsOracle::distance(const Element& x) const {
    validate_element(x, group_);
    std::uint16_t d = dist_[encode(x)];
    if (d == kUnvisited) return std::nullopt;
    return d;
}

std::optional<std::int64_t> bfs_wordlen(const Element& x, const GenSetDesc& gens, int window, int cursor_bound,
                                        const GroupDesc& g, std::uint64_t state_limit) {
    BfsOracle oracle(g, gens, window, cursor_bound, state_limit);
    return oracle.distance(x);
}

// ---------------------------------------------------------------------------
// Four-point estimator

std::int64_t four_point_defect(std::int64_t dwx, std::int64_t dyz, std::int64_t dwy, std::int64_t dxz,
                               std::int64_t dwz, std::int64_t dxy) {
    std::int64_t sums[3] = {dwx + dyz, dwy + dxz, dwz + dxy};
    std::sort(sums, sums + 3);
    return sums[2] - sums[1];
}

BallSampler::BallSampler(const GenSetDesc& gens, const GroupDesc& g, std::int64_t radius, std::uint64_t seed)
    : gens_(gens), group_(g), radius_(radius), rng_(seed) {
    if (radius < 0) throw PreconditionViolated("sampling domain empty: negative radius");
}

std::int64_t BallSampler::uniform(std::int64_t lo, std::int64_t hi) {
    // Rejection sampling keeps the draw independent of the standard library's
    // distribution implementation.
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do v = rng_();
    while (v >= limit);
    return lo + static_cast<std::int64_t>(v % span);
}

Element BallSampler::next() {
    const int order = group_.order();
    for (int attempt = 0; attempt < 100000; ++attempt) {
        // Random interval, cursor inside it, lamps of random density.
        std::int64_t a = uniform(-radius_, radius_);
        std::int64_t b = uniform(-radius_, radius_);
        if (a > b) std::swap(a, b);
        std::int64_t k = uniform(a, b);
        std::int64_t density = uniform(0, 4);
        LampConfig lamps;
        for (std::int64_t p = a; p <= b; ++p)
            if (uniform(1, 4) <= density) lamps.set(p, group_.from_index(static_cast<int>(uniform(1, order - 1))));
        Element x = Element::from_lamps(lamps, k);
        if (wordlen(x, gens_, group_) > radius_) continue;
        // Half of the samples are pushed out toward the sphere: defects of
        // fat quadrilaterals only show up at the scale of the radius.
        if (uniform(0, 1) == 1) {
            for (std::int64_t tries = 0; tries < 4 * radius_ + 4; ++tries) {
                LampConfig grown = lamps;
                const std::int64_t p = uniform(-radius_, radius_);
                grown.set(p, group_.from_index(static_cast<int>(uniform(1, order - 1))));
                Element y = Element::from_lamps(grown, k);
                if (wordlen(y, gens_, group_) <= radius_) {
                    lamps = std::move(grown);
                    x = std::move(y);
                }
            }
        }
        return x;
    }
    throw PreconditionViolated("sampling domain empty: no element found within radius");
}

DeltaEstimate delta_four_point(const GenSetDesc& gens, const GroupDesc& g, std::int64_t radius,
                               std::int64_t samples, std::uint64_t seed) {
    if (samples <= 0) throw PreconditionViolated("sampling domain empty: no samples requested");
    BallSampler sampler(gens, g, radius, seed);
    DeltaEstimate est{0, radius, samples, seed};
    for (std::int64_t i = 0; i < samples; ++i) {
        Element w = sampler.next(), x = sampler.next(), y = sampler.next(), z = sampler.next();
        auto d = [&](const Element& u, const Element& v) { return distance(u, v, gens, g); };
        est.twice_delta =
            std::max(est.twice_delta, four_point_defect(d(w, x), d(y, z), d(w, y), d(x, z), d(w, z), d(x, y)));
    }
    return est;
}

}  // namespace wreathscope
