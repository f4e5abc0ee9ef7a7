#include "wreathscope/confining.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>

#include "wreathscope/errors.hpp"
#include "wreathscope/modspan.hpp"

namespace wreathscope {

// ---------------------------------------------------------------------------
// Negative-position coordinates for span membership

namespace {

// Coordinates of configs supported in [lo, -1]. Column order is position
// ascending, so the most negative lamps are eliminated first.
struct NegSpace {
    Position lo;
    const GroupDesc* g;
    int modulus;

    std::size_t dim() const { return static_cast<std::size_t>(-lo) * static_cast<std::size_t>(g->rank()); }

    std::vector<int> encode(const LampConfig& f) const {
        std::vector<int> v(dim(), 0);
        const auto rank = static_cast<std::size_t>(g->rank());
        for (const auto& [p, c] : f.entries()) {
            if (p < lo || p >= 0) throw PreconditionViolated("config outside span coordinates");
            for (std::size_t j = 0; j < rank; ++j)
                v[static_cast<std::size_t>(p - lo) * rank + j] = c.residues[j] * (modulus / g->orders()[j]);
        }
        return v;
    }

    LampConfig decode(const std::vector<int>& v) const {
        LampConfig f;
        const auto rank = static_cast<std::size_t>(g->rank());
        for (std::size_t col = 0; col < v.size(); col += rank) {
            std::vector<int> r(rank);
            for (std::size_t j = 0; j < rank; ++j) r[j] = v[col + j] / (modulus / g->orders()[j]);
            f.set(lo + static_cast<Position>(col / rank), g->make(std::move(r)));
        }
        return f;
    }
};

struct SpanCache {
    std::mutex mu;
    std::map<std::pair<const void*, Position>, std::shared_ptr<const ModularSpan>> spans;
};

SpanCache& span_cache() {
    static SpanCache cache;
    return cache;
}

LampConfig basis_lamp(const GroupDesc& g, Position p, int factor) { return LampConfig::single(p, g.unit(factor)); }

std::vector<LampConfig> bplus_lamps(const GroupDesc& g, int window) {
    std::vector<LampConfig> out;
    for (Position p = 0; p <= window; ++p)
        for (int j = 0; j < g.rank(); ++j) out.push_back(basis_lamp(g, p, j));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// QSpec construction

QSpec QSpec::qh(const GroupDesc& g, SubgroupDesc h, Side side) {
    QSpec q(Kind::qh, g);
    q.subgroup_ = std::move(h);
    q.mirrored_ = side == Side::minus;
    return q;
}

QSpec QSpec::bplus(const GroupDesc& g) { return QSpec(Kind::bplus, g); }

QSpec QSpec::bminus(const GroupDesc& g) { return bplus(g).mirror(); }

QSpec QSpec::fullbase(const GroupDesc& g) { return QSpec(Kind::fullbase, g); }

QSpec QSpec::span_family(const GroupDesc& g, const std::string& family) {
    if (family == "counterexample") {
        if (!(g == GroupDesc({2, 2}))) throw GroupMismatch("the counterexample family lives over Z2xZ2");
    } else if (family == "z8") {
        if (!(g == GroupDesc({8}))) throw GroupMismatch("the z8 family lives over Z8");
    } else {
        throw ParseError("unknown span family '" + family + "' (counterexample|z8)", 0);
    }
    QSpec q(Kind::span_family, g);
    q.family_ = family;
    // Generators reaching below the target cannot cancel for the
    // counterexample; the z8 family needs a little room.
    q.margin_ = family == "counterexample" ? 0 : 2;
    return q;
}

QSpec QSpec::counterexample() { return span_family(GroupDesc({2, 2}), "counterexample"); }

QSpec QSpec::z8_example() { return span_family(GroupDesc({8}), "z8"); }

QSpec QSpec::custom(const GroupDesc& g, CustomFamily family) {
    for (const auto& f : family.configs) validate_config(f, g);
    QSpec q(Kind::custom, g);
    q.custom_ = std::move(family);
    q.margin_ = 4;
    return q;
}

QSpec QSpec::predicate(const GroupDesc& g, std::string name, std::function<bool(const LampConfig&)> fn) {
    QSpec q(Kind::predicate, g);
    q.predicate_ = std::make_shared<const std::function<bool(const LampConfig&)>>(std::move(fn));
    q.predicate_name_ = std::move(name);
    return q;
}

QSpec QSpec::builtin(std::string_view name) {
    if (name == "counterexample") return counterexample();
    if (name == "z8example") return z8_example();
    auto colon = name.find(':');
    if (colon == std::string_view::npos) throw ParseError("unknown built-in QSpec '" + std::string(name) + "'", 0);
    std::string_view head = name.substr(0, colon);
    std::string_view rest = name.substr(colon + 1);
    if (head == "qh" || head == "qh+" || head == "qh-") {
        auto colon2 = rest.find(':');
        if (colon2 == std::string_view::npos) throw ParseError("expected qh:GROUP:{gens}", colon + 1);
        GroupDesc g = GroupDesc::parse(rest.substr(0, colon2));
        SubgroupDesc h = parse_subgroup(rest.substr(colon2 + 1), g);
        return qh(g, std::move(h), head == "qh-" ? Side::minus : Side::plus);
    }
    if (head == "bplus") return bplus(GroupDesc::parse(rest));
    if (head == "bminus") return bminus(GroupDesc::parse(rest));
    if (head == "fullbase") return fullbase(GroupDesc::parse(rest));
    throw ParseError("unknown built-in QSpec '" + std::string(name) + "'", 0);
}

std::string QSpec::name() const {
    std::string base;
    switch (kind_) {
        case Kind::qh: return (mirrored_ ? "qh-:" : "qh:") + group_.name() + ":" + subgroup_->format(group_);
        case Kind::bplus: return (mirrored_ ? "bminus:" : "bplus:") + group_.name();
        case Kind::fullbase: base = "fullbase:" + group_.name(); break;
        case Kind::span_family: base = family_ == "counterexample" ? "counterexample" : "z8example"; break;
        case Kind::custom: base = "custom:" + group_.name(); break;
        case Kind::predicate: base = "predicate:" + predicate_name_; break;
    }
    return mirrored_ ? "mirror(" + base + ")" : base;
}

QSpec QSpec::mirror() const {
    QSpec q = *this;
    q.mirrored_ = !mirrored_;
    return q;
}

// ---------------------------------------------------------------------------
// Membership

LampConfig QSpec::family_member(std::int64_t i) const {
    LampConfig f;
    if (family_ == "counterexample") {
        f.set(-i, group_.make({0, 1}));
        f.set(-i + 1, group_.make({1, 0}));
    } else {
        f.set(-i, group_.make({4}));
        f = config_add(f, LampConfig::single(-i + 1, group_.make({2})), group_);
        f = config_add(f, LampConfig::single(-1, group_.make({1})), group_);
    }
    return f;
}

bool QSpec::span_closed_bplus() const {
    return kind_ == Kind::span_family || (kind_ == Kind::custom && custom_.sum_closed && custom_.bplus_closed);
}

std::vector<LampConfig> QSpec::negative_generators(Position lowest) const {
    std::vector<LampConfig> out;
    auto push_shifts = [&](const LampConfig& c, bool shifts) {
        if (c.empty()) return;
        for (Position j = 0;; ++j) {
            LampConfig neg = negative_part(config_shift(c, j));
            if (neg.empty()) break;
            if (neg.min_position() >= lowest) out.push_back(std::move(neg));
            if (!shifts) break;
        }
    };
    if (kind_ == Kind::span_family) {
        // Shifts of deeper members repeat those of shallower ones, except
        // for the fixed tail of the z8 family, which only c_i itself carries.
        for (std::int64_t i = 2; i <= -lowest + 2; ++i) push_shifts(family_member(i), true);
    } else {
        for (const auto& c : custom_.configs) push_shifts(c, custom_.shift_closed);
    }
    return out;
}

namespace {

bool span_contains(const GroupDesc& g, const void* owner, Position lo,
                   const std::function<std::vector<LampConfig>()>& generators, const LampConfig& target) {
    NegSpace space{lo, &g, g.exponent()};
    std::shared_ptr<const ModularSpan> span;
    {
        auto& cache = span_cache();
        std::lock_guard<std::mutex> lock(cache.mu);
        auto it = cache.spans.find({owner, lo});
        if (it != cache.spans.end()) span = it->second;
    }
    if (!span) {
        auto built = std::make_shared<ModularSpan>(g.exponent(), space.dim());
        for (const auto& x : generators()) built->insert(space.encode(x));
        span = built;
        auto& cache = span_cache();
        std::lock_guard<std::mutex> lock(cache.mu);
        cache.spans.emplace(std::make_pair(owner, lo), span);
    }
    return span->contains(space.encode(target));
}

}  // namespace

bool QSpec::contains_plus(const LampConfig& f) const {
    switch (kind_) {
        case Kind::qh:
            for (const auto& [p, c] : f.entries()) {
                if (p >= 0) break;
                if (!subgroup_->contains(c)) return false;
            }
            return true;
        case Kind::bplus: return f.empty() || f.min_position() >= 0;
        case Kind::fullbase: return true;
        case Kind::predicate: return (*predicate_)(f);
        case Kind::span_family:
        case Kind::custom: break;
    }
    if (f.empty()) return true;

    if (span_closed_bplus()) {
        LampConfig neg = negative_part(f);
        if (neg.empty()) return true;
        const Position lo = neg.min_position() - margin_;
        if (kind_ == Kind::custom) {
            // Custom specs carry their own configs, so they are not cached.
            NegSpace space{lo, &group_, group_.exponent()};
            ModularSpan span(group_.exponent(), space.dim());
            for (const auto& x : negative_generators(lo)) span.insert(space.encode(x));
            return span.contains(space.encode(neg));
        }
        // Named families are fixed, so the span over [lo, -1] is shared.
        static const int counterexample_tag = 0, z8_tag = 0;
        const void* owner = family_ == "counterexample" ? &counterexample_tag : &z8_tag;
        return span_contains(group_, owner, lo, [&] { return negative_generators(lo); }, neg);
    }

    // Remaining custom combinations.
    const auto& fam = custom_;
    if (fam.bplus_closed) {
        LampConfig neg = negative_part(f);
        if (neg.empty()) return true;
        for (const auto& c : fam.configs)
            for (Position j = 0;; ++j) {
                LampConfig cn = negative_part(config_shift(c, j));
                if (cn == neg) return true;
                if (cn.empty() || !fam.shift_closed) break;
            }
        return false;
    }
    // No B+ absorption: compare whole configs.
    const Position top = f.max_position() + margin_;
    std::vector<LampConfig> gens;
    for (const auto& c : fam.configs) {
        if (c.empty()) continue;
        for (Position j = 0; c.min_position() + j <= top; ++j) {
            gens.push_back(config_shift(c, j));
            if (!fam.shift_closed) break;
        }
    }
    if (!fam.sum_closed) return std::find(gens.begin(), gens.end(), f) != gens.end();
    Position lo = f.min_position(), hi = f.max_position();
    for (const auto& x : gens) {
        lo = std::min(lo, x.min_position());
        hi = std::max(hi, x.max_position());
    }
    // Translate so the range ends at -1 and reuse the negative coordinates.
    NegSpace space{lo - hi - 1, &group_, group_.exponent()};
    ModularSpan span(group_.exponent(), space.dim());
    for (const auto& x : gens) span.insert(space.encode(config_shift(x, -hi - 1)));
    return span.contains(space.encode(config_shift(f, -hi - 1)));
}

bool QSpec::contains(const LampConfig& f) const {
    validate_config(f, group_);
    return mirrored_ ? contains_plus(config_mirror(f)) : contains_plus(f);
}

bool q_membership(const LampConfig& f, const QSpec& q) { return q.contains(f); }

// ---------------------------------------------------------------------------
// Generators, seeds, witnesses

std::optional<std::vector<LampConfig>> QSpec::generators_plus(int window) const {
    std::vector<LampConfig> out;
    switch (kind_) {
        case Kind::qh:
            for (Position p = -window; p < 0; ++p)
                for (const auto& h : subgroup_->generators())
                    if (!h.is_zero()) out.push_back(LampConfig::single(p, h));
            break;
        case Kind::bplus: break;
        case Kind::fullbase:
            for (Position p = -window; p < 0; ++p)
                for (int j = 0; j < group_.rank(); ++j) out.push_back(basis_lamp(group_, p, j));
            break;
        case Kind::span_family:
        case Kind::custom: {
            if (!span_closed_bplus()) return std::nullopt;
            const Position lo = -window - margin_;
            NegSpace space{lo, &group_, group_.exponent()};
            ModularSpan span(group_.exponent(), space.dim());
            for (const auto& x : negative_generators(lo)) span.insert(space.encode(x));
            // Rows pivoting inside the window vanish below it.
            for (const auto& row : span.basis()) {
                LampConfig f = space.decode(row);
                if (!f.empty() && f.min_position() >= -window) out.push_back(std::move(f));
            }
            break;
        }
        case Kind::predicate: return std::nullopt;
    }
    for (auto& f : bplus_lamps(group_, window)) out.push_back(std::move(f));
    return out;
}

std::optional<std::vector<LampConfig>> QSpec::window_generators(int window) const {
    auto gens = generators_plus(window);
    if (gens && mirrored_)
        for (auto& f : *gens) f = config_mirror(f);
    return gens;
}

std::vector<LampConfig> QSpec::seeds_plus(int window) const {
    std::vector<LampConfig> out;
    switch (kind_) {
        case Kind::qh:
            // Staircases h t^-i + ... + h t^-1 rather than bare lamps, so the
            // lamps themselves have to be derived.
            for (const auto& h : subgroup_->generators()) {
                if (h.is_zero()) continue;
                LampConfig stair;
                for (Position i = 1; i <= window; ++i) {
                    stair.set(-i, h);
                    out.push_back(stair);
                }
            }
            break;
        case Kind::bplus: break;
        case Kind::fullbase:
            for (Position i = 1; i <= window; ++i)
                for (int j = 0; j < group_.rank(); ++j) out.push_back(basis_lamp(group_, -i, j));
            break;
        case Kind::span_family:
            for (std::int64_t i = 2; i <= window; ++i) out.push_back(family_member(i));
            break;
        case Kind::custom:
            for (const auto& c : custom_.configs)
                if (!c.empty() && c.supported_in(-window, window)) out.push_back(c);
            break;
        case Kind::predicate: {
            const auto elems = group_.elements();
            double total = std::pow(static_cast<double>(elems.size()), window);
            if (total > 4096) break;
            std::vector<std::size_t> digits(static_cast<std::size_t>(window), 0);
            while (true) {
                LampConfig f;
                for (int i = 0; i < window; ++i) f.set(-1 - i, elems[digits[static_cast<std::size_t>(i)]]);
                if (!f.empty() && contains_plus(f)) out.push_back(f);
                int i = 0;
                for (; i < window; ++i) {
                    auto ui = static_cast<std::size_t>(i);
                    if (++digits[ui] < elems.size()) break;
                    digits[ui] = 0;
                }
                if (i == window) break;
            }
            break;
        }
    }
    return out;
}

std::vector<LampConfig> QSpec::seeds(int window) const {
    auto out = seeds_plus(window);
    if (mirrored_)
        for (auto& f : out) f = config_mirror(f);
    return out;
}

std::optional<LampConfig> QSpec::witness_plus(std::int64_t i) const {
    switch (kind_) {
        case Kind::qh: {
            if (subgroup_->is_trivial()) return std::nullopt;
            Coeff best = subgroup_->elements().back();
            for (const auto& h : subgroup_->elements())
                if (group_.order_of(h) > group_.order_of(best)) best = h;
            return LampConfig::single(-i, best);
        }
        case Kind::fullbase: return LampConfig::single(-i, group_.unit(0));
        case Kind::span_family:
            if (i < 2) return std::nullopt;
            return family_member(i);
        default: return std::nullopt;
    }
}

std::optional<LampConfig> QSpec::witness(std::int64_t i) const {
    auto w = witness_plus(i);
    if (w && mirrored_) *w = config_mirror(*w);
    return w;
}

// ---------------------------------------------------------------------------
// Confining check

std::string to_string(Direction d) { return d == Direction::t ? "t" : "t^-1"; }

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::strictly_confining: return "strictly-confining";
        case Verdict::confining_not_strict: return "confining-not-strict";
        case Verdict::not_confining: return "not-confining";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// Calls fn on every config supported in [-window, window]; stops early when fn returns false.
template <class Fn>
void for_each_window_config(const GroupDesc& g, int window, Fn&& fn) {
    const auto elems = g.elements();
    const int width = 2 * window + 1;
    std::vector<std::size_t> digits(static_cast<std::size_t>(width), 0);
    while (true) {
        LampConfig f;
        for (int i = 0; i < width; ++i) f.set(i - window, elems[digits[static_cast<std::size_t>(i)]]);
        if (!fn(f)) return;
        int i = 0;
        for (; i < width; ++i) {
            auto ui = static_cast<std::size_t>(i);
            if (++digits[ui] < elems.size()) break;
            digits[ui] = 0;
        }
        if (i == width) return;
    }
}

LampConfig random_window_config(const GroupDesc& g, int window, std::mt19937_64& rng) {
    LampConfig f;
    const auto order = static_cast<std::uint64_t>(g.order());
    for (Position p = -window; p <= window; ++p) f.set(p, g.from_index(static_cast<int>(rng() % order)));
    return f;
}

// Least n in [0, bound] with t^n f in Q.
std::optional<int> entry_time(const QSpec& q, const LampConfig& f, int bound) {
    for (int n = 0; n <= bound; ++n)
        if (q.contains(config_shift(f, n))) return n;
    return std::nullopt;
}

void finish_verdict(ConfiningReport& r, bool exhaustive) {
    if (!r.cond_a || !r.cond_b || !r.cond_c) {
        r.verdict = Verdict::not_confining;
    } else if (!exhaustive) {
        r.verdict = Verdict::inconclusive;
    } else {
        r.verdict = r.strictness_witness ? Verdict::strictly_confining : Verdict::confining_not_strict;
    }
}

ConfiningReport check_forward(const QSpec& q, const ConfiningOptions& opt) {
    const GroupDesc& g = q.group();
    const int W = opt.window;
    ConfiningReport r;
    r.window = W;
    r.direction = Direction::t;

    if (auto gens = q.window_generators(W)) {
        // Q is a subgroup containing B+ (or B-): conditions reduce to generators.
        r.mode = "algebraic";
        r.cond_a = true;
        for (const auto& x : *gens)
            if (!q.contains(config_shift(x, 1))) {
                r.cond_a = false;
                r.cond_a_counterexample = x;
                break;
            }
        // Strictness: a member whose preimage under the shift leaves Q.
        for (Position step = 0; step <= 2 * W && !r.strictness_witness; ++step) {
            Position p = step % 2 == 0 ? step / 2 : -(step + 1) / 2;
            if (p < -W || p > W) continue;
            for (const auto& c : g.elements()) {
                if (c.is_zero()) continue;
                LampConfig f = LampConfig::single(p, c);
                if (q.contains(f) && !q.contains(config_shift(f, -1))) {
                    r.strictness_witness = f;
                    break;
                }
            }
        }
        if (!r.strictness_witness)
            for (const auto& x : *gens)
                if (!q.contains(config_shift(x, -1))) {
                    r.strictness_witness = x;
                    break;
                }
        // (b): for a subgroup the worst config is a basis lamp.
        r.cond_b = true;
        for (Position p = -W; p <= W && r.cond_b; ++p)
            for (int j = 0; j < g.rank(); ++j) {
                LampConfig f = basis_lamp(g, p, j);
                auto n = entry_time(q, f, 2 * W);
                if (!n) {
                    r.cond_b = false;
                    r.cond_b_counterexample = f;
                    break;
                }
                r.max_n = std::max(r.max_n, *n);
            }
        r.cond_c = true;
        r.n0 = 0;
        finish_verdict(r, true);
        return r;
    }

    double total = std::pow(static_cast<double>(g.order()), 2 * W + 1);
    const bool exhaustive = total <= static_cast<double>(opt.exhaustive_limit);
    if (!exhaustive && opt.sample_budget <= 0)
        throw BoundExceeded("window too large for exhaustive mode and no sampling budget");
    r.mode = exhaustive ? "exhaustive" : "sampled";
    std::mt19937_64 rng(opt.seed);

    std::vector<LampConfig> domain;
    if (exhaustive) {
        for_each_window_config(g, W, [&](const LampConfig& f) {
            domain.push_back(f);
            return true;
        });
    } else {
        for (std::int64_t i = 0; i < opt.sample_budget; ++i) domain.push_back(random_window_config(g, W, rng));
    }
    std::vector<LampConfig> members;
    for (const auto& f : domain)
        if (q.contains(f)) members.push_back(f);

    r.cond_a = true;
    for (const auto& f : members) {
        if (!q.contains(config_shift(f, 1))) {
            r.cond_a = false;
            r.cond_a_counterexample = f;
            break;
        }
        if (!r.strictness_witness && !q.contains(config_shift(f, -1))) r.strictness_witness = f;
    }
    r.cond_b = true;
    for (const auto& f : domain) {
        auto n = entry_time(q, f, 2 * W);
        if (!n) {
            r.cond_b = false;
            r.cond_b_counterexample = f;
            break;
        }
        r.max_n = std::max(r.max_n, *n);
    }

    // (c): least n0 for which every checked pair passes.
    const double pairs = static_cast<double>(members.size()) * static_cast<double>(members.size());
    const bool all_pairs = exhaustive && pairs <= 4e6;
    r.cond_c = false;
    for (int n0 = 0; n0 <= opt.n0_max && !r.cond_c; ++n0) {
        bool ok = true;
        auto test = [&](const LampConfig& a, const LampConfig& b) {
            if (q.contains(config_shift(config_add(a, b, g), n0))) return true;
            if (!r.cond_c_counterexample) r.cond_c_counterexample = std::make_pair(a, b);
            return false;
        };
        if (all_pairs) {
            for (std::size_t i = 0; i < members.size() && ok; ++i)
                for (std::size_t j = i; j < members.size() && ok; ++j) ok = test(members[i], members[j]);
        } else if (!members.empty()) {
            std::mt19937_64 pick(opt.seed + static_cast<std::uint64_t>(n0) + 1);
            for (std::int64_t s = 0; s < opt.sample_budget && ok; ++s)
                ok = test(members[pick() % members.size()], members[pick() % members.size()]);
        }
        if (ok) {
            r.cond_c = true;
            r.n0 = n0;
            r.cond_c_counterexample.reset();
        }
    }
    finish_verdict(r, exhaustive && all_pairs);
    return r;
}

}  // namespace

ConfiningReport check_confining(const QSpec& q, Direction direction, const ConfiningOptions& options) {
    if (options.window < 1) throw PreconditionViolated("window must be >= 1");
    if (direction == Direction::t) return check_forward(q, options);
    ConfiningReport r = check_forward(q.mirror(), options);
    r.direction = Direction::t_inv;
    auto back = [](std::optional<LampConfig>& f) {
        if (f) *f = config_mirror(*f);
    };
    back(r.strictness_witness);
    back(r.cond_a_counterexample);
    back(r.cond_b_counterexample);
    if (r.cond_c_counterexample)
        r.cond_c_counterexample = std::make_pair(config_mirror(r.cond_c_counterexample->first),
                                                 config_mirror(r.cond_c_counterexample->second));
    return r;
}

// ---------------------------------------------------------------------------
// Saturation

SubgroupDesc SaturationState::certified_at(Position position, const GroupDesc& g) const {
    auto it = lamps.find(position);
    if (it == lamps.end()) return subgroup_closure({}, g);
    return subgroup_closure(it->second, g);
}

bool SaturationState::covers_qtilde(const SubgroupDesc& h, const GroupDesc& g) const {
    if (n0 != 0) return false;
    for (Position i = 1; i <= window; ++i)
        if (!h.is_subset_of(certified_at(mirrored ? i : -i, g))) return false;
    return true;
}

namespace {

class Saturator {
public:
    Saturator(const QSpec& q, const SaturationOptions& opt) : q_(q), g_(q.group()), opt_(opt) {
        state_.window = opt.window;
        state_.n0 = opt.n0;
    }

    SaturationState run() {
        for (const auto& b : bplus_lamps(g_, opt_.window)) {
            if (!q_.contains(b)) throw PreconditionViolated("saturation needs B+ inside Q");
            add(b, "bplus", {}, false);
        }
        for (const auto& s : q_.seeds(opt_.window)) {
            std::size_t at = add(s, "seed", {}, false);
            LampConfig n = strip(s);
            if (!(n == s)) add(n, "strip", {at});
            else work_.push_back(at);
        }
        while (true) {
            while (!work_.empty()) {
                if (state_.iterations >= opt_.iteration_cap) {
                    state_.partial = true;
                    return finish();
                }
                ++state_.iterations;
                std::size_t i = work_.front();
                work_.pop_front();
                process(i);
            }
            // New lamps may unlock eliminations on older elements.
            std::size_t before = state_.known.size();
            for (std::size_t i = 0; i < before; ++i) eliminate(i);
            if (state_.known.size() == before) break;
        }
        return finish();
    }

private:
    // Adds a derived element; B- elements are queued for processing.
    std::size_t add(const LampConfig& f, const std::string& rule, std::vector<std::size_t> from, bool queue = true) {
        auto it = index_.find(f);
        if (it != index_.end()) return it->second;
        std::size_t id = state_.known.size();
        state_.known.push_back(f);
        index_.emplace(f, id);
        state_.trace.push_back({rule, std::move(from), id});
        if (queue && !f.empty() && f.max_position() < 0) work_.push_back(id);
        return id;
    }

    // Adds -pos(x) from B+ and shifts by n0 until only negative lamps remain.
    LampConfig strip(LampConfig x) const {
        while (!x.empty() && x.max_position() >= 0) x = config_shift(negative_part(x), opt_.n0);
        return x;
    }

    LampConfig sum_shift(const LampConfig& a, const LampConfig& b) const {
        return config_shift(config_add(a, b, g_), opt_.n0);
    }

    // m x built by m-1 sum-shifts against shifted copies of x.
    LampConfig scaled(const LampConfig& x, int m) const {
        return config_shift(config_scale(x, m, g_), static_cast<Position>(m - 1) * opt_.n0);
    }

    bool lamp_certified(Position p, const Coeff& c) const {
        auto it = state_.lamps.find(p);
        return it != state_.lamps.end() && std::find(it->second.begin(), it->second.end(), c) != it->second.end();
    }

    void derive(const LampConfig& raw, const std::string& rule, std::vector<std::size_t> from) {
        LampConfig y = strip(raw);
        if (y.empty() || y.min_position() < -opt_.window) return;
        add(y, rule, std::move(from));
    }

    void process(std::size_t id) {
        const LampConfig x = state_.known[id];
        const auto& e = x.entries();
        auto first = e.begin();
        const Position p1 = first->first;
        const Coeff g1 = first->second;

        if (e.size() == 1) {
            auto& slot = state_.lamps[p1];
            if (std::find(slot.begin(), slot.end(), g1) == slot.end()) slot.push_back(g1);
            if (p1 + 1 < 0) derive(config_shift(x, 1), "shift", {id});
            for (const auto& d : std::vector<Coeff>(slot)) {
                auto other = index_.find(LampConfig::single(p1, d));
                if (other == index_.end()) continue;
                derive(sum_shift(x, other->first), "sum-shift", {id, other->second});
            }
            return;
        }

        auto second = std::next(first);
        const Position p2 = second->first;
        const Coeff g2 = second->second;
        const int o1 = g_.order_of(g1), o2 = g_.order_of(g2);

        // Recover the leading lamp by pushing the second term to position 0.
        derive(config_shift(x, -p2), "recover", {id});

        if (o1 == o2) {
            for (int l = 1; l < o1; ++l) {
                if (!g_.add(g_.scale(g1, l), g2).is_zero()) continue;
                // x + l t^d x cancels the second term; with n0 the summands are realigned.
                LampConfig shifted = config_scale(config_shift(x, p2 - p1), l, g_);
                derive(config_shift(config_add(x, shifted, g_), static_cast<Position>(l) * opt_.n0), "case3a", {id});
                break;
            }
        } else if (o1 > o2) {
            derive(scaled(x, o2), "case3b", {id});
        } else {
            derive(scaled(x, o1), "case3c", {id});
        }
        eliminate(id);
    }

    // Removes every term whose negation is a certified lamp.
    void eliminate(std::size_t id) {
        const LampConfig x = state_.known[id];
        if (x.size() < 2 || x.max_position() >= 0) return;
        LampConfig acc = x;
        std::vector<std::size_t> from{id};
        for (const auto& [p, v] : x.entries()) {
            Coeff minus = g_.neg(v);
            if (!lamp_certified(p, minus)) continue;
            LampConfig lamp = LampConfig::single(p, minus);
            from.push_back(index_.at(lamp));
            acc = opt_.n0 == 0 ? config_add(acc, lamp, g_) : sum_shift(acc, lamp);
            if (opt_.n0 != 0) break;
        }
        if (from.size() > 1) derive(acc, "eliminate", std::move(from));
    }

    SaturationState finish() {
        for (const auto& f : state_.known)
            if (!q_.contains(f)) state_.sound = false;
        for (auto& [p, cs] : state_.lamps) std::sort(cs.begin(), cs.end());
        return std::move(state_);
    }

    const QSpec& q_;
    const GroupDesc& g_;
    SaturationOptions opt_;
    SaturationState state_;
    std::map<LampConfig, std::size_t> index_;
    std::deque<std::size_t> work_;
};

}  // namespace

SaturationState saturate(const QSpec& q, const SaturationOptions& options) {
    if (options.window < 1) throw PreconditionViolated("window must be >= 1");
    if (options.n0 < 0) throw PreconditionViolated("n0 must be >= 0");
    if (!q.mirrored()) return Saturator(q, options).run();
    SaturationState s = Saturator(q.mirror(), options).run();
    s.mirrored = true;
    for (auto& f : s.known) f = config_mirror(f);
    std::map<Position, std::vector<Coeff>> lamps;
    for (auto& [p, cs] : s.lamps) lamps[-p] = std::move(cs);
    s.lamps = std::move(lamps);
    return s;
}

// ---------------------------------------------------------------------------
// Recovery

RecoveryResult recover_subgroup(const QSpec& q, int window, int depth, std::int64_t iteration_cap) {
    if (depth < 0) depth = (window + 1) / 2;
    if (depth >= window) throw PreconditionViolated("depth threshold must be below the window");
    if (depth < 1) throw PreconditionViolated("depth threshold must be positive");
    ConfiningOptions copt;
    copt.window = window;
    ConfiningReport report = check_confining(q, Direction::t, copt);
    if (report.verdict != Verdict::strictly_confining)
        throw PreconditionViolated("recover_subgroup needs Q strictly confining for t (got " +
                                   to_string(report.verdict) + ")");

    const GroupDesc& g = q.group();
    std::vector<LampConfig> members;
    if (auto gens = q.window_generators(window)) {
        members = std::move(*gens);
    } else if (std::pow(static_cast<double>(g.order()), 2 * window + 1) <= 1 << 16) {
        for_each_window_config(g, window, [&](const LampConfig& f) {
            if (q.contains(f)) members.push_back(f);
            return true;
        });
    } else {
        members = q.seeds(window);
    }
    std::vector<Coeff> deep;
    for (const auto& f : members)
        for (const auto& [p, c] : f.entries())
            if (p <= -depth) deep.push_back(c);

    RecoveryResult out;
    out.subgroup = subgroup_closure(deep, g);
    out.window = window;
    out.depth = depth;
    if (out.subgroup.is_trivial()) {
        out.certified = true;
        out.note = "trivial subgroup";
        return out;
    }
    if (!g.is_cyclic()) {
        out.note = "certification applies to cyclic coefficient groups only";
        return out;
    }
    SaturationOptions sopt;
    sopt.window = 2 * window;
    sopt.iteration_cap = iteration_cap;
    sopt.n0 = report.n0.value_or(0);
    SaturationState s = saturate(q, sopt);
    SubgroupDesc deepest = s.certified_at(-window, g);
    for (const auto& h : deepest.elements())
        if (out.subgroup.contains(h) && g.order_of(h) == out.subgroup.order()) out.certified = true;
    if (!s.sound) out.certified = false;
    out.note = out.certified ? "lamps h t^-i certified for i <= window"
                             : (s.partial ? "saturation hit the iteration cap" : "saturation did not certify a generator");
    return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::int64_t q_length_proxy(const QSpec& q, const LampConfig& f, int cap) {
    if (q.contains(f)) return f.empty() ? 0 : 1;
    // t^-n (t^n f) t^n with t^n f a single generator.
    for (int n = 1; n <= cap; ++n)
        if (q.contains(config_shift(f, n))) return 2 * n + 1;
    return 2 * cap + 3;
}

bool family_refutes(const std::vector<std::int64_t>& idx, const std::vector<std::int64_t>& a,
                    const std::vector<std::int64_t>& b, std::int64_t depth) {
    std::vector<std::size_t> tail;
    for (std::size_t k = 0; k < idx.size(); ++k)
        if (idx[k] > depth / 2) tail.push_back(k);
    if (tail.size() < 2) return false;
    auto constant = [&](const std::vector<std::int64_t>& v) {
        for (auto k : tail)
            if (v[k] != v[tail.front()]) return false;
        return true;
    };
    auto linear = [&](const std::vector<std::int64_t>& v) {
        for (auto k : tail)
            if (v[k] < idx[k]) return false;
        return true;
    };
    return (constant(a) && linear(b)) || (constant(b) && linear(a));
}

}  // namespace

ValidationReport validate_equivalence(const QSpec& q_in, const SubgroupDesc& h, int depth) {
    if (depth < 2) throw PreconditionViolated("validation depth must be >= 2");
    const QSpec q = q_in.mirrored() ? q_in.mirror() : q_in;
    const GroupDesc& g = q.group();
    const int cap = 4 * depth + 8;
    ValidationReport rep;
    rep.depth = depth;

    auto run = [&](const std::string& name, const std::function<std::optional<LampConfig>(std::int64_t)>& fam) {
        ValidationFamily vf;
        vf.name = name;
        std::vector<std::int64_t> idx;
        for (std::int64_t i = 1; i <= depth; ++i) {
            auto f = fam(i);
            if (!f) continue;
            idx.push_back(i);
            vf.q_side.push_back(q_length_proxy(q, *f, cap));
            vf.h_side.push_back(wordlen_qp(Element::base(*f), h, Side::plus, g));
        }
        vf.refutes = family_refutes(idx, vf.q_side, vf.h_side, depth);
        rep.refuted = rep.refuted || vf.refutes;
        rep.families.push_back(std::move(vf));
    };
    if (q.witness(2)) run("witness", [&](std::int64_t i) { return q.witness(i); });
    for (const auto& c : g.elements()) {
        if (c.is_zero()) continue;
        run("lamp " + g.format(c), [&](std::int64_t i) { return LampConfig::single(-i, c); });
    }
    return rep;
}

}  // namespace wreathscope
