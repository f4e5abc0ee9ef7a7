#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wreathscope/config.hpp"

namespace wreathscope {

enum class Side { plus, minus };

/// Symbolic generating set of G wr Z. Every variant is used symmetrized.
///   standard  {a_j^{+-1}, t^{+-1}}        finite, not hyperbolic
///   qplus(H)  S_H  = {Q_H,  t^{+-1}}      Q_H  = {f : f(-i) in H for i > 0}
///   qminus(H) S'_H = {Q'_H, t^{+-1}}      Q'_H = {f : f(i)  in H for i > 0}
///   lineal    A u {t^{+-1}}
///   trivial   the whole group
struct GenSetDesc {
    enum class Variant { standard, qplus, qminus, lineal, trivial };

    Variant variant = Variant::standard;
    std::optional<SubgroupDesc> subgroup;  // set for qplus / qminus

    static GenSetDesc standard() { return {Variant::standard, std::nullopt}; }
    static GenSetDesc lineal() { return {Variant::lineal, std::nullopt}; }
    static GenSetDesc trivial() { return {Variant::trivial, std::nullopt}; }
    static GenSetDesc qp(SubgroupDesc h, Side side) {
        return {side == Side::plus ? Variant::qplus : Variant::qminus, std::move(h)};
    }

    bool is_qp() const noexcept { return variant == Variant::qplus || variant == Variant::qminus; }
    Side side() const noexcept { return variant == Variant::qminus ? Side::minus : Side::plus; }

    /// "standard", "lineal", "trivial", "qp+:{2}", "qp-:{}".
    std::string name(const GroupDesc& g) const;
    static GenSetDesc parse(std::string_view text, const GroupDesc& g);

    /// Membership of a base element in the base part of the generating set.
    bool base_contains(const LampConfig& q, const GroupDesc& g) const;
};

/// Witness for a closed-form word length. `visits` is the cursor path in
/// unit steps starting at 0; each burst applies a generator right after the
/// cursor reaches visits[step]. Replaying the plan through elem_mul yields
/// the target, and cost = (visits.size() - 1) + bursts.size().
struct WalkPlan {
    struct Burst {
        std::size_t step = 0;
        Element generator;
    };
    std::vector<std::int64_t> visits{0};
    std::vector<Burst> bursts;
    std::int64_t cost = 0;
};

Element replay(const WalkPlan& plan, const GroupDesc& g);

/// |g| for S_H (side plus) or S'_H (side minus).
std::int64_t wordlen_qp(const Element& x, const SubgroupDesc& h, Side side, const GroupDesc& g);
WalkPlan plan_qp(const Element& x, const SubgroupDesc& h, Side side, const GroupDesc& g);

/// |g| for the finite generating set {a_j^{+-1}, t^{+-1}}.
std::int64_t wordlen_standard(const Element& x, const GroupDesc& g);
WalkPlan plan_standard(const Element& x, const GroupDesc& g);

/// |g| for A u {t^{+-1}}.
std::int64_t wordlen_lineal(const Element& x);
WalkPlan plan_lineal(const Element& x);

std::int64_t wordlen_trivial(const Element& x);

std::int64_t wordlen(const Element& x, const GenSetDesc& gens, const GroupDesc& g);
WalkPlan plan(const Element& x, const GenSetDesc& gens, const GroupDesc& g);
/// d(x, y) = |x^{-1} y|.
std::int64_t distance(const Element& x, const Element& y, const GenSetDesc& gens, const GroupDesc& g);

/// Word length of a coefficient in G with respect to {e_j^{+-1}}, by BFS over G.
int coeff_word_length(const Coeff& c, const GroupDesc& g);

/// The Busemann character of every structure in B(G): g -> shift.
inline std::int64_t busemann(const Element& x) noexcept { return x.shift; }

/// State cap for bfs_wordlen. Defaults to 2^25 states and is overridden by the
/// WREATHSCOPE_STATE_LIMIT environment variable.
std::uint64_t default_state_limit();

/// Breadth-first distances on the truncated state space: lamp configurations
/// supported in [-window, window] (lamp frame) times cursors in
/// [-cursor_bound, cursor_bound]. Moves are t^{+-1} and base generators of
/// the set whose application keeps the support inside the window. One
/// search answers every query.
class BfsOracle {
public:
    BfsOracle(const GroupDesc& g, const GenSetDesc& gens, int window, int cursor_bound,
              std::uint64_t state_limit = default_state_limit());

    /// nullopt means unreachable inside the window. Throws WindowExceeded if
    /// the target does not fit the window.
    std::optional<std::int64_t> distance(const Element& x) const;

    int window() const noexcept { return window_; }
    int cursor_bound() const noexcept { return cursor_bound_; }
    std::uint64_t state_count() const noexcept { return dist_.size(); }

private:
    std::uint64_t encode(const Element& x) const;

    GroupDesc group_;
    int window_;
    int cursor_bound_;
    std::uint64_t configs_ = 1;
    std::vector<std::uint16_t> dist_;
};

std::optional<std::int64_t> bfs_wordlen(const Element& x, const GenSetDesc& gens, int window, int cursor_bound,
                                        const GroupDesc& g, std::uint64_t state_limit = default_state_limit());

/// Four-point delta estimate. `twice_delta` is the largest observed gap
/// between the two largest pair sums; delta = twice_delta / 2. This is an
/// estimator over sampled quadruples, not a certificate.
struct DeltaEstimate {
    std::int64_t twice_delta = 0;
    std::int64_t radius = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    double value() const noexcept { return static_cast<double>(twice_delta) / 2.0; }
};

/// Defect of one quadruple: (largest - second largest) of the three pair sums.
std::int64_t four_point_defect(std::int64_t dwx, std::int64_t dyz, std::int64_t dwy, std::int64_t dxz,
                               std::int64_t dwz, std::int64_t dxy);

/// Seeded sampler for elements within distance `radius` of the identity whose
/// lamp support and cursor lie in [-radius, radius].
class BallSampler {
public:
    BallSampler(const GenSetDesc& gens, const GroupDesc& g, std::int64_t radius, std::uint64_t seed);
    /// Throws PreconditionViolated when no element can be produced.
    Element next();

private:
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    GenSetDesc gens_;
    GroupDesc group_;
    std::int64_t radius_;
    std::mt19937_64 rng_;
};

DeltaEstimate delta_four_point(const GenSetDesc& gens, const GroupDesc& g, std::int64_t radius,
                               std::int64_t samples, std::uint64_t seed);

}  // namespace wreathscope
