#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wreathscope/metrics.hpp"

namespace wreathscope {

/// A subset Q of the base A with decidable membership.
///
/// Built-ins are described in "plus" orientation (the interesting half is
/// at negative positions); the mirrored flag applies t -> t^{-1}, turning
/// Q_H into Q'_H and B+ into B-.
///
///   qh(H)            Q_H = {f : f(p) in H for p < 0}
///   bplus            B+  = {f : f(p) = 0 for p < 0}
///   fullbase         A
///   span_family      B+ + span{t^j c_i : j >= 0, i >= 2}; c_i is one of
///                    the named families "counterexample" (over Z2xZ2,
///                    (0,1)t^-i + (1,0)t^-i+1) or "z8" (over Z8,
///                    4t^-i + 2t^-i+1 + t^-1)
///   custom           listed configs closed under the chosen operations
///   predicate        arbitrary membership function
class QSpec {
public:
    enum class Kind { qh, bplus, fullbase, span_family, custom, predicate };

    struct CustomFamily {
        std::vector<LampConfig> configs;
        bool shift_closed = false;
        bool sum_closed = false;
        bool bplus_closed = false;
    };

    static QSpec qh(const GroupDesc& g, SubgroupDesc h, Side side = Side::plus);
    static QSpec bplus(const GroupDesc& g);
    static QSpec bminus(const GroupDesc& g);
    static QSpec fullbase(const GroupDesc& g);
    /// family is "counterexample" or "z8".
    static QSpec span_family(const GroupDesc& g, const std::string& family);
    static QSpec counterexample();
    static QSpec z8_example();
    static QSpec custom(const GroupDesc& g, CustomFamily family);
    static QSpec predicate(const GroupDesc& g, std::string name, std::function<bool(const LampConfig&)> fn);

    /// Built-in names: qh:Z4:{2}, qh-:Z4:{2}, bplus:Z2, bminus:Z2,
    /// fullbase:Z3, counterexample, z8example.
    static QSpec builtin(std::string_view name);

    Kind kind() const noexcept { return kind_; }
    const GroupDesc& group() const noexcept { return group_; }
    bool mirrored() const noexcept { return mirrored_; }
    const std::optional<SubgroupDesc>& subgroup() const noexcept { return subgroup_; }
    const std::string& family_name() const noexcept { return family_; }
    const CustomFamily& custom_family() const noexcept { return custom_; }
    /// Extra depth used when a span has to be truncated to a finite range.
    int horizon_margin() const noexcept { return margin_; }
    void set_horizon_margin(int m) { margin_ = m; }
    std::string name() const;

    /// Image under t -> t^{-1}.
    QSpec mirror() const;

    /// Exact for the built-ins on any finite config. For span families other
    /// than the counterexample and for custom sums the span is truncated
    /// horizon_margin() positions below the config.
    bool contains(const LampConfig& f) const;

    /// Generators of the group Q restricted to [-window, window], when Q is
    /// known to be a subgroup containing B+ (or its mirror). nullopt otherwise.
    std::optional<std::vector<LampConfig>> window_generators(int window) const;

    /// Members of Q inside [-window, -1] to start saturation from.
    std::vector<LampConfig> seeds(int window) const;

    /// A family x_i of members (i >= 1) used as witnesses by validation, or
    /// nullopt when Q has none.
    std::optional<LampConfig> witness(std::int64_t i) const;

private:
    QSpec(Kind kind, GroupDesc g) : kind_(kind), group_(std::move(g)) {}

    bool contains_plus(const LampConfig& f) const;
    std::optional<std::vector<LampConfig>> generators_plus(int window) const;
    std::vector<LampConfig> seeds_plus(int window) const;
    std::optional<LampConfig> witness_plus(std::int64_t i) const;

    // Span family helpers (plus orientation).
    LampConfig family_member(std::int64_t i) const;
    std::vector<LampConfig> negative_generators(Position lowest) const;
    bool span_closed_bplus() const;

    Kind kind_;
    GroupDesc group_;
    bool mirrored_ = false;
    std::optional<SubgroupDesc> subgroup_;
    std::string family_;
    CustomFamily custom_;
    std::shared_ptr<const std::function<bool(const LampConfig&)>> predicate_;
    std::string predicate_name_;
    int margin_ = 0;
};

bool q_membership(const LampConfig& f, const QSpec& q);

enum class Direction { t, t_inv };
std::string to_string(Direction d);

enum class Verdict { strictly_confining, confining_not_strict, not_confining, inconclusive };
std::string to_string(Verdict v);

struct ConfiningOptions {
    int window = 4;
    int n0_max = 4;
    /// Used when the window is too large for enumeration.
    std::int64_t sample_budget = 20000;
    std::uint64_t seed = 0;
    /// Largest |G|^(2W+1) enumerated exhaustively.
    std::uint64_t exhaustive_limit = std::uint64_t{1} << 16;
};

struct ConfiningReport {
    Direction direction = Direction::t;
    int window = 0;
    std::string mode;  // algebraic | exhaustive | sampled

    bool cond_a = false;
    std::optional<LampConfig> strictness_witness;  // member f with shift^{-1} f not in Q
    std::optional<LampConfig> cond_a_counterexample;

    bool cond_b = false;
    int max_n = 0;
    std::optional<LampConfig> cond_b_counterexample;

    bool cond_c = false;
    std::optional<int> n0;
    std::optional<std::pair<LampConfig, LampConfig>> cond_c_counterexample;

    Verdict verdict = Verdict::inconclusive;
    bool lineal() const noexcept { return verdict == Verdict::confining_not_strict; }
};

/// Checks conditions (a), (b), (c) on [-W, W]. Direction t_inv runs the t
/// check on q.mirror() and maps witnesses back.
ConfiningReport check_confining(const QSpec& q, Direction direction, const ConfiningOptions& options = {});

struct TraceEntry {
    std::string rule;             // seed | bplus | shift | sum-shift | scale | recover | case3a | case3b | case3c | eliminate | lamp-closure
    std::vector<std::size_t> from;  // indices into SaturationState::known
    std::size_t result = 0;
};

struct SaturationState {
    int window = 0;
    int n0 = 0;
    bool mirrored = false;
    std::vector<LampConfig> known;
    std::vector<TraceEntry> trace;
    /// Certified single lamps: position -> coefficients c with c t^p in Q.
    std::map<Position, std::vector<Coeff>> lamps;
    bool partial = false;   // iteration cap reached
    bool sound = true;      // every known element passed q_membership
    std::int64_t iterations = 0;

    /// Subgroup generated by the coefficients certified at `position`
    /// (negative positions in plus orientation; mirrored otherwise).
    SubgroupDesc certified_at(Position position, const GroupDesc& g) const;
    /// True when every h t^p with h in H and p in [-window, -1] is certified
    /// and sums need no extra shift (n0 = 0), so all of Q~_H on the window
    /// follows by addition.
    bool covers_qtilde(const SubgroupDesc& h, const GroupDesc& g) const;
};

struct SaturationOptions {
    int window = 4;
    std::int64_t iteration_cap = 20000;
    int n0 = 0;
};

SaturationState saturate(const QSpec& q, const SaturationOptions& options = {});

struct RecoveryResult {
    SubgroupDesc subgroup;
    bool certified = false;
    int window = 0;
    int depth = 0;
    std::string note;
};

/// Precondition: check_confining(q, t) is strictly confining and depth < window.
/// depth < 0 selects ceil(window / 2).
RecoveryResult recover_subgroup(const QSpec& q, int window, int depth = -1, std::int64_t iteration_cap = 20000);

struct ValidationFamily {
    std::string name;
    std::vector<std::int64_t> q_side;   // length in {Q, t^{+-1}} (member -> 1, else 2n+1 upper bound)
    std::vector<std::int64_t> h_side;   // wordlen_qp(., H)
    bool refutes = false;
};

struct ValidationReport {
    bool refuted = false;
    int depth = 0;
    std::vector<ValidationFamily> families;
};

/// Compares {Q, t^{+-1}} with S_H on witness families for i = 1..depth.
/// A family refutes when over the second half one side is constant and the
/// other is at least i.
ValidationReport validate_equivalence(const QSpec& q, const SubgroupDesc& h, int depth);

}  // namespace wreathscope
