#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wreathscope/metrics.hpp"

namespace wreathscope {

/// All subgroups (or all proper ones), ordered by (order, element list).
std::vector<SubgroupDesc> enumerate_subgroups(const GroupDesc& g, bool proper_only);

enum class StructureKind { elliptic, lineal, quasi_parabolic, general_type };
std::string to_string(StructureKind kind);

struct StructureNode {
    int id = 0;
    StructureKind kind = StructureKind::elliptic;
    GenSetDesc descriptor;
};

/// B(G): one elliptic node, one lineal node, and QPlus(H), QMinus(H) for
/// every proper subgroup H. Node ids: 0 trivial, 1 lineal, then the plus
/// copy in subgroup order, then the minus copy.
struct Poset {
    GroupDesc group;
    std::vector<StructureNode> nodes;
    std::vector<std::pair<int, int>> relation;  // (a, b) means a < b
    std::vector<std::pair<int, int>> hasse;     // covering pairs

    bool less(int a, int b) const;
    std::size_t count(StructureKind kind) const;
};

Poset build_B_poset(const GroupDesc& g);

/// Strict order pairs -> covering pairs, computed independently of the
/// construction of the relation.
std::vector<std::pair<int, int>> transitive_reduction(std::size_t n, const std::vector<std::pair<int, int>>& relation);

enum class Comparison { equivalent, x_below_y, y_below_x, incomparable };
std::string to_string(Comparison c);

/// Relation between two nodes of the same poset. x_below_y means x < y in
/// B(G). Exhaustive for cyclic G; for other G it is a statement about B(G) only.
Comparison compare_exact(const Poset& poset, int x, int y);

/// Sup of |s|_Y over a schedule of elements s of X.
struct SupEvidence {
    bool bounded = false;
    std::int64_t value = 0;             // sup when bounded
    std::vector<std::int64_t> sequence;  // max over family i = 1..depth
};

struct EmpiricalReport {
    SupEvidence sup_x_in_y;
    SupEvidence sup_y_in_x;
    int window = 0;
    int depth = 0;
};

/// Evaluates |s|_Y for generators s of X with support in [-window, window]
/// and for the witness families (single lamps c at -i and at +i, t^i for
/// the trivial set) for i = 1..depth. Bounded means the running maximum did
/// not grow over the second half of the family; this is evidence only.
EmpiricalReport compare_empirical(const GenSetDesc& x, const GenSetDesc& y, const GroupDesc& g, int window,
                                  int depth);

/// 2 * #{d | n : d < n}.
std::int64_t qp_count(std::int64_t n);

std::string node_label(const StructureNode& node, const GroupDesc& g);
std::string poset_to_dot(const Poset& poset);

}  // namespace wreathscope
