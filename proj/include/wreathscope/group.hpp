#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wreathscope {

inline constexpr int kDefaultOrderBound = 64;

/// Element of a finite abelian group Z_{n_1} x ... x Z_{n_r}, stored as its
/// residue vector. Values are always reduced into [0, n_i).
struct Coeff {
    std::vector<int> residues;

    bool is_zero() const noexcept;

    friend bool operator==(const Coeff&, const Coeff&) = default;
    friend auto operator<=>(const Coeff&, const Coeff&) = default;
};

/// A direct product of cyclic groups. The order is capped at `order_bound`
/// so that subgroup enumeration by closure stays tractable.
class GroupDesc {
public:
    explicit GroupDesc(std::vector<int> orders, int order_bound = kDefaultOrderBound);

    /// Accepts "Z12", "Z2xZ2", "Z_4 x Z_2" (case-insensitive 'z'/'x').
    static GroupDesc parse(std::string_view text, int order_bound = kDefaultOrderBound);

    const std::vector<int>& orders() const noexcept { return orders_; }
    int rank() const noexcept { return static_cast<int>(orders_.size()); }
    int order() const noexcept { return order_; }
    /// Exponent of the group (lcm of the factor orders).
    int exponent() const noexcept { return exponent_; }
    /// True when the group is cyclic, i.e. the factor orders are pairwise coprime.
    bool is_cyclic() const noexcept { return exponent_ == order_; }
    /// True for a single factor Z_n (the only case where bare integer
    /// coefficients are accepted by the polynomial grammar).
    bool single_factor() const noexcept { return orders_.size() == 1; }

    std::string name() const;

    Coeff zero() const;
    Coeff make(std::vector<int> residues) const;  // reduces each residue mod n_i
    Coeff unit(int factor) const;                  // generator of the factor-th cyclic factor

    void validate(const Coeff& a) const;  // throws GroupMismatch
    bool valid(const Coeff& a) const noexcept;

    Coeff add(const Coeff& a, const Coeff& b) const;
    Coeff neg(const Coeff& a) const;
    Coeff sub(const Coeff& a, const Coeff& b) const { return add(a, neg(b)); }
    Coeff scale(const Coeff& a, std::int64_t k) const;
    /// Least k >= 1 with k*a = 0.
    int order_of(const Coeff& a) const;

    /// Mixed-radix index with the first factor most significant, so index
    /// order coincides with lexicographic residue order.
    int index(const Coeff& a) const;
    Coeff from_index(int index) const;
    std::vector<Coeff> elements() const;

    std::string format(const Coeff& a) const;

    friend bool operator==(const GroupDesc& a, const GroupDesc& b) { return a.orders_ == b.orders_; }

private:
    std::vector<int> orders_;
    int order_ = 1;
    int exponent_ = 1;
};

inline Coeff coeff_add(const Coeff& a, const Coeff& b, const GroupDesc& g) { return g.add(a, b); }
inline int coeff_order(const Coeff& a, const GroupDesc& g) { return g.order_of(a); }

/// A subgroup of a GroupDesc together with the generators it was built from.
/// `elements` is the full closure in canonical (index) order.
class SubgroupDesc {
public:
    SubgroupDesc() = default;
    SubgroupDesc(std::vector<Coeff> generators, std::vector<Coeff> elements);

    const std::vector<Coeff>& generators() const noexcept { return generators_; }
    const std::vector<Coeff>& elements() const noexcept { return elements_; }
    int order() const noexcept { return static_cast<int>(elements_.size()); }
    bool contains(const Coeff& c) const;
    bool is_trivial() const noexcept { return elements_.size() <= 1; }
    bool is_subset_of(const SubgroupDesc& other) const;

    /// "{}" for the trivial group, else "{2,4,6}" / "{(0,1)}" listing all elements but 0.
    std::string format(const GroupDesc& g) const;

    friend bool operator==(const SubgroupDesc& a, const SubgroupDesc& b) { return a.elements_ == b.elements_; }

private:
    std::vector<Coeff> generators_;
    std::vector<Coeff> elements_;
};

/// Smallest subgroup containing `gens`, computed by closing under addition.
SubgroupDesc subgroup_closure(std::span<const Coeff> gens, const GroupDesc& g);

/// Parses a generator list such as "{}", "{2}", "{4,6}", "{(0,1),(1,1)}".
SubgroupDesc parse_subgroup(std::string_view text, const GroupDesc& g);

}  // namespace wreathscope
