#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace wreathscope {

/// Submodule of (Z_N)^d kept in Howell form, so membership is decided by a
/// single reduction pass. Over N = 2 this is Gaussian elimination over the
/// two-element field.
class ModularSpan {
public:
    ModularSpan(int modulus, std::size_t dimension);

    int modulus() const noexcept { return modulus_; }
    std::size_t dimension() const noexcept { return dimension_; }

    /// Adds a generator; returns true when the span grew.
    bool insert(std::span<const int> v);
    bool contains(std::span<const int> v) const;
    /// Number of elements in the span.
    double cardinality() const;
    std::size_t rank() const;
    /// Howell rows ordered by pivot column. The rows with pivot >= k span
    /// the elements that vanish on the first k columns.
    std::vector<std::vector<int>> basis() const;

private:
    using Row = std::vector<int>;

    Row reduce(Row v) const;
    void absorb(Row v);

    int modulus_;
    std::size_t dimension_;
    // pivots_[j] is the row whose first nonzero entry is in column j.
    std::vector<std::optional<Row>> pivots_;
};

}  // namespace wreathscope
