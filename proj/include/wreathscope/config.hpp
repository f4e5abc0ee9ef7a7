#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "wreathscope/group.hpp"

namespace wreathscope {

using Position = std::int64_t;

/// Finitely supported map Z -> G, i.e. an element of the base A (a Laurent
/// polynomial over G). Identity coefficients are never stored, so structural
/// equality is group equality.
class LampConfig {
public:
    using Map = std::map<Position, Coeff>;

    LampConfig() = default;
    static LampConfig single(Position p, Coeff c);

    const Map& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Stored coefficient at `p`, or nullopt for the identity.
    std::optional<Coeff> find(Position p) const;
    Coeff at(Position p, const GroupDesc& g) const;
    /// Overwrites the value at `p`; the identity erases the entry.
    void set(Position p, Coeff c);

    Position min_position() const;  // requires !empty()
    Position max_position() const;  // requires !empty()
    /// True when the support lies inside [lo, hi] (vacuously for empty).
    bool supported_in(Position lo, Position hi) const;

    friend bool operator==(const LampConfig&, const LampConfig&) = default;
    friend auto operator<=>(const LampConfig&, const LampConfig&) = default;

private:
    Map entries_;
};

/// result(p + k) = f(p): k = 1 is multiplication by t (right shift).
LampConfig config_shift(const LampConfig& f, Position k);
LampConfig config_add(const LampConfig& f, const LampConfig& h, const GroupDesc& g);
LampConfig config_neg(const LampConfig& f, const GroupDesc& g);
LampConfig config_sub(const LampConfig& f, const LampConfig& h, const GroupDesc& g);
LampConfig config_scale(const LampConfig& f, std::int64_t k, const GroupDesc& g);
/// Image under t -> t^{-1}: position p moves to -p.
LampConfig config_mirror(const LampConfig& f);
/// Restriction to positions < 0 (resp. >= 0).
LampConfig negative_part(const LampConfig& f);
LampConfig nonnegative_part(const LampConfig& f);
void validate_config(const LampConfig& f, const GroupDesc& g);

/// Wreath-product element in normal form t^shift * config.
///
/// Two frames are in use. The normal-form `config` b is the base factor of
/// t^m b. The lamp frame is what the lamplighter sees: lamps
/// config_shift(b, m) with the cursor at m. Right multiplication by t moves
/// the cursor; right multiplication by a base element q adds q translated
/// to the cursor position. Word metrics are stated in the lamp frame.
struct Element {
    LampConfig config;
    std::int64_t shift = 0;

    static Element identity() { return {}; }
    static Element t_power(std::int64_t k) { return Element{{}, k}; }
    static Element base(LampConfig f) { return Element{std::move(f), 0}; }
    /// Builds the element whose lamp frame is (lamps, cursor).
    static Element from_lamps(const LampConfig& lamps, std::int64_t cursor);

    LampConfig lamps() const { return config_shift(config, shift); }
    std::int64_t cursor() const noexcept { return shift; }

    friend bool operator==(const Element&, const Element&) = default;
};

Element elem_mul(const Element& x, const Element& y, const GroupDesc& g);
Element elem_inv(const Element& x, const GroupDesc& g);
/// The automorphism t -> t^{-1}, lamp at p -> lamp at -p.
Element elem_mirror(const Element& x);
void validate_element(const Element& x, const GroupDesc& g);

}  // namespace wreathscope
