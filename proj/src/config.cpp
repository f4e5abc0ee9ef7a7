#include "wreathscope/config.hpp"

#include "wreathscope/errors.hpp"

namespace wreathscope {

LampConfig LampConfig::single(Position p, Coeff c) {
    LampConfig f;
    f.set(p, std::move(c));
    return f;
}

std::optional<Coeff> LampConfig::find(Position p) const {
    auto it = entries_.find(p);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

Coeff LampConfig::at(Position p, const GroupDesc& g) const {
    auto it = entries_.find(p);
    return it == entries_.end() ? g.zero() : it->second;
}

void LampConfig::set(Position p, Coeff c) {
    if (c.is_zero())
        entries_.erase(p);
    else
        entries_[p] = std::move(c);
}

Position LampConfig::min_position() const {
    if (entries_.empty()) throw PreconditionViolated("min_position of empty configuration");
    return entries_.begin()->first;
}

Position LampConfig::max_position() const {
    if (entries_.empty()) throw PreconditionViolated("max_position of empty configuration");
    return entries_.rbegin()->first;
}

bool LampConfig::supported_in(Position lo, Position hi) const {
    return entries_.empty() || (entries_.begin()->first >= lo && entries_.rbegin()->first <= hi);
}

LampConfig config_shift(const LampConfig& f, Position k) {
    if (k == 0) return f;
    LampConfig out;
    for (const auto& [p, c] : f.entries()) out.set(p + k, c);
    return out;
}

LampConfig config_add(const LampConfig& f, const LampConfig& h, const GroupDesc& g) {
    LampConfig out = f;
    for (const auto& [p, c] : h.entries()) out.set(p, g.add(out.at(p, g), c));
    return out;
}

LampConfig config_neg(const LampConfig& f, const GroupDesc& g) {
    LampConfig out;
    for (const auto& [p, c] : f.entries()) out.set(p, g.neg(c));
    return out;
}

LampConfig config_sub(const LampConfig& f, const LampConfig& h, const GroupDesc& g) {
    return config_add(f, config_neg(h, g), g);
}

LampConfig config_scale(const LampConfig& f, std::int64_t k, const GroupDesc& g) {
    LampConfig out;
    for (const auto& [p, c] : f.entries()) out.set(p, g.scale(c, k));
    return out;
}

LampConfig config_mirror(const LampConfig& f) {
    LampConfig out;
    for (const auto& [p, c] : f.entries()) out.set(-p, c);
    return out;
}

LampConfig negative_part(const LampConfig& f) {
    LampConfig out;
    for (const auto& [p, c] : f.entries())
        if (p < 0) out.set(p, c);
    return out;
}

LampConfig nonnegative_part(const LampConfig& f) {
    LampConfig out;
    for (const auto& [p, c] : f.entries())
        if (p >= 0) out.set(p, c);
    return out;
}

void validate_config(const LampConfig& f, const GroupDesc& g) {
    for (const auto& [p, c] : f.entries()) g.validate(c);
}

Element Element::from_lamps(const LampConfig& lamps, std::int64_t cursor) {
    return Element{config_shift(lamps, -cursor), cursor};
}

// t^{m1} b1 t^{m2} b2 = t^{m1+m2} (t^{-m2} b1 t^{m2}) b2, and conjugating by
// t^{-m2} shifts a configuration by -m2.
Element elem_mul(const Element& x, const Element& y, const GroupDesc& g) {
    return Element{config_add(config_shift(x.config, -y.shift), y.config, g), x.shift + y.shift};
}

// (t^m b)^{-1} = b^{-1} t^{-m} = t^{-m} (t^m b^{-1} t^{-m}).
Element elem_inv(const Element& x, const GroupDesc& g) {
    return Element{config_shift(config_neg(x.config, g), x.shift), -x.shift};
}

Element elem_mirror(const Element& x) { return Element{config_mirror(x.config), -x.shift}; }

void validate_element(const Element& x, const GroupDesc& g) { validate_config(x.config, g); }

}  // namespace wreathscope
