#include "wreathscope/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "wreathscope/errors.hpp"

namespace wreathscope {

bool Coeff::is_zero() const noexcept {
    return std::all_of(residues.begin(), residues.end(), [](int r) { return r == 0; });
}

GroupDesc::GroupDesc(std::vector<int> orders, int order_bound) : orders_(std::move(orders)) {
    if (orders_.empty()) throw GroupMismatch("group needs at least one cyclic factor");
    for (int n : orders_) {
        if (n < 2) throw GroupMismatch("cyclic factor orders must be >= 2, got " + std::to_string(n));
        if (order_ > order_bound / n)
            throw BoundExceeded("group order exceeds bound " + std::to_string(order_bound));
        order_ *= n;
        exponent_ = std::lcm(exponent_, n);
    }
}

GroupDesc GroupDesc::parse(std::string_view text, int order_bound) {
    std::vector<int> orders;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (true) {
        if (i >= text.size() || (text[i] != 'Z' && text[i] != 'z'))
            throw ParseError("expected cyclic factor 'Z<n>' in group spec", i);
        ++i;
        if (i < text.size() && text[i] == '_') ++i;
        std::size_t start = i;
        long long n = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            n = n * 10 + (text[i] - '0');
            if (n > 1'000'000) throw BoundExceeded("cyclic factor order too large");
            ++i;
        }
        if (i == start) throw ParseError("expected factor order after 'Z'", i);
        if (n < 2) throw ParseError("cyclic factor order must be >= 2", start);
        orders.push_back(static_cast<int>(n));
        skip_ws();
        if (i == text.size()) break;
        if (text[i] != 'x' && text[i] != 'X' && text[i] != '*')
            throw ParseError("expected 'x' between cyclic factors", i);
        ++i;
        skip_ws();
    }
    return GroupDesc(std::move(orders), order_bound);
}

std::string GroupDesc::name() const {
    std::string out;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (i) out += 'x';
        out += 'Z' + std::to_string(orders_[i]);
    }
    return out;
}

Coeff GroupDesc::zero() const { return Coeff{std::vector<int>(orders_.size(), 0)}; }

Coeff GroupDesc::make(std::vector<int> residues) const {
    if (residues.size() != orders_.size())
        throw GroupMismatch("coefficient has " + std::to_string(residues.size()) + " components, group " +
                            name() + " has " + std::to_string(orders_.size()));
    for (std::size_t i = 0; i < residues.size(); ++i) {
        int n = orders_[i];
        residues[i] = ((residues[i] % n) + n) % n;
    }
    return Coeff{std::move(residues)};
}

Coeff GroupDesc::unit(int factor) const {
    Coeff c = zero();
    c.residues.at(static_cast<std::size_t>(factor)) = 1;
    return c;
}

bool GroupDesc::valid(const Coeff& a) const noexcept {
    if (a.residues.size() != orders_.size()) return false;
    for (std::size_t i = 0; i < orders_.size(); ++i)
        if (a.residues[i] < 0 || a.residues[i] >= orders_[i]) return false;
    return true;
}

void GroupDesc::validate(const Coeff& a) const {
    if (a.residues.size() != orders_.size())
        throw GroupMismatch("coefficient rank " + std::to_string(a.residues.size()) + " does not match group " +
                            name());
    if (!valid(a)) throw GroupMismatch("coefficient residue out of range for group " + name());
}

Coeff GroupDesc::add(const Coeff& a, const Coeff& b) const {
    validate(a);
    validate(b);
    Coeff out = a;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        out.residues[i] += b.residues[i];
        if (out.residues[i] >= orders_[i]) out.residues[i] -= orders_[i];
    }
    return out;
}

Coeff GroupDesc::neg(const Coeff& a) const {
    validate(a);
    Coeff out = a;
    for (std::size_t i = 0; i < orders_.size(); ++i)
        if (out.residues[i] != 0) out.residues[i] = orders_[i] - out.residues[i];
    return out;
}

Coeff GroupDesc::scale(const Coeff& a, std::int64_t k) const {
    validate(a);
    Coeff out = a;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        std::int64_t n = orders_[i];
        std::int64_t km = ((k % n) + n) % n;
        out.residues[i] = static_cast<int>((km * a.residues[i]) % n);
    }
    return out;
}

int GroupDesc::order_of(const Coeff& a) const {
    validate(a);
    int ord = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        int n = orders_[i];
        ord = std::lcm(ord, n / std::gcd(n, a.residues[i]));
    }
    return ord;
}

int GroupDesc::index(const Coeff& a) const {
    validate(a);
    int idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) idx = idx * orders_[i] + a.residues[i];
    return idx;
}

Coeff GroupDesc::from_index(int index) const {
    if (index < 0 || index >= order_) throw GroupMismatch("coefficient index out of range");
    Coeff c = zero();
    for (std::size_t i = orders_.size(); i-- > 0;) {
        c.residues[i] = index % orders_[i];
        index /= orders_[i];
    }
    return c;
}

std::vector<Coeff> GroupDesc::elements() const {
    std::vector<Coeff> out;
    out.reserve(static_cast<std::size_t>(order_));
    for (int i = 0; i < order_; ++i) out.push_back(from_index(i));
    return out;
}

std::string GroupDesc::format(const Coeff& a) const {
    validate(a);
    if (single_factor()) return std::to_string(a.residues[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < a.residues.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(a.residues[i]);
    }
    return out + ")";
}

SubgroupDesc::SubgroupDesc(std::vector<Coeff> generators, std::vector<Coeff> elements)
    : generators_(std::move(generators)), elements_(std::move(elements)) {}

bool SubgroupDesc::contains(const Coeff& c) const {
    return std::binary_search(elements_.begin(), elements_.end(), c);
}

bool SubgroupDesc::is_subset_of(const SubgroupDesc& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

std::string SubgroupDesc::format(const GroupDesc& g) const {
    std::string out = "{";
    bool first = true;
    for (const auto& e : elements_) {
        if (e.is_zero()) continue;
        if (!first) out += ',';
        out += g.format(e);
        first = false;
    }
    return out + "}";
}

SubgroupDesc subgroup_closure(std::span<const Coeff> gens, const GroupDesc& g) {
    std::vector<char> member(static_cast<std::size_t>(g.order()), 0);
    std::vector<Coeff> frontier{g.zero()};
    member[0] = 1;
    std::vector<Coeff> generators;
    for (const auto& x : gens) {
        g.validate(x);
        generators.push_back(x);
    }
    // Breadth-first closure under adding a generator; in a finite group this
    // also yields inverses.
    while (!frontier.empty()) {
        std::vector<Coeff> next;
        for (const auto& e : frontier) {
            for (const auto& x : generators) {
                Coeff s = g.add(e, x);
                auto idx = static_cast<std::size_t>(g.index(s));
                if (!member[idx]) {
                    member[idx] = 1;
                    next.push_back(std::move(s));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<Coeff> elements;
    for (int i = 0; i < g.order(); ++i)
        if (member[static_cast<std::size_t>(i)]) elements.push_back(g.from_index(i));
    return SubgroupDesc(std::move(generators), std::move(elements));
}

namespace {

int parse_int(std::string_view text, std::size_t& i) {
    std::size_t start = i;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    long long v = 0;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1'000'000'000) throw ParseError("integer too large", start);
        ++i;
    }
    if (i == digits) throw ParseError("expected integer", start);
    return static_cast<int>(neg ? -v : v);
}

}  // namespace

SubgroupDesc parse_subgroup(std::string_view text, const GroupDesc& g) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i >= text.size() || text[i] != '{') throw ParseError("subgroup must be written as {g1,g2,...}", i);
    ++i;
    std::vector<Coeff> gens;
    skip_ws();
    if (i < text.size() && text[i] == '}') {
        ++i;
    } else {
        while (true) {
            skip_ws();
            std::vector<int> residues;
            if (i < text.size() && text[i] == '(') {
                ++i;
                while (true) {
                    skip_ws();
                    residues.push_back(parse_int(text, i));
                    skip_ws();
                    if (i < text.size() && text[i] == ',') {
                        ++i;
                        continue;
                    }
                    if (i < text.size() && text[i] == ')') {
                        ++i;
                        break;
                    }
                    throw ParseError("expected ',' or ')' in coefficient tuple", i);
                }
            } else {
                residues.push_back(parse_int(text, i));
            }
            if (residues.size() != static_cast<std::size_t>(g.rank()))
                throw ParseError("generator rank does not match group " + g.name(), i);
            for (std::size_t j = 0; j < residues.size(); ++j)
                if (residues[j] < 0 || residues[j] >= g.orders()[j])
                    throw ParseError("generator out of range for " + g.name(), i);
            gens.push_back(g.make(std::move(residues)));
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == '}') {
                ++i;
                break;
            }
            throw ParseError("expected ',' or '}' in generator list", i);
        }
    }
    skip_ws();
    if (i != text.size()) throw ParseError("trailing characters after subgroup", i);
    return subgroup_closure(gens, g);
}

}  // namespace wreathscope
