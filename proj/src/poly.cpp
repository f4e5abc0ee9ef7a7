#include "wreathscope/poly.hpp"

#include <cctype>
#include <limits>

#include "wreathscope/errors.hpp"

namespace wreathscope {
namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(what, pos_);
    }
    std::size_t pos() const { return pos_; }
    void rewind(std::size_t p) { pos_ = p; }

    std::int64_t integer(std::int64_t bound) {
        std::size_t start = pos_;
        bool neg = false;
        if (peek() == '-' || peek() == '+') neg = text_[pos_++] == '-';
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected integer", start);
        std::int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            int d = text_[pos_++] - '0';
            if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10)
                throw ParseError("integer overflows 64 bits", start);
            v = v * 10 + d;
        }
        if (v > bound) throw ParseError("integer exceeds bound " + std::to_string(bound), start);
        return neg ? -v : v;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Coeff parse_coeff(Cursor& in, const GroupDesc& g) {
    std::size_t start = in.pos();
    std::vector<int> residues;
    if (in.accept('(')) {
        while (true) {
            in.skip_ws();
            residues.push_back(static_cast<int>(in.integer(1'000'000)));
            in.skip_ws();
            if (in.accept(',')) continue;
            in.expect(')', "expected ',' or ')' in coefficient tuple");
            break;
        }
    } else {
        residues.push_back(static_cast<int>(in.integer(1'000'000)));
    }
    if (residues.size() != static_cast<std::size_t>(g.rank()))
        throw ParseError("coefficient has " + std::to_string(residues.size()) + " components, group " + g.name() +
                             " needs " + std::to_string(g.rank()),
                         start);
    for (std::size_t i = 0; i < residues.size(); ++i)
        if (residues[i] < 0 || residues[i] >= g.orders()[i])
            throw ParseError("coefficient out of range for group " + g.name(), start);
    return Coeff{std::move(residues)};
}

bool starts_coeff(char c) { return c == '(' || c == '-' || std::isdigit(static_cast<unsigned char>(c)); }

std::int64_t parse_exponent(Cursor& in, std::int64_t bound) {
    in.skip_ws();
    if (in.accept('{')) {
        in.skip_ws();
        std::int64_t e = in.integer(bound);
        in.skip_ws();
        in.expect('}', "expected '}' closing exponent");
        return e;
    }
    return in.integer(bound);
}

LampConfig parse_poly_from(Cursor& in, const GroupDesc& g, std::int64_t bound, bool stop_at_at) {
    LampConfig out;
    // A bare "0" is the empty configuration over every group.
    in.skip_ws();
    const std::size_t start = in.pos();
    if (in.accept('0')) {
        in.skip_ws();
        if (in.done() || (stop_at_at && in.peek() == '@')) return out;
        in.rewind(start);
    }
    std::map<Position, bool> seen;
    while (true) {
        in.skip_ws();
        std::size_t term_start = in.pos();
        std::optional<Coeff> coeff;
        if (starts_coeff(in.peek())) coeff = parse_coeff(in, g);
        in.skip_ws();
        Position exponent = 0;
        if (in.accept('t')) {
            if (!coeff) {
                if (!g.single_factor())
                    throw ParseError("omitted coefficient is only allowed over a single cyclic factor", term_start);
                coeff = g.make({1});
            }
            in.skip_ws();
            exponent = in.accept('^') ? parse_exponent(in, bound) : 1;
        } else if (!coeff) {
            throw ParseError("expected coefficient or 't'", term_start);
        }
        if (seen.count(exponent)) throw ParseError("duplicate exponent " + std::to_string(exponent), term_start);
        seen[exponent] = true;
        out.set(exponent, *coeff);
        in.skip_ws();
        if (in.accept('+')) continue;
        if (in.done() || (stop_at_at && in.peek() == '@')) break;
        throw ParseError("expected '+' between terms", in.pos());
    }
    return out;
}

bool looks_like_word(std::string_view text) {
    for (char c : text)
        if (c == 'a') return true;
    return false;
}

Element parse_word(std::string_view text, const GroupDesc& g, std::int64_t bound) {
    Cursor in(text);
    Element x;
    std::int64_t letters = 0;
    while (true) {
        in.skip_ws();
        if (in.done()) break;
        std::size_t start = in.pos();
        if (in.accept('t')) {
            std::int64_t k = 1;
            if (in.accept('^')) k = parse_exponent(in, bound);
            x = elem_mul(x, Element::t_power(k), g);
        } else if (in.accept('a')) {
            int factor = 0;
            if (std::isdigit(static_cast<unsigned char>(in.peek()))) {
                factor = static_cast<int>(in.integer(64)) - 1;
                if (factor < 0 || factor >= g.rank()) throw ParseError("no such cyclic factor", start);
            }
            std::int64_t k = 1;
            if (in.accept('^')) k = parse_exponent(in, bound);
            x = elem_mul(x, Element::base(LampConfig::single(0, g.scale(g.unit(factor), k))), g);
        } else {
            throw ParseError("expected letter 't' or 'a'", start);
        }
        if (++letters > bound) throw ParseError("word too long", start);
    }
    return x;
}

}  // namespace

LampConfig parse_poly(std::string_view text, const GroupDesc& g, std::int64_t exponent_bound) {
    Cursor in(text);
    LampConfig f = parse_poly_from(in, g, exponent_bound, false);
    in.skip_ws();
    if (!in.done()) throw ParseError("trailing characters", in.pos());
    return f;
}

std::string format_poly(const LampConfig& f, const GroupDesc& g) {
    if (f.empty()) return "0";
    std::string out;
    for (const auto& [p, c] : f.entries()) {
        if (!out.empty()) out += " + ";
        bool unit_coeff = g.single_factor() && c.residues[0] == 1;
        if (p == 0) {
            out += g.format(c);
            continue;
        }
        if (!unit_coeff) out += g.format(c);
        out += 't';
        if (p != 1) out += '^' + std::to_string(p);
    }
    return out;
}

Element parse_element(std::string_view text, const GroupDesc& g, std::int64_t exponent_bound) {
    if (looks_like_word(text)) return parse_word(text, g, exponent_bound);
    Cursor in(text);
    LampConfig lamps = parse_poly_from(in, g, exponent_bound, true);
    std::int64_t cursor = 0;
    in.skip_ws();
    if (in.accept('@')) {
        in.skip_ws();
        cursor = in.integer(exponent_bound);
    }
    in.skip_ws();
    if (!in.done()) throw ParseError("trailing characters", in.pos());
    return Element::from_lamps(lamps, cursor);
}

std::string format_element(const Element& x, const GroupDesc& g) {
    std::string out = format_poly(x.lamps(), g);
    if (x.shift != 0) out += " @ " + std::to_string(x.shift);
    return out;
}

}  // namespace wreathscope
