#pragma once

// Seeded generators and independent oracles shared by the unit tests.

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "wreathscope/config.hpp"
#include "wreathscope/poly.hpp"

namespace testing_support {

using namespace wreathscope;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Coeff coeff(const GroupDesc& g) { return g.from_index(static_cast<int>(range(0, g.order() - 1))); }

    LampConfig config(const GroupDesc& g, Position lo, Position hi) {
        LampConfig f;
        const auto density = range(0, 3);
        for (Position p = lo; p <= hi; ++p)
            if (range(0, 3) < density) f.set(p, coeff(g));
        return f;
    }

    Element element(const GroupDesc& g, Position reach, std::int64_t shift_reach) {
        return Element::from_lamps(config(g, -reach, reach), range(-shift_reach, shift_reach));
    }

private:
    std::mt19937_64 rng_;
};

// Lamplighter picture evaluated letter by letter: 't' moves the cursor,
// a base element is added translated to the cursor. Nothing here uses the
// library's multiplication.
struct Lamplighter {
    const GroupDesc* g;
    std::map<std::int64_t, std::vector<int>> lamps;
    std::int64_t cursor = 0;

    void move(std::int64_t k) { cursor += k; }

    void light(std::int64_t offset, const Coeff& c) {
        auto& v = lamps[cursor + offset];
        if (v.empty()) v.assign(c.residues.size(), 0);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + c.residues[j]) % g->orders()[j];
    }

    LampConfig config() const {
        LampConfig f;
        for (const auto& [p, v] : lamps) f.set(p, g->make(v));
        return f;
    }
};

// t^m b read as a word: first t^m, then the lamps of b at offsets relative to the cursor.
inline void apply(Lamplighter& ll, const Element& x) {
    ll.move(x.shift);
    for (const auto& [p, c] : x.config.entries()) ll.light(p, c);
}

inline Element evaluate(const GroupDesc& g, const std::vector<Element>& word) {
    Lamplighter ll{&g, {}, 0};
    for (const auto& x : word) apply(ll, x);
    return Element::from_lamps(ll.config(), ll.cursor);
}

// Brute-force order of a coefficient.
inline int brute_order(const GroupDesc& g, const Coeff& c) {
    Coeff acc = c;
    for (int k = 1; k <= g.order(); ++k) {
        if (acc.is_zero()) return k;
        acc = g.add(acc, c);
    }
    return -1;
}

// Closure by repeated addition, independent of subgroup_closure.
inline std::set<std::vector<int>> brute_closure(const GroupDesc& g, const std::vector<Coeff>& gens) {
    std::set<std::vector<int>> seen{g.zero().residues};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> cur(seen.begin(), seen.end());
        for (const auto& a : cur)
            for (const auto& b : gens)
                if (seen.insert(g.add(g.make(a), b).residues).second) grew = true;
    }
    return seen;
}

// Plain BFS over (lamps in [-w, w], cursor in [-wc, wc]) in which a base move
// may add any window config q satisfying `allowed(q translated to cursor 0)`.
// Exponential, but independent of the library's coset expansion; only for
// tiny windows.
template <class Allowed>
std::map<std::pair<std::vector<int>, std::int64_t>, int> naive_bfs(const GroupDesc& g, int w, int wc, Allowed allowed) {
    const int width = 2 * w + 1;
    const int n = g.order();
    auto to_config = [&](const std::vector<int>& v) {
        LampConfig f;
        for (int i = 0; i < width; ++i) f.set(i - w, g.from_index(v[static_cast<std::size_t>(i)]));
        return f;
    };
    std::vector<std::vector<int>> all;
    std::vector<int> digits(static_cast<std::size_t>(width), 0);
    while (true) {
        all.push_back(digits);
        int i = 0;
        for (; i < width; ++i) {
            if (++digits[static_cast<std::size_t>(i)] < n) break;
            digits[static_cast<std::size_t>(i)] = 0;
        }
        if (i == width) break;
    }
    std::map<std::pair<std::vector<int>, std::int64_t>, int> dist;
    std::deque<std::pair<std::vector<int>, std::int64_t>> queue;
    auto start = std::make_pair(std::vector<int>(static_cast<std::size_t>(width), 0), std::int64_t{0});
    dist[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
        auto [v, c] = queue.front();
        queue.pop_front();
        int d = dist[{v, c}];
        auto push = [&](std::vector<int> nv, std::int64_t nc) {
            auto key = std::make_pair(std::move(nv), nc);
            if (dist.count(key)) return;
            dist[key] = d + 1;
            queue.push_back(std::move(key));
        };
        if (c > -wc) push(v, c - 1);
        if (c < wc) push(v, c + 1);
        for (const auto& q : all) {
            LampConfig qc = to_config(q);
            if (qc.empty() || !allowed(config_shift(qc, -c))) continue;
            std::vector<int> nv(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                nv[i] = g.index(g.add(g.from_index(v[i]), g.from_index(q[i])));
            push(std::move(nv), c);
        }
    }
    return dist;
}

inline std::vector<int> window_digits(const GroupDesc& g, const LampConfig& f, int w) {
    std::vector<int> v;
    for (Position p = -w; p <= w; ++p) v.push_back(g.index(f.at(p, g)));
    return v;
}

}  // namespace testing_support
