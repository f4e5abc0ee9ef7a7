#include "wreathscope/modspan.hpp"

#include <algorithm>
#include <numeric>

#include "wreathscope/errors.hpp"

namespace wreathscope {
namespace {

struct Bezout {
    long long g, a, b;  // a*x + b*y = g
};

Bezout ext_gcd(long long x, long long y) {
    if (y == 0) return {x, 1, 0};
    Bezout r = ext_gcd(y, x % y);
    return {r.g, r.b, r.a - (x / y) * r.b};
}

int unit_to_gcd(int x, int n) {
    int g = std::gcd(x, n);
    for (int u = 1; u < n; ++u)
        if (std::gcd(u, n) == 1 && static_cast<long long>(u) * x % n == g) return u;
    return 1;
}

}  // namespace

ModularSpan::ModularSpan(int modulus, std::size_t dimension)
    : modulus_(modulus), dimension_(dimension), pivots_(dimension) {
    if (modulus < 2) throw PreconditionViolated("modulus must be >= 2");
}

ModularSpan::Row ModularSpan::reduce(Row v) const {
    const long long n = modulus_;
    for (auto& x : v) x = static_cast<int>(((x % n) + n) % n);
    for (std::size_t j = 0; j < dimension_; ++j) {
        if (v[j] == 0) continue;
        if (!pivots_[j]) return v;
        const Row& p = *pivots_[j];
        if (v[j] % p[j] != 0) return v;
        long long q = v[j] / p[j];
        for (std::size_t k = j; k < dimension_; ++k) v[k] = static_cast<int>(((v[k] - q * p[k]) % n + n) % n);
    }
    return v;
}

void ModularSpan::absorb(Row v) {
    const long long n = modulus_;
    std::vector<Row> work{std::move(v)};
    auto scaled = [&](const Row& r, long long s) {
        Row out(dimension_);
        for (std::size_t k = 0; k < dimension_; ++k) out[k] = static_cast<int>(((s % n) * r[k] % n + n) % n);
        return out;
    };
    while (!work.empty()) {
        Row r = std::move(work.back());
        work.pop_back();
        for (auto& x : r) x = static_cast<int>(((x % n) + n) % n);
        for (std::size_t j = 0; j < dimension_; ++j) {
            if (r[j] == 0) continue;
            if (!pivots_[j]) {
                int g = std::gcd(r[j], modulus_);
                r = scaled(r, unit_to_gcd(r[j], modulus_));
                if (g != modulus_) work.push_back(scaled(r, modulus_ / g));
                pivots_[j] = std::move(r);
                break;
            }
            Row& p = *pivots_[j];
            if (r[j] % p[j] == 0) {
                long long q = r[j] / p[j];
                for (std::size_t k = j; k < dimension_; ++k)
                    r[k] = static_cast<int>(((r[k] - q * p[k]) % n + n) % n);
                continue;
            }
            // Unimodular row operation [[a, b], [x/g, -p/g]] on (pivot, r).
            Bezout bz = ext_gcd(p[j], r[j]);
            long long xg = r[j] / bz.g, pg = p[j] / bz.g;
            Row np(dimension_), nr(dimension_);
            for (std::size_t k = 0; k < dimension_; ++k) {
                np[k] = static_cast<int>(((bz.a * p[k] + bz.b * r[k]) % n + n) % n);
                nr[k] = static_cast<int>(((xg * p[k] - pg * r[k]) % n + n) % n);
            }
            p = std::move(np);
            work.push_back(scaled(p, modulus_ / static_cast<long long>(std::gcd(p[j], modulus_))));
            r = std::move(nr);
        }
    }
}

bool ModularSpan::insert(std::span<const int> v) {
    if (v.size() != dimension_) throw PreconditionViolated("vector dimension mismatch");
    Row r = reduce(Row(v.begin(), v.end()));
    bool zero = std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
    if (zero) return false;
    absorb(std::move(r));
    return true;
}

bool ModularSpan::contains(std::span<const int> v) const {
    if (v.size() != dimension_) throw PreconditionViolated("vector dimension mismatch");
    Row r = reduce(Row(v.begin(), v.end()));
    return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
}

double ModularSpan::cardinality() const {
    double c = 1;
    for (const auto& p : pivots_)
        if (p) {
            int j = static_cast<int>(&p - pivots_.data());
            c *= static_cast<double>(modulus_ / std::gcd((*p)[static_cast<std::size_t>(j)], modulus_));
        }
    return c;
}

std::size_t ModularSpan::rank() const {
    std::size_t r = 0;
    for (const auto& p : pivots_) r += p.has_value();
    return r;
}

std::vector<std::vector<int>> ModularSpan::basis() const {
    std::vector<Row> out;
    for (const auto& p : pivots_)
        if (p) out.push_back(*p);
    return out;
}

}  // namespace wreathscope
