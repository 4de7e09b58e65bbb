#pragma once

// Brute-force references that share no code with the library beyond the
// Chunk table itself.

#include "sofic/chunk.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Raw = std::vector<int>;

inline Raw identity(int n) {
    Raw p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline std::vector<Raw> all_perms(int n) {
    std::vector<Raw> out;
    Raw p = identity(n);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// (p q)(x) = p(q(x))
inline Raw mul(const Raw& p, const Raw& q) {
    Raw r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
    return r;
}

inline int differ(const Raw& p, const Raw& q) {
    int d = 0;
    for (std::size_t x = 0; x < p.size(); ++x) d += p[x] != q[x];
    return d;
}

// defect <= 1/r and expansiveness >= 1 - 1/r with r = rp/rq, all scaled by n.
inline bool good(const sofic::Chunk& c, const std::vector<Raw>& f, int n, std::int64_t rp, std::int64_t rq) {
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = 0; b < c.size(); ++b)
            if (auto ab = c.product(a, b))
                if (differ(f[*ab], mul(f[a], f[b])) * rp > n * rq) return false;
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = a + 1; b < c.size(); ++b)
            if (differ(f[a], f[b]) * rp < n * (rp - rq)) return false;
    return true;
}

/// Least n <= n_max admitting a good assignment, by full enumeration.
inline std::optional<int> profile(const sofic::Chunk& c, std::int64_t rp, std::int64_t rq, int n_max) {
    for (int n = 1; n <= n_max; ++n) {
        const auto perms = all_perms(n);
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (i != c.unit()) others.push_back(i);
        std::vector<std::size_t> pick(others.size(), 0);
        std::vector<Raw> f(c.size(), identity(n));
        while (true) {
            for (std::size_t k = 0; k < others.size(); ++k) f[others[k]] = perms[pick[k]];
            if (good(c, f, n, rp, rq)) return n;
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == perms.size()) pick[k++] = 0;
            if (k == pick.size()) break;
        }
    }
    return std::nullopt;
}

inline Raw random_perm(int n, std::mt19937_64& rng) {
    Raw p = identity(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

} // namespace oracle
