#pragma once

// Finite permutations of {0, ..., n-1}, the normalized Hamming metric on S_n,
// cycle types and block direct sums.

#include "sofic/rational.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sofic {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1} stored as its image list.
/// Composition convention: (p * q)(x) = p(q(x)).
class Perm {
public:
    /// The empty permutation of degree 0.
    Perm() = default;

    /// Throws sofic::error unless `images` is a bijection of {0..n-1}.
    explicit Perm(std::vector<Point> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (Point v : images_) {
            if (v >= images_.size() || seen[v])
                throw error("image list is not a bijection of {0.." +
                            std::to_string(images_.size()) + "-1}");
            seen[v] = true;
        }
    }

    static Perm identity(std::size_t n) {
        std::vector<Point> im(n);
        for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
        return Perm(std::move(im), trusted{});
    }

    /// Builds a permutation of degree n from disjoint cycles; unmentioned
    /// points are fixed.
    static Perm from_cycles(std::size_t n, const std::vector<std::vector<Point>>& cycles) {
        auto im = identity(n).images_;
        std::vector<bool> used(n, false);
        for (const auto& c : cycles) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] >= n) throw error("cycle point " + std::to_string(c[i]) + " out of range");
                if (used[c[i]]) throw error("cycles are not disjoint at point " + std::to_string(c[i]));
                used[c[i]] = true;
                im[c[i]] = c[(i + 1) % c.size()];
            }
        }
        return Perm(std::move(im), trusted{});
    }

    std::size_t degree() const noexcept { return images_.size(); }
    Point operator()(Point x) const { return images_[x]; }
    std::span<const Point> images() const noexcept { return images_; }

    bool is_identity() const noexcept {
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != i) return false;
        return true;
    }

    Perm inverse() const {
        std::vector<Point> inv(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
        return Perm(std::move(inv), trusted{});
    }

    std::size_t fixed_point_count() const noexcept {
        std::size_t c = 0;
        for (std::size_t i = 0; i < images_.size(); ++i) c += images_[i] == i;
        return c;
    }

    /// Cycle lengths in order of their smallest point, fixed points included.
    std::vector<std::size_t> cycle_lengths() const {
        std::vector<std::size_t> out;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t s = 0; s < images_.size(); ++s) {
            if (seen[s]) continue;
            std::size_t len = 0;
            for (std::size_t x = s; !seen[x]; x = images_[x]) {
                seen[x] = true;
                ++len;
            }
            out.push_back(len);
        }
        return out;
    }

    std::vector<std::vector<Point>> cycles() const {
        std::vector<std::vector<Point>> out;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t s = 0; s < images_.size(); ++s) {
            if (seen[s]) continue;
            std::vector<Point> cyc;
            for (std::size_t x = s; !seen[x]; x = images_[x]) {
                seen[x] = true;
                cyc.push_back(static_cast<Point>(x));
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    /// Degree first, then lexicographic image list.
    friend bool operator==(const Perm&, const Perm&) = default;
    friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        return a.images_ <=> b.images_;
    }

private:
    struct trusted {};
    Perm(std::vector<Point> images, trusted) : images_(std::move(images)) {}

    friend Perm compose(const Perm& p, const Perm& q);
    friend Perm block_sum(std::span<const std::pair<Perm, std::size_t>> parts);

    std::vector<Point> images_;
};

/// (p . q)(x) = p(q(x)).
inline Perm compose(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree())
        throw error("degree mismatch in compose: " + std::to_string(p.degree()) + " vs " +
                    std::to_string(q.degree()));
    std::vector<Point> im(p.degree());
    for (std::size_t x = 0; x < im.size(); ++x) im[x] = p.images_[q.images_[x]];
    return Perm(std::move(im), Perm::trusted{});
}

inline Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }

inline Perm power(const Perm& p, long k) {
    Perm base = k < 0 ? p.inverse() : p;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    Perm acc = Perm::identity(p.degree());
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

/// |{x : p(x) = q(x)}| = |Fix(p^-1 q)|, without forming the quotient.
inline std::size_t agreement_count(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree())
        throw error("degree mismatch in distance: " + std::to_string(p.degree()) + " vs " +
                    std::to_string(q.degree()));
    std::size_t c = 0;
    auto a = p.images();
    auto b = q.images();
    for (std::size_t x = 0; x < a.size(); ++x) c += a[x] == b[x];
    return c;
}

/// d_H(p, q) = 1 - |Fix(p^-1 q)| / n. Degree 0 gives 0.
inline Rational hamming_distance(const Perm& p, const Perm& q) {
    const auto agree = agreement_count(p, q);
    const auto n = static_cast<std::int64_t>(p.degree());
    if (n == 0) return Rational(0);
    return Rational(n - static_cast<std::int64_t>(agree), n);
}

/// Direct sum: each part acts on its own consecutive block, repeated
/// `multiplicity` times, blocks laid out in the given order.
inline Perm block_sum(std::span<const std::pair<Perm, std::size_t>> parts) {
    std::size_t total = 0;
    for (const auto& [p, mult] : parts) total += p.degree() * mult;
    std::vector<Point> im;
    im.reserve(total);
    Point base = 0;
    for (const auto& [p, mult] : parts) {
        for (std::size_t rep = 0; rep < mult; ++rep) {
            for (Point v : p.images_) im.push_back(base + v);
            base += static_cast<Point>(p.degree());
        }
    }
    return Perm(std::move(im), Perm::trusted{});
}

inline Perm block_sum(std::initializer_list<std::pair<Perm, std::size_t>> parts) {
    return block_sum(std::span<const std::pair<Perm, std::size_t>>(parts.begin(), parts.size()));
}

/// A partition of the degree, parts kept in non-increasing order.
struct CycleType {
    std::vector<std::size_t> parts;

    CycleType() = default;
    explicit CycleType(std::vector<std::size_t> p) : parts(std::move(p)) {
        for (auto v : parts)
            if (v == 0) throw error("cycle type parts must be positive");
        std::sort(parts.begin(), parts.end(), std::greater<>());
    }

    std::size_t total() const {
        std::size_t s = 0;
        for (auto v : parts) s += v;
        return s;
    }

    friend bool operator==(const CycleType&, const CycleType&) = default;
};

inline CycleType cycle_type(const Perm& p) { return CycleType(p.cycle_lengths()); }

/// Canonical representative: cycles on consecutive points, longest first.
inline Perm cycle_type_representative(const CycleType& t, std::size_t n) {
    if (t.total() != n)
        throw error("cycle type sums to " + std::to_string(t.total()) + ", expected " +
                    std::to_string(n));
    std::vector<Point> im(n);
    Point start = 0;
    for (auto len : t.parts) {
        for (std::size_t i = 0; i < len; ++i)
            im[start + i] = static_cast<Point>(start + (i + 1) % len);
        start += static_cast<Point>(len);
    }
    return Perm(std::move(im));
}

/// All partitions of n, each with parts in non-increasing order, in reverse
/// lexicographic order of parts ({n} first, {1,...,1} last).
inline std::vector<CycleType> partitions(std::size_t n) {
    std::vector<CycleType> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t rest, std::size_t cap) {
        if (rest == 0) {
            CycleType t;
            t.parts = cur;
            out.push_back(std::move(t));
            return;
        }
        for (std::size_t k = std::min(rest, cap); k >= 1; --k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    if (n == 0) return {CycleType{}};
    rec(n, n);
    return out;
}

// ---- text forms -------------------------------------------------------------

/// One-line form `[i0 i1 ... i{n-1}]`.
inline std::string to_string(const Perm& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.degree(); ++i) {
        if (i) s += ' ';
        s += std::to_string(p(static_cast<Point>(i)));
    }
    return s + "]";
}

inline std::ostream& operator<<(std::ostream& os, const Perm& p) { return os << to_string(p); }

inline std::string to_cycle_string(const Perm& p) {
    std::string s;
    for (const auto& c : p.cycles()) {
        if (c.size() < 2) continue;
        s += '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(c[i]);
        }
        s += ')';
    }
    return s.empty() ? "()" : s;
}

/// Accepts `[i0 ... ]` or cycle notation `(0 1)(2 3)`; `()` is the identity.
/// For cycle notation the degree defaults to one past the largest point.
inline Perm parse_perm(std::string_view text, std::optional<std::size_t> degree = std::nullopt) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto read_points = [&](std::string_view body) {
        std::vector<Point> pts;
        std::istringstream in{std::string(body)};
        std::string tok;
        while (in >> tok) {
            std::size_t pos = 0;
            long long v = -1;
            try {
                v = std::stoll(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || v < 0) throw error("bad point '" + tok + "' in '" + std::string(text) + "'");
            pts.push_back(static_cast<Point>(v));
        }
        return pts;
    };
    text = trim(text);
    if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
        auto p = Perm(read_points(text.substr(1, text.size() - 2)));
        if (degree && *degree != p.degree())
            throw error("expected degree " + std::to_string(*degree) + ", got " + std::to_string(p.degree()));
        return p;
    }
    std::vector<std::vector<Point>> cycles;
    std::size_t max_pt = 0;
    bool any = false;
    while (!text.empty()) {
        if (text.front() != '(') throw error("malformed permutation '" + std::string(text) + "'");
        auto close = text.find(')');
        if (close == std::string_view::npos) throw error("unterminated cycle in '" + std::string(text) + "'");
        auto pts = read_points(text.substr(1, close - 1));
        for (auto v : pts) {
            max_pt = std::max<std::size_t>(max_pt, v);
            any = true;
        }
        if (!pts.empty()) cycles.push_back(std::move(pts));
        text = trim(text.substr(close + 1));
    }
    const std::size_t n = degree ? *degree : (any ? max_pt + 1 : 0);
    return Perm::from_cycles(n, cycles);
}

} // namespace sofic

template <>
struct std::hash<sofic::Perm> {
    std::size_t operator()(const sofic::Perm& p) const noexcept {
        std::size_t h = p.degree();
        for (auto v : p.images()) h = h * 1000003u ^ v;
        return h;
    }
};
