#pragma once

// Chunks: finite subsets of a group containing the unit, carried as partial
// groups with a partial multiplication table.

#include "sofic/rational.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sofic {

/// A finite partial group. Elements are opaque names; their declaration order
/// fixes every iteration order in the library.
class Chunk {
public:
    using Index = std::size_t;

    Chunk() = default;

    /// `elements` must be distinct and contain `unit`. The table starts empty.
    Chunk(std::vector<std::string> elements, const std::string& unit) : names_(std::move(elements)) {
        for (Index i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw error("empty element name");
            if (!index_.emplace(names_[i], i).second) throw error("duplicate element '" + names_[i] + "'");
        }
        auto it = index_.find(unit);
        if (it == index_.end()) throw error("unit '" + unit + "' is not an element");
        unit_ = it->second;
        table_.assign(names_.size() * names_.size(), std::nullopt);
    }

    std::size_t size() const noexcept { return names_.size(); }
    Index unit() const noexcept { return unit_; }
    const std::string& name(Index i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<Index> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    Index index_of(const std::string& name) const {
        auto i = find(name);
        if (!i) throw error("unknown element '" + name + "'");
        return *i;
    }

    std::optional<Index> product(Index a, Index b) const { return table_.at(a * size() + b); }

    void set_product(Index a, Index b, std::optional<Index> c) {
        if (a >= size() || b >= size() || (c && *c >= size())) throw error("product index out of range");
        table_[a * size() + b] = c;
    }

    void set_product(const std::string& a, const std::string& b, const std::string& c) {
        set_product(index_of(a), index_of(b), index_of(c));
    }

    /// Fills in unit * x = x and x * unit = x for every x.
    void add_unit_laws() {
        for (Index x = 0; x < size(); ++x) {
            set_product(unit_, x, x);
            set_product(x, unit_, x);
        }
    }

    /// Number of defined products.
    std::size_t defined_count() const {
        std::size_t c = 0;
        for (const auto& e : table_) c += e.has_value();
        return c;
    }

    friend bool operator==(const Chunk& a, const Chunk& b) {
        return a.names_ == b.names_ && a.unit_ == b.unit_ && a.table_ == b.table_;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Index> index_;
    Index unit_ = 0;
    std::vector<std::optional<Index>> table_;
};

// ---- validation -------------------------------------------------------------

struct Violation {
    enum class Kind { unit_law, cancellation, associativity };
    Kind kind;
    std::string message;
};

inline const char* to_string(Violation::Kind k) {
    switch (k) {
    case Violation::Kind::unit_law: return "unit-law";
    case Violation::Kind::cancellation: return "cancellation";
    case Violation::Kind::associativity: return "associativity";
    }
    return "?";
}

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    std::size_t count(Violation::Kind k) const {
        std::size_t c = 0;
        for (const auto& v : violations) c += v.kind == k;
        return c;
    }
};

/// Checks the conditions every subset of a group satisfies: unit laws,
/// two-sided cancellation where defined, and associativity wherever both
/// bracketings are defined. Passing does not imply embeddability.
inline ValidationReport validate(const Chunk& c) {
    ValidationReport rep;
    const auto n = c.size();
    const auto u = c.unit();
    auto nm = [&](Chunk::Index i) { return c.name(i); };

    for (Chunk::Index x = 0; x < n; ++x) {
        auto l = c.product(u, x);
        if (l != x)
            rep.violations.push_back({Violation::Kind::unit_law,
                                      nm(u) + " * " + nm(x) + " = " + (l ? nm(*l) : "undef") +
                                          ", expected " + nm(x)});
        if (x == u) continue;
        auto r = c.product(x, u);
        if (r != x)
            rep.violations.push_back({Violation::Kind::unit_law,
                                      nm(x) + " * " + nm(u) + " = " + (r ? nm(*r) : "undef") +
                                          ", expected " + nm(x)});
    }

    // left cancellation: a*b = a*b' => b = b'
    for (Chunk::Index a = 0; a < n; ++a)
        for (Chunk::Index b = 0; b < n; ++b)
            for (Chunk::Index b2 = b + 1; b2 < n; ++b2) {
                auto p = c.product(a, b);
                if (p && p == c.product(a, b2))
                    rep.violations.push_back({Violation::Kind::cancellation,
                                              nm(a) + " * " + nm(b) + " = " + nm(a) + " * " + nm(b2) +
                                                  " = " + nm(*p)});
            }
    // right cancellation: a*b = a'*b => a = a'
    for (Chunk::Index b = 0; b < n; ++b)
        for (Chunk::Index a = 0; a < n; ++a)
            for (Chunk::Index a2 = a + 1; a2 < n; ++a2) {
                auto p = c.product(a, b);
                if (p && p == c.product(a2, b))
                    rep.violations.push_back({Violation::Kind::cancellation,
                                              nm(a) + " * " + nm(b) + " = " + nm(a2) + " * " + nm(b) +
                                                  " = " + nm(*p)});
            }

    for (Chunk::Index a = 0; a < n; ++a)
        for (Chunk::Index b = 0; b < n; ++b) {
            auto ab = c.product(a, b);
            if (!ab) continue;
            for (Chunk::Index d = 0; d < n; ++d) {
                auto bd = c.product(b, d);
                if (!bd) continue;
                auto left = c.product(*ab, d);
                auto right = c.product(a, *bd);
                if (left && right && *left != *right)
                    rep.violations.push_back({Violation::Kind::associativity,
                                              "(" + nm(a) + " * " + nm(b) + ") * " + nm(d) + " = " +
                                                  nm(*left) + " but " + nm(a) + " * (" + nm(b) + " * " +
                                                  nm(d) + ") = " + nm(*right)});
            }
        }
    return rep;
}

// ---- construction from an ambient group --------------------------------------

/// The chunk induced on `elems` by a total multiplication `mult`:
/// a*b = c exactly when mult(a, b) = c lies in `elems`. `name` labels
/// elements; `eq` decides equality in the ambient set.
template <class T, class Mult, class Name, class Eq = std::equal_to<T>>
Chunk induced_chunk(std::span<const T> elems, const T& unit, Mult mult, Name name, Eq eq = {}) {
    std::vector<std::string> names;
    names.reserve(elems.size());
    std::optional<std::size_t> unit_pos;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        names.push_back(name(elems[i]));
        if (!unit_pos && eq(elems[i], unit)) unit_pos = i;
    }
    if (!unit_pos) throw error("induced chunk: the unit is not among the elements");
    Chunk c(names, names[*unit_pos]);
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b) {
            const T prod = mult(elems[a], elems[b]);
            for (std::size_t k = 0; k < elems.size(); ++k)
                if (eq(prod, elems[k])) {
                    c.set_product(a, b, k);
                    break;
                }
        }
    return c;
}

// ---- homomorphisms ------------------------------------------------------------

/// True iff `images` sends the unit to `target_unit` and every defined
/// product a*b = c to mult(images[a], images[b]) == images[c]. `mult`
/// returns std::optional; an undefined target product fails the check.
template <class T, class Mult, class Eq = std::equal_to<T>>
bool is_homomorphism(const Chunk& source, std::span<const T> images, const T& target_unit, Mult mult,
                     Eq eq = {}) {
    if (images.size() != source.size()) throw error("map is not total on the source chunk");
    if (!eq(images[source.unit()], target_unit)) return false;
    for (Chunk::Index a = 0; a < source.size(); ++a)
        for (Chunk::Index b = 0; b < source.size(); ++b) {
            auto c = source.product(a, b);
            if (!c) continue;
            std::optional<T> prod = mult(images[a], images[b]);
            if (!prod || !eq(*prod, images[*c])) return false;
        }
    return true;
}

/// Chunk-to-chunk map given as target indices.
inline bool is_homomorphism(const Chunk& source, std::span<const Chunk::Index> images, const Chunk& target) {
    for (auto i : images)
        if (i >= target.size()) throw error("image index out of range");
    return is_homomorphism<Chunk::Index>(
        source, images, target.unit(),
        [&](Chunk::Index a, Chunk::Index b) { return target.product(a, b); });
}

inline bool is_bijective(std::span<const Chunk::Index> images, std::size_t target_size) {
    if (images.size() != target_size) return false;
    std::vector<bool> hit(target_size, false);
    for (auto i : images) {
        if (i >= target_size || hit[i]) return false;
        hit[i] = true;
    }
    return true;
}

} // namespace sofic
