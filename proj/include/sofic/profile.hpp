#pragma once

// Quality of maps from a chunk into (S_n, d_H), and the exact sofic profile
// prof_E(r): the least n admitting a (1 - 1/r)-expansive 1/r-morphism
// E -> S_n, found by exhaustive backtracking with symmetry pruning.

#include "sofic/chunk.hpp"
#include "sofic/perm.hpp"
#include "sofic/rational.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <variant>
#include <vector>

namespace sofic {

struct MorphismQuality {
    /// max d_H(f(ab), f(a)f(b)) over defined products; 0 if none.
    Rational defect{0};
    /// min d_H(f(x), f(y)) over distinct pairs; nullopt is +infinity
    /// (singleton chunk).
    std::optional<Rational> expansiveness;

    friend bool operator==(const MorphismQuality&, const MorphismQuality&) = default;
};

/// defect <= 1/r and expansiveness >= 1 - 1/r, both non-strict.
inline bool meets_thresholds(const MorphismQuality& q, const Rational& r) {
    const Rational eps = Rational(1) / r;
    if (q.defect > eps) return false;
    return !q.expansiveness || *q.expansiveness >= Rational(1) - eps;
}

inline MorphismQuality measure(const Chunk& c, std::span<const Perm> f) {
    if (f.size() != c.size())
        throw error("assignment has " + std::to_string(f.size()) + " images for a chunk of " +
                    std::to_string(c.size()) + " elements");
    if (f.empty()) return {};
    const auto n = f[0].degree();
    for (const auto& p : f)
        if (p.degree() != n) throw error("assignment mixes degrees " + std::to_string(n) + " and " +
                                         std::to_string(p.degree()));
    if (!f[c.unit()].is_identity()) throw error("unit is not mapped to the identity");

    MorphismQuality q;
    for (Chunk::Index a = 0; a < c.size(); ++a)
        for (Chunk::Index b = 0; b < c.size(); ++b)
            if (auto ab = c.product(a, b))
                q.defect = std::max(q.defect, hamming_distance(f[*ab], f[a] * f[b]));
    for (Chunk::Index a = 0; a < c.size(); ++a)
        for (Chunk::Index b = a + 1; b < c.size(); ++b) {
            auto d = hamming_distance(f[a], f[b]);
            if (!q.expansiveness || d < *q.expansiveness) q.expansiveness = d;
        }
    return q;
}

/// Search effort spent proving one degree infeasible.
struct InfeasibleDegree {
    std::size_t n = 0;
    /// Conjugacy classes tried for the first non-unit element.
    std::size_t classes = 0;
    /// Partial assignments visited.
    std::uint64_t nodes = 0;

    friend bool operator==(const InfeasibleDegree&, const InfeasibleDegree&) = default;
};

struct ProfileCertificate {
    Rational r{2};
    std::size_t n = 0;
    /// Indexed like the chunk's elements; unit maps to the identity.
    std::vector<Perm> assignment;
    MorphismQuality quality;
    /// Every degree below n, each shown infeasible.
    std::vector<InfeasibleDegree> infeasible;
    /// r = 1: both thresholds are trivially met.
    bool vacuous = false;

    friend bool operator==(const ProfileCertificate&, const ProfileCertificate&) = default;
};

/// No degree up to n_max works; prof_E(r) > n_max (possibly +infinity).
struct Exhausted {
    Rational r{2};
    std::size_t n_max = 0;
    std::vector<InfeasibleDegree> infeasible;
};

using ProfileResult = std::variant<ProfileCertificate, Exhausted>;

struct SearchOptions {
    std::size_t workers = 1;
    /// Accept chunks that fail validate() (pathological gadget inputs).
    bool skip_validation = false;
};

namespace detail {

/// Backtracking over one fixed degree. Elements other than the unit are
/// assigned in chunk order; every constraint is checked as soon as all of its
/// elements carry an image.
class DegreeSearch {
public:
    DegreeSearch(const Chunk& c, const Rational& r, std::size_t n) : chunk_(c), n_(n) {
        // Disagreement counts: a product may miss at most max_bad_ points,
        // distinct elements must differ on at least min_diff_ points.
        const auto p = r.numerator();
        const auto q = r.denominator();
        const auto nn = static_cast<std::int64_t>(n);
        max_bad_ = static_cast<std::size_t>((q * nn) / p);
        min_diff_ = static_cast<std::size_t>(((p - q) * nn + p - 1) / p);

        order_.push_back(c.unit());
        for (Chunk::Index i = 0; i < c.size(); ++i)
            if (i != c.unit()) order_.push_back(i);
        pos_.assign(c.size(), 0);
        for (std::size_t d = 0; d < order_.size(); ++d) pos_[order_[d]] = d;

        products_at_.resize(order_.size());
        for (Chunk::Index a = 0; a < c.size(); ++a)
            for (Chunk::Index b = 0; b < c.size(); ++b)
                if (auto ab = c.product(a, b)) {
                    auto depth = std::max({pos_[a], pos_[b], pos_[*ab]});
                    products_at_[depth].push_back({a, b, *ab});
                }

        for (const auto& t : partitions(n)) first_.push_back(cycle_type_representative(t, n));
        std::sort(first_.begin(), first_.end());
        if (order_.size() > 2) {
            std::vector<Point> im(n);
            for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
            do all_.emplace_back(im);
            while (std::next_permutation(im.begin(), im.end()));
        }
    }

    std::size_t top_level_count() const { return order_.size() < 2 ? 1 : first_.size(); }

    /// Explores the subtree under the given top-level candidate. Returns the
    /// lexicographically first witness in that subtree, if any.
    std::optional<std::vector<Perm>> explore(std::size_t top, std::uint64_t& nodes) const {
        std::vector<const Perm*> img(chunk_.size(), nullptr);
        const Perm id = Perm::identity(n_);
        img[chunk_.unit()] = &id;
        ++nodes;
        if (order_.size() < 2) {
            if (!check_depth(0, img)) return std::nullopt;
            return materialize(img);
        }
        if (!check_depth(0, img)) return std::nullopt;
        img[order_[1]] = &first_[top];
        if (!check_depth(1, img)) return std::nullopt;
        if (dfs(2, img, nodes)) return materialize(img);
        return std::nullopt;
    }

private:
    struct Triple {
        Chunk::Index a, b, c;
    };

    bool dfs(std::size_t depth, std::vector<const Perm*>& img, std::uint64_t& nodes) const {
        if (depth == order_.size()) return true;
        for (const auto& cand : all_) {
            ++nodes;
            img[order_[depth]] = &cand;
            if (check_depth(depth, img) && dfs(depth + 1, img, nodes)) return true;
        }
        img[order_[depth]] = nullptr;
        return false;
    }

    bool check_depth(std::size_t depth, const std::vector<const Perm*>& img) const {
        const auto* x = img[order_[depth]];
        for (std::size_t d = 0; d < depth; ++d)
            if (n_ - agreement_count(*img[order_[d]], *x) < min_diff_) return false;
        for (const auto& t : products_at_[depth]) {
            const auto& pa = img[t.a]->images();
            const auto& pb = img[t.b]->images();
            const auto& pc = img[t.c]->images();
            std::size_t bad = 0;
            for (std::size_t i = 0; i < n_; ++i)
                if (pa[pb[i]] != pc[i] && ++bad > max_bad_) return false;
        }
        return true;
    }

    std::vector<Perm> materialize(const std::vector<const Perm*>& img) const {
        std::vector<Perm> out;
        out.reserve(img.size());
        for (const auto* p : img) out.push_back(*p);
        return out;
    }

    const Chunk& chunk_;
    std::size_t n_;
    std::size_t max_bad_ = 0;
    std::size_t min_diff_ = 0;
    std::vector<Chunk::Index> order_;
    std::vector<std::size_t> pos_;
    std::vector<std::vector<Triple>> products_at_;
    std::vector<Perm> first_;
    std::vector<Perm> all_;
};

} // namespace detail

/// Outcome of searching a single degree.
struct DegreeOutcome {
    std::optional<std::vector<Perm>> witness;
    std::size_t classes = 0;
    /// Deterministic only when no witness exists (the whole tree is walked).
    std::uint64_t nodes = 0;
};

/// Decides whether some (1 - 1/r)-expansive 1/r-morphism E -> S_n exists.
/// Workers split the first element's conjugacy classes; the reported witness
/// is the one under the least class, independent of worker count.
inline DegreeOutcome search_degree(const Chunk& c, const Rational& r, std::size_t n, std::size_t workers = 1) {
    if (n == 0) throw error("degree must be positive");
    detail::DegreeSearch s(c, r, n);
    const auto tops = s.top_level_count();
    std::vector<std::optional<std::vector<Perm>>> found(tops);
    std::vector<std::uint64_t> nodes(tops, 0);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{tops};

    auto run = [&] {
        for (;;) {
            const auto i = next.fetch_add(1);
            if (i >= tops || i > best.load()) return;
            found[i] = s.explore(i, nodes[i]);
            if (found[i]) {
                auto cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    workers = std::max<std::size_t>(1, std::min(workers, tops));
    if (workers == 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    }

    DegreeOutcome out;
    out.classes = tops;
    for (auto v : nodes) out.nodes += v;
    if (best.load() < tops) out.witness = std::move(found[best.load()]);
    return out;
}

/// prof_E(r) for r >= 1, scanning n = 1..n_max. r = 1 is accepted and
/// flagged vacuous.
inline ProfileResult sofic_profile(const Chunk& c, const Rational& r, std::size_t n_max,
                                   const SearchOptions& opt = {}) {
    if (r < Rational(1)) throw error("profile parameter r must be >= 1, got " + to_string(r));
    if (n_max == 0) throw error("n_max must be at least 1");
    if (c.size() == 0) throw error("empty chunk");
    if (!opt.skip_validation) {
        auto rep = validate(c);
        if (!rep.ok()) throw error("invalid chunk: " + rep.violations.front().message);
    }
    std::vector<InfeasibleDegree> infeasible;
    for (std::size_t n = 1; n <= n_max; ++n) {
        auto o = search_degree(c, r, n, opt.workers);
        if (o.witness) {
            ProfileCertificate cert;
            cert.r = r;
            cert.n = n;
            cert.assignment = std::move(*o.witness);
            cert.quality = measure(c, cert.assignment);
            cert.infeasible = std::move(infeasible);
            cert.vacuous = r == Rational(1);
            return cert;
        }
        infeasible.push_back({n, o.classes, o.nodes});
    }
    return Exhausted{r, n_max, std::move(infeasible)};
}

inline std::vector<ProfileResult> profile_table(const Chunk& c, std::span<const Rational> rs, std::size_t n_max,
                                                const SearchOptions& opt = {}) {
    std::vector<ProfileResult> out;
    out.reserve(rs.size());
    for (const auto& r : rs) out.push_back(sofic_profile(c, r, n_max, opt));
    return out;
}

/// Re-measures a certificate against its chunk. Throws sofic::error naming
/// the first quantity that does not match.
inline void verify_certificate(const Chunk& c, const ProfileCertificate& cert) {
    if (cert.assignment.size() != c.size()) throw error("certificate does not cover the chunk");
    for (const auto& p : cert.assignment)
        if (p.degree() != cert.n) throw error("certificate image has degree " + std::to_string(p.degree()) +
                                              ", expected " + std::to_string(cert.n));
    const auto q = measure(c, cert.assignment);
    if (q.defect != cert.quality.defect)
        throw error("defect mismatch: claimed " + to_string(cert.quality.defect) + ", measured " +
                    to_string(q.defect));
    if (q.expansiveness != cert.quality.expansiveness)
        throw error("expansiveness mismatch: claimed " +
                    (cert.quality.expansiveness ? to_string(*cert.quality.expansiveness) : "inf") +
                    ", measured " + (q.expansiveness ? to_string(*q.expansiveness) : "inf"));
    if (!meets_thresholds(q, cert.r)) throw error("certificate quality misses the r = " + to_string(cert.r) + " thresholds");
    if (cert.infeasible.size() != cert.n - 1) throw error("certificate does not account for every smaller degree");
    for (std::size_t i = 0; i < cert.infeasible.size(); ++i)
        if (cert.infeasible[i].n != i + 1) throw error("infeasible degree list is out of order");
}

enum class ProductVerdict { equal, distinct };

/// Word-problem decision from an r = 3 certificate: f(i) f(j) is within 1/3
/// of f(k) (equal) or at least 2/3 away (distinct).
inline ProductVerdict decide_product(const Chunk& c, Chunk::Index i, Chunk::Index j, Chunk::Index k,
                                     const ProfileCertificate& cert) {
    if (cert.r != Rational(3)) throw error("decide_product needs an r = 3 certificate");
    if (cert.assignment.size() != c.size()) throw error("certificate does not cover the chunk");
    const auto d = hamming_distance(cert.assignment[i] * cert.assignment[j], cert.assignment[k]);
    if (d < Rational(1, 3)) return ProductVerdict::equal;
    if (d >= Rational(2, 3)) return ProductVerdict::distinct;
    throw error("certificate too weak: distance " + to_string(d) + " lies in [1/3, 2/3)");
}

} // namespace sofic
