#pragma once

// Permutations of N given by evaluators, bounds by growth functions, g-chunks
// and their supp-morphisms: the prefix restrictions of carriers to {0..n-1},
// completed to permutations.

#include "sofic/chunk.hpp"
#include "sofic/growth.hpp"
#include "sofic/perm.hpp"
#include "sofic/profile.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sofic {

using Nat = std::uint64_t;

/// A permutation of N with exact forward and backward evaluators.
/// Evaluators must be pure.
class LazyPerm {
public:
    enum class Kind { identity, finitary, block_sum, gadget, composite };

    struct Descriptor {
        Kind kind = Kind::identity;
        std::string label;
        /// Every point >= support_end is fixed, when known.
        std::optional<Nat> support_end;
    };

    LazyPerm() : LazyPerm(identity()) {}

    static LazyPerm identity() {
        return LazyPerm([](Nat x) { return x; }, [](Nat x) { return x; }, {Kind::identity, "id", 0});
    }

    /// Acts as p on {0..deg-1} and fixes everything else.
    static LazyPerm finitary(const Perm& p) {
        auto fwd = std::make_shared<const Perm>(p);
        auto bwd = std::make_shared<const Perm>(p.inverse());
        const Nat deg = p.degree();
        return LazyPerm([fwd, deg](Nat x) { return x < deg ? Nat{(*fwd)(static_cast<Point>(x))} : x; },
                        [bwd, deg](Nat x) { return x < deg ? Nat{(*bwd)(static_cast<Point>(x))} : x; },
                        {Kind::finitary, to_string(p) + " id-tail", deg});
    }

    /// Named construction with caller-supplied evaluators.
    static LazyPerm gadget(std::string label, std::function<Nat(Nat)> forward, std::function<Nat(Nat)> backward,
                           Kind kind = Kind::gadget, std::optional<Nat> support_end = std::nullopt) {
        return LazyPerm(std::move(forward), std::move(backward), {kind, std::move(label), support_end});
    }

    Nat operator()(Nat x) const { return fwd_(x); }
    Nat forward(Nat x) const { return fwd_(x); }
    Nat backward(Nat x) const { return bwd_(x); }
    const Descriptor& descriptor() const noexcept { return desc_; }

    LazyPerm inverse() const {
        Descriptor d = desc_;
        d.kind = desc_.kind == Kind::identity ? Kind::identity : Kind::composite;
        d.label = "inverse(" + desc_.label + ")";
        return LazyPerm(bwd_, fwd_, d);
    }

    /// Restriction to {0..n-1}; throws unless the prefix is invariant.
    Perm truncate(std::size_t n) const {
        std::vector<Point> im(n);
        for (std::size_t x = 0; x < n; ++x) {
            const auto y = fwd_(x);
            if (y >= n) throw error(desc_.label + " maps " + std::to_string(x) + " outside [0, " + std::to_string(n) + ")");
            im[x] = static_cast<Point>(y);
        }
        return Perm(std::move(im));
    }

private:
    LazyPerm(std::function<Nat(Nat)> f, std::function<Nat(Nat)> b, Descriptor d)
        : fwd_(std::move(f)), bwd_(std::move(b)), desc_(std::move(d)) {}

    friend LazyPerm compose(const LazyPerm& p, const LazyPerm& q);

    std::function<Nat(Nat)> fwd_;
    std::function<Nat(Nat)> bwd_;
    Descriptor desc_;
};

/// (p . q)(x) = p(q(x)).
inline LazyPerm compose(const LazyPerm& p, const LazyPerm& q) {
    LazyPerm::Descriptor d;
    d.kind = LazyPerm::Kind::composite;
    d.label = "(" + p.desc_.label + ")(" + q.desc_.label + ")";
    if (p.desc_.support_end && q.desc_.support_end) d.support_end = std::max(*p.desc_.support_end, *q.desc_.support_end);
    return LazyPerm([f = p.fwd_, g = q.fwd_](Nat x) { return f(g(x)); },
                    [f = p.bwd_, g = q.bwd_](Nat x) { return g(f(x)); }, d);
}

inline LazyPerm operator*(const LazyPerm& p, const LazyPerm& q) { return compose(p, q); }

// ---- bounds -----------------------------------------------------------------

/// rho and rho^-1 are bounded by g on the audited horizon:
/// for all n <= horizon and m <= n, rho(m) <= g(n) and rho^-1(m) <= g(n).
struct BoundWitness {
    GrowthFn g = GrowthFn::affine(1);
    Nat audited_horizon = 0;
    std::optional<std::string> symbolic;
};

struct AuditViolation {
    enum class Kind { not_injective, round_trip, forward_bound, backward_bound };
    Kind kind;
    Nat m = 0;
    Nat n = 0;
    std::string message;
};

using AuditResult = std::variant<BoundWitness, AuditViolation>;

namespace detail {

inline std::optional<AuditViolation> audit_bound(const std::function<Nat(Nat)>& f, const GrowthFn& g, Nat horizon,
                                                 AuditViolation::Kind kind) {
    Nat best = 0, arg = 0;
    for (Nat n = 0; n <= horizon; ++n) {
        const auto v = f(n);
        if (n == 0 || v > best) {
            best = v;
            arg = n;
        }
        if (ExtNat(best) > g.eval(n))
            return AuditViolation{kind, arg, n,
                                  (kind == AuditViolation::Kind::forward_bound ? "rho(" : "rho^-1(") +
                                      std::to_string(arg) + ") = " + std::to_string(best) + " > g(" +
                                      std::to_string(n) + ") = " + to_string(g.eval(n))};
    }
    return std::nullopt;
}

} // namespace detail

inline AuditResult audit(const LazyPerm& p, const GrowthFn& g, Nat horizon) {
    if (horizon < 1) throw error("horizon must be >= 1");
    std::vector<Nat> vals;
    vals.reserve(horizon + 1);
    for (Nat m = 0; m <= horizon; ++m) vals.push_back(p.forward(m));
    std::vector<Nat> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
        auto first = std::find(vals.begin(), vals.end(), *it) - vals.begin();
        auto second = std::find(vals.begin() + first + 1, vals.end(), *it) - vals.begin();
        return AuditViolation{AuditViolation::Kind::not_injective, static_cast<Nat>(first), static_cast<Nat>(second),
                              "forward(" + std::to_string(first) + ") = forward(" + std::to_string(second) + ")"};
    }
    for (Nat m = 0; m <= horizon; ++m) {
        if (p.backward(vals[m]) != m)
            return AuditViolation{AuditViolation::Kind::round_trip, m, m,
                                  "backward(forward(" + std::to_string(m) + ")) != " + std::to_string(m)};
        if (p.forward(p.backward(m)) != m)
            return AuditViolation{AuditViolation::Kind::round_trip, m, m,
                                  "forward(backward(" + std::to_string(m) + ")) != " + std::to_string(m)};
    }
    if (auto v = detail::audit_bound([&](Nat x) { return p.forward(x); }, g, horizon,
                                     AuditViolation::Kind::forward_bound))
        return *v;
    if (auto v = detail::audit_bound([&](Nat x) { return p.backward(x); }, g, horizon,
                                     AuditViolation::Kind::backward_bound))
        return *v;
    return BoundWitness{g, horizon, std::nullopt};
}

// ---- g-chunks ---------------------------------------------------------------

/// A chunk of permutations of N all bounded by one growth function.
struct GChunk {
    Chunk chunk;
    std::vector<LazyPerm> carriers;
    GrowthFn bound = GrowthFn::affine(1);
    std::vector<BoundWitness> witnesses;
    Nat horizon = 0;
};

/// Audits every carrier against g and checks, on [0, horizon], that the unit
/// carrier is the identity and that every defined product a*b = c has
/// carrier(a) . carrier(b) = carrier(c). Throws sofic::error otherwise.
inline GChunk make_gchunk(Chunk chunk, std::vector<LazyPerm> carriers, GrowthFn g, Nat horizon) {
    if (carriers.size() != chunk.size()) throw error("one carrier per chunk element is required");
    GChunk gc{std::move(chunk), std::move(carriers), std::move(g), {}, horizon};
    for (Chunk::Index i = 0; i < gc.chunk.size(); ++i) {
        auto r = audit(gc.carriers[i], gc.bound, horizon);
        if (auto* v = std::get_if<AuditViolation>(&r))
            throw error("carrier of '" + gc.chunk.name(i) + "' fails the bound: " + v->message);
        gc.witnesses.push_back(std::get<BoundWitness>(r));
    }
    const auto& u = gc.carriers[gc.chunk.unit()];
    for (Nat x = 0; x <= horizon; ++x)
        if (u(x) != x) throw error("unit carrier moves " + std::to_string(x));
    for (Chunk::Index a = 0; a < gc.chunk.size(); ++a)
        for (Chunk::Index b = 0; b < gc.chunk.size(); ++b) {
            auto c = gc.chunk.product(a, b);
            if (!c) continue;
            for (Nat x = 0; x <= horizon; ++x)
                if (gc.carriers[a](gc.carriers[b](x)) != gc.carriers[*c](x))
                    throw error("carriers disagree with " + gc.chunk.name(a) + " * " + gc.chunk.name(b) + " = " +
                                gc.chunk.name(*c) + " at " + std::to_string(x));
        }
    return gc;
}

/// Greedy completion of the partial injection {(m, rho(m)) : m < n, rho(m) < n}:
/// unmatched domain points in increasing order go to unmatched range points
/// in increasing order.
inline Perm supp_restrict(const LazyPerm& rho, std::size_t n) {
    constexpr Point unset = static_cast<Point>(-1);
    std::vector<Point> im(n, unset);
    std::vector<bool> hit(n, false);
    for (std::size_t m = 0; m < n; ++m) {
        const auto y = rho(m);
        if (y >= n) continue;
        if (hit[y]) throw error("carrier " + rho.descriptor().label + " is not injective below " + std::to_string(n));
        hit[y] = true;
        im[m] = static_cast<Point>(y);
    }
    std::size_t free_range = 0;
    for (std::size_t m = 0; m < n; ++m) {
        if (im[m] != unset) continue;
        while (hit[free_range]) ++free_range;
        im[m] = static_cast<Point>(free_range);
        hit[free_range] = true;
    }
    return Perm(std::move(im));
}

/// sigma_n : E -> S_n with sigma(unit) = id.
inline std::vector<Perm> supp_morphism(const GChunk& gc, std::size_t n) {
    if (n < 1) throw error("supp-morphism degree must be >= 1");
    std::vector<Perm> out;
    out.reserve(gc.chunk.size());
    for (Chunk::Index i = 0; i < gc.chunk.size(); ++i)
        out.push_back(i == gc.chunk.unit() ? Perm::identity(n) : supp_restrict(gc.carriers[i], n));
    return out;
}

struct SuppReport {
    std::size_t n = 0;
    Rational r{2};
    /// max { m : g(m) <= n }
    std::optional<Nat> m_star;
    MorphismQuality quality;
    /// 2 (n - m*) / n, or 2 when m* does not exist.
    Rational defect_bound{2};
    bool defect_bound_holds = false;
    /// g(n - |Fix(sigma(a) sigma(b)^-1)|) >= n for all distinct a, b.
    bool separation_hypothesis = false;
    /// (n - m*) / n <= 1 / (2r)
    bool prefix_large = false;
    /// measured expansiveness >= 1 - 1/(2r)
    bool expansive_conclusion = false;
};

inline SuppReport supp_quality(const GChunk& gc, std::size_t n, const Rational& r) {
    SuppReport rep;
    rep.n = n;
    rep.r = r;
    const auto sigma = supp_morphism(gc, n);
    rep.quality = measure(gc.chunk, sigma);
    rep.m_star = max_preimage_below(gc.bound, n);
    const auto nn = static_cast<std::int64_t>(n);
    if (rep.m_star) rep.defect_bound = Rational(2 * (nn - static_cast<std::int64_t>(*rep.m_star)), nn);
    rep.defect_bound_holds = rep.quality.defect <= rep.defect_bound;

    rep.separation_hypothesis = true;
    for (Chunk::Index a = 0; a < gc.chunk.size(); ++a)
        for (Chunk::Index b = 0; b < gc.chunk.size(); ++b) {
            if (a == b) continue;
            const auto fix = (sigma[a] * sigma[b].inverse()).fixed_point_count();
            if (gc.bound.eval(n - fix) < ExtNat(n)) rep.separation_hypothesis = false;
        }
    const Rational half_eps = Rational(1) / (Rational(2) * r);
    rep.prefix_large = rep.m_star && Rational(nn - static_cast<std::int64_t>(*rep.m_star), nn) <= half_eps;
    rep.expansive_conclusion = !rep.quality.expansiveness || *rep.quality.expansiveness >= Rational(1) - half_eps;
    return rep;
}

struct PropertyProfile {
    /// Least n <= n_max with defect(sigma_n) <= 1/r.
    std::optional<std::size_t> value;
    std::size_t n_max = 0;
    /// prof_g(2r) as computed by growth_profile.
    GrowthProfile bound;
    /// value <= bound whenever the bound is finite (and within n_max).
    bool bound_respected = true;
    /// n > value, n <= n_max, where the property fails again.
    std::vector<std::size_t> later_failures;
};

inline PropertyProfile property_profile(const GChunk& gc, const Rational& r, std::size_t n_max) {
    if (n_max < 1) throw error("n_max must be >= 1");
    PropertyProfile out;
    out.n_max = n_max;
    const Rational eps = Rational(1) / r;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const auto q = measure(gc.chunk, supp_morphism(gc, n));
        const bool ok = q.defect <= eps;
        if (ok && !out.value) out.value = n;
        else if (!ok && out.value) out.later_failures.push_back(n);
    }
    out.bound = growth_profile(gc.bound, Rational(2) * r, n_max);
    if (out.bound.value) out.bound_respected = out.value && *out.value <= *out.bound.value;
    return out;
}

} // namespace sofic
