#pragma once

// Growth functions g : N_inf -> N_inf with g(n+1) >= g(n) > n, the orders
// prec / ll / sim between them, slowness, and the profile
//
//     prof_g(r) = inf { n : exists m, g(m) <= n and (n - m) / n < 1/r }.
//
// Every kind except Custom and Infinity is eventually affine-linear
// (g(n) = a*n + b from some point on); that tail drives all exact decisions.
// Custom functions are black boxes and only ever get horizon-bounded,
// inconclusive verdicts.

#include "sofic/rational.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <stdexcept>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sofic {

/// An element of N extended by a top element.
class ExtNat {
public:
    constexpr ExtNat() = default;
    constexpr ExtNat(std::uint64_t v) : value_(v) {} // NOLINT(implicit)
    static constexpr ExtNat infinity() {
        ExtNat e;
        e.inf_ = true;
        return e;
    }

    constexpr bool is_infinite() const noexcept { return inf_; }
    constexpr std::uint64_t value() const {
        if (inf_) throw error("value() of infinity");
        return value_;
    }

    friend constexpr bool operator==(const ExtNat& a, const ExtNat& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
        if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
        return a.value_ <=> b.value_;
    }

private:
    std::uint64_t value_ = 0;
    bool inf_ = false;
};

inline std::string to_string(const ExtNat& e) { return e.is_infinite() ? "inf" : std::to_string(e.value()); }

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) throw std::overflow_error("growth evaluation overflow");
    return a + b;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw std::overflow_error("growth evaluation overflow");
    return a * b;
}

inline std::optional<std::uint64_t> try_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::nullopt;
    return a * b;
}

inline std::optional<std::uint64_t> try_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) return std::nullopt;
    return a + b;
}

} // namespace detail

/// g(n) = slope * n + offset for every n >= from.
struct AffineTail {
    std::uint64_t slope = 1;
    std::uint64_t offset = 0;
    std::uint64_t from = 0;
};

class GrowthFn {
public:
    struct Affine {
        std::uint64_t c;
    };
    struct Linear {
        std::uint64_t a;
    };
    /// offsets[i] applies on [breaks[i-1], breaks[i]) (breaks[-1] = 0);
    /// the last offset continues past the last break.
    struct BlockStep {
        std::vector<std::uint64_t> breaks;
        std::vector<std::uint64_t> offsets;
    };
    /// values[n] for n < values.size(), then n + tail.
    struct Tabulated {
        std::vector<std::uint64_t> values;
        std::uint64_t tail;
    };
    struct Compose {
        std::shared_ptr<const GrowthFn> outer, inner;
    };
    struct Power {
        std::shared_ptr<const GrowthFn> base;
        std::uint64_t k;
    };
    struct Infinity {};
    struct Custom {
        std::string name;
        std::function<ExtNat(std::uint64_t)> fn;
    };
    using Node = std::variant<Affine, Linear, BlockStep, Tabulated, Compose, Power, Infinity, Custom>;

    /// n + c, c >= 1.
    static GrowthFn affine(std::uint64_t c) {
        if (c < 1) throw error("affine:c needs c >= 1 (n + 0 is not above the diagonal)");
        return GrowthFn(Affine{c});
    }
    /// a * n for n >= 1 and a at n = 0, a >= 2.
    static GrowthFn linear(std::uint64_t a) {
        if (a < 2) throw error("linear:a needs a >= 2");
        return GrowthFn(Linear{a});
    }
    static GrowthFn block_step(std::vector<std::uint64_t> breaks, std::vector<std::uint64_t> offsets) {
        if (breaks.empty() || breaks.size() != offsets.size())
            throw error("blockstep needs matching, non-empty break and offset lists");
        for (std::size_t i = 0; i < breaks.size(); ++i) {
            if (offsets[i] < 1) throw error("blockstep offsets must be >= 1");
            if (i && breaks[i] <= breaks[i - 1]) throw error("blockstep breaks must increase strictly");
            if (i && offsets[i] < offsets[i - 1]) throw error("blockstep offsets must be non-decreasing");
        }
        if (breaks[0] == 0) throw error("blockstep breaks must be positive");
        return GrowthFn(BlockStep{std::move(breaks), std::move(offsets)});
    }
    static GrowthFn tabulated(std::vector<std::uint64_t> values, std::uint64_t tail) {
        if (tail < 1) throw error("tabulated tail must be >= 1");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] <= i) throw error("tabulated value at " + std::to_string(i) + " is not above the diagonal");
            if (i && values[i] < values[i - 1]) throw error("tabulated values must be non-decreasing");
        }
        if (!values.empty() && values.back() > values.size() + tail)
            throw error("tabulated tail drops below the last table value");
        return GrowthFn(Tabulated{std::move(values), tail});
    }
    static GrowthFn compose(const GrowthFn& outer, const GrowthFn& inner) {
        return GrowthFn(Compose{std::make_shared<const GrowthFn>(outer), std::make_shared<const GrowthFn>(inner)});
    }
    static GrowthFn power(const GrowthFn& base, std::uint64_t k) {
        if (k < 1) throw error("power needs k >= 1");
        if (k == 1) return base;
        return GrowthFn(Power{std::make_shared<const GrowthFn>(base), k});
    }
    static GrowthFn infinity() { return GrowthFn(Infinity{}); }
    /// Black-box function; the caller vouches for monotonicity and g(n) > n.
    static GrowthFn custom(std::string name, std::function<ExtNat(std::uint64_t)> fn) {
        return GrowthFn(Custom{std::move(name), std::move(fn)});
    }

    const Node& node() const noexcept { return *node_; }

    ExtNat eval(std::uint64_t n) const {
        return std::visit(
            [n](const auto& k) -> ExtNat {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Affine>) {
                    return detail::checked_add(n, k.c);
                } else if constexpr (std::is_same_v<K, Linear>) {
                    return n == 0 ? k.a : detail::checked_mul(k.a, n);
                } else if constexpr (std::is_same_v<K, BlockStep>) {
                    auto it = std::upper_bound(k.breaks.begin(), k.breaks.end(), n);
                    auto i = std::min<std::size_t>(it - k.breaks.begin(), k.offsets.size() - 1);
                    return detail::checked_add(n, k.offsets[i]);
                } else if constexpr (std::is_same_v<K, Tabulated>) {
                    return n < k.values.size() ? k.values[n] : detail::checked_add(n, k.tail);
                } else if constexpr (std::is_same_v<K, Compose>) {
                    auto in = k.inner->eval(n);
                    return in.is_infinite() ? ExtNat::infinity() : k.outer->eval(in.value());
                } else if constexpr (std::is_same_v<K, Power>) {
                    ExtNat x = n;
                    for (std::uint64_t i = 0; i < k.k && !x.is_infinite(); ++i) x = k.base->eval(x.value());
                    return x;
                } else if constexpr (std::is_same_v<K, Infinity>) {
                    return ExtNat::infinity();
                } else {
                    return k.fn(n);
                }
            },
            *node_);
    }

    ExtNat operator()(std::uint64_t n) const { return eval(n); }

    /// Evaluates to infinity everywhere.
    bool is_infinite() const {
        return std::visit(
            [](const auto& k) -> bool {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Infinity>) return true;
                else if constexpr (std::is_same_v<K, Compose>) return k.outer->is_infinite() || k.inner->is_infinite();
                else if constexpr (std::is_same_v<K, Power>) return k.base->is_infinite();
                else return false;
            },
            *node_);
    }

    /// The eventual affine-linear form, if the function is symbolic and its
    /// coefficients fit in 64 bits. For every symbolic kind g(m) >= slope*m
    /// holds for all m, not just on the tail.
    std::optional<AffineTail> tail() const {
        return std::visit(
            [](const auto& k) -> std::optional<AffineTail> {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Affine>) {
                    return AffineTail{1, k.c, 0};
                } else if constexpr (std::is_same_v<K, Linear>) {
                    return AffineTail{k.a, 0, 1};
                } else if constexpr (std::is_same_v<K, BlockStep>) {
                    return AffineTail{1, k.offsets.back(), k.breaks.back()};
                } else if constexpr (std::is_same_v<K, Tabulated>) {
                    return AffineTail{1, k.tail, k.values.size()};
                } else if constexpr (std::is_same_v<K, Compose>) {
                    return compose_tails(k.outer->tail(), k.inner->tail());
                } else if constexpr (std::is_same_v<K, Power>) {
                    auto b = k.base->tail();
                    auto acc = b;
                    for (std::uint64_t i = 1; i < k.k && acc; ++i) acc = compose_tails(b, acc);
                    return acc;
                } else {
                    return std::nullopt;
                }
            },
            *node_);
    }

    bool is_custom() const {
        return std::visit(
            [](const auto& k) -> bool {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Custom>) return true;
                else if constexpr (std::is_same_v<K, Compose>) return k.outer->is_custom() || k.inner->is_custom();
                else if constexpr (std::is_same_v<K, Power>) return k.base->is_custom();
                else return false;
            },
            *node_);
    }

private:
    explicit GrowthFn(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    static std::optional<AffineTail> compose_tails(std::optional<AffineTail> outer, std::optional<AffineTail> inner) {
        if (!outer || !inner) return std::nullopt;
        // inner(n) > n, so inner(n) >= outer.from once n >= outer.from.
        auto slope = detail::try_mul(outer->slope, inner->slope);
        auto prod = detail::try_mul(outer->slope, inner->offset);
        if (!slope || !prod) return std::nullopt;
        auto off = detail::try_add(*prod, outer->offset);
        if (!off) return std::nullopt;
        return AffineTail{*slope, *off, std::max(outer->from, inner->from)};
    }

    std::shared_ptr<const Node> node_;
};

inline GrowthFn compose(const GrowthFn& outer, const GrowthFn& inner) { return GrowthFn::compose(outer, inner); }
inline GrowthFn power(const GrowthFn& g, std::uint64_t k) { return GrowthFn::power(g, k); }

// ---- text form --------------------------------------------------------------

inline std::string to_string(const GrowthFn& g) {
    return std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            auto join = [](const std::vector<std::uint64_t>& v) {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
                return s;
            };
            if constexpr (std::is_same_v<K, GrowthFn::Affine>) {
                return "affine:" + std::to_string(k.c);
            } else if constexpr (std::is_same_v<K, GrowthFn::Linear>) {
                return "linear:" + std::to_string(k.a);
            } else if constexpr (std::is_same_v<K, GrowthFn::BlockStep>) {
                std::string s = "blockstep:";
                for (std::size_t i = 0; i < k.breaks.size(); ++i)
                    s += (i ? ";" : "") + std::to_string(k.breaks[i]) + "," + std::to_string(k.offsets[i]);
                return s;
            } else if constexpr (std::is_same_v<K, GrowthFn::Tabulated>) {
                return "tabulated:" + join(k.values) + ";" + std::to_string(k.tail);
            } else if constexpr (std::is_same_v<K, GrowthFn::Compose>) {
                return "compose(" + to_string(*k.outer) + "," + to_string(*k.inner) + ")";
            } else if constexpr (std::is_same_v<K, GrowthFn::Power>) {
                return "power(" + to_string(*k.base) + "," + std::to_string(k.k) + ")";
            } else if constexpr (std::is_same_v<K, GrowthFn::Infinity>) {
                return "infinity";
            } else {
                return "custom:" + k.name;
            }
        },
        g.node());
}

namespace detail {

class GrowthParser {
public:
    explicit GrowthParser(std::string_view s) : s_(s) {}

    GrowthFn parse_all() {
        auto g = parse();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing text");
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw error("growth spec '" + std::string(s_) + "': " + what + " at offset " + std::to_string(pos_));
    }
    void skip_ws() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }
    bool eat(std::string_view tok) {
        skip_ws();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
    }
    std::uint64_t number() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        try {
            return std::stoull(std::string(s_.substr(start, pos_ - start)));
        } catch (const std::exception&) {
            fail("number out of range");
        }
    }

    GrowthFn parse() {
        if (eat("affine:")) return GrowthFn::affine(number());
        if (eat("linear:")) return GrowthFn::linear(number());
        if (eat("infinity")) return GrowthFn::infinity();
        if (eat("blockstep:")) {
            std::vector<std::uint64_t> b, o;
            do {
                b.push_back(number());
                expect(",");
                o.push_back(number());
            } while (eat(";"));
            return GrowthFn::block_step(std::move(b), std::move(o));
        }
        if (eat("tabulated:")) {
            std::vector<std::uint64_t> v;
            if (!eat(";")) {
                do v.push_back(number());
                while (eat(","));
                expect(";");
            }
            return GrowthFn::tabulated(std::move(v), number());
        }
        if (eat("compose(")) {
            auto f = parse();
            expect(",");
            auto g = parse();
            expect(")");
            return GrowthFn::compose(f, g);
        }
        if (eat("power(")) {
            auto f = parse();
            expect(",");
            auto k = number();
            expect(")");
            return GrowthFn::power(f, k);
        }
        fail("unknown growth kind");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses `affine:c`, `linear:a`, `blockstep:b1,o1;b2,o2;...`,
/// `tabulated:v0,v1,...;c`, `compose(G,H)`, `power(G,k)`, `infinity`.
inline GrowthFn parse_growth(std::string_view spec) { return detail::GrowthParser(spec).parse_all(); }

// ---- orders -----------------------------------------------------------------

enum class Outcome { holds, fails, inconclusive };

inline const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::holds: return "true";
    case Outcome::fails: return "false";
    case Outcome::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Verdict for f prec g: f(n) < g(n) for all n >= n0.
struct PrecVerdict {
    Outcome outcome = Outcome::inconclusive;
    /// Decided from the affine tails rather than from samples.
    bool exact = false;
    /// Least n0 with f(n) < g(n) for every n >= n0 (on the horizon if inexact).
    std::optional<std::uint64_t> n0;
    /// Some n beyond which f(n) >= g(n) throughout.
    std::optional<std::uint64_t> witness;
    std::string note;
};

namespace detail {

inline bool less_at(const GrowthFn& f, const GrowthFn& g, std::uint64_t n) { return f.eval(n) < g.eval(n); }

/// Least n0 <= t with f < g on [n0, t], given f < g from t onwards.
inline std::uint64_t scan_down(const GrowthFn& f, const GrowthFn& g, std::uint64_t t) {
    std::uint64_t n0 = t;
    while (n0 > 0 && less_at(f, g, n0 - 1)) --n0;
    return n0;
}

// Smallest n >= 0 with d*n > e (d > 0), i.e. floor(e/d) + 1 when e >= 0.
inline std::uint64_t first_above(std::int64_t e, std::uint64_t d) {
    if (e < 0) return 0;
    return static_cast<std::uint64_t>(e) / d + 1;
}

} // namespace detail

inline PrecVerdict lt_eventually(const GrowthFn& f, const GrowthFn& g, std::uint64_t horizon) {
    if (horizon < 1) throw error("horizon must be >= 1");
    PrecVerdict v;
    if (f.is_infinite()) {
        v.outcome = Outcome::fails;
        v.exact = true;
        v.witness = 0;
        v.note = "f is infinite everywhere; infinity < x never holds";
        return v;
    }
    const auto tf = f.tail();
    if (g.is_infinite() && tf) {
        v.outcome = Outcome::holds;
        v.exact = true;
        v.n0 = 0;
        v.note = "g is infinite everywhere and f is finite";
        return v;
    }
    const auto tg = g.tail();
    if (tf && tg) {
        v.exact = true;
        const auto from = std::max(tf->from, tg->from);
        const auto df = static_cast<std::int64_t>(tf->offset) - static_cast<std::int64_t>(tg->offset);
        if (tg->slope > tf->slope) {
            // (a_g - a_f) n > b_f - b_g
            const auto t = std::max(from, detail::first_above(df, tg->slope - tf->slope));
            v.outcome = Outcome::holds;
            v.n0 = detail::scan_down(f, g, t);
            v.note = "tail slopes " + std::to_string(tf->slope) + " < " + std::to_string(tg->slope);
        } else if (tg->slope == tf->slope) {
            if (tg->offset > tf->offset) {
                v.outcome = Outcome::holds;
                v.n0 = detail::scan_down(f, g, from);
                v.note = "equal tail slopes, offsets " + std::to_string(tf->offset) + " < " + std::to_string(tg->offset);
            } else {
                v.outcome = Outcome::fails;
                v.witness = from;
                v.note = "equal tail slopes, offsets " + std::to_string(tf->offset) +
                         " >= " + std::to_string(tg->offset);
            }
        } else {
            // f(n) >= g(n) once (a_f - a_g) n >= b_g - b_f
            const auto e = -df;
            const auto d = tf->slope - tg->slope;
            std::uint64_t t = e <= 0 ? 0 : (static_cast<std::uint64_t>(e) + d - 1) / d;
            v.outcome = Outcome::fails;
            v.witness = std::max(from, t);
            v.note = "tail slopes " + std::to_string(tf->slope) + " > " + std::to_string(tg->slope);
        }
        return v;
    }
    // Black box: sample [0, horizon].
    std::optional<std::uint64_t> last_bad;
    for (std::uint64_t n = 0; n <= horizon; ++n)
        if (!detail::less_at(f, g, n)) last_bad = n;
    v.outcome = Outcome::inconclusive;
    if (!last_bad) {
        v.n0 = 0;
        v.note = "f < g on all of [0, " + std::to_string(horizon) + "]; no symbolic tail";
    } else if (*last_bad < horizon) {
        v.n0 = *last_bad + 1;
        v.note = "f < g on [" + std::to_string(*v.n0) + ", " + std::to_string(horizon) + "]; no symbolic tail";
    } else {
        v.witness = horizon;
        v.note = "f >= g at the horizon " + std::to_string(horizon) + "; no symbolic tail";
    }
    return v;
}

/// Verdict for f ll g (every power of f is prec g) or f sim g.
struct PowerVerdict {
    Outcome outcome = Outcome::inconclusive;
    bool exact = false;
    /// Powers examined one by one.
    std::uint64_t k_checked = 0;
    /// sim: the least k witnessing it. ll: the least failing k.
    std::optional<std::uint64_t> k;
    std::string note;
};

inline PowerVerdict ll(const GrowthFn& f, const GrowthFn& g, std::uint64_t k_max, std::uint64_t horizon) {
    if (k_max < 1) throw error("k_max must be >= 1");
    PowerVerdict v;
    bool all_exact = true;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        auto p = lt_eventually(power(f, k), g, horizon);
        v.k_checked = k;
        all_exact = all_exact && p.exact;
        if (p.outcome == Outcome::fails) {
            v.outcome = Outcome::fails;
            v.exact = p.exact;
            v.k = k;
            v.note = "f^" + std::to_string(k) + " is not eventually below g";
            return v;
        }
        if (p.outcome == Outcome::inconclusive) {
            v.outcome = Outcome::inconclusive;
            v.note = "f^" + std::to_string(k) + " vs g: " + p.note;
            return v;
        }
    }
    const auto tf = f.tail();
    const auto tg = g.tail();
    if (all_exact && !f.is_infinite() && g.is_infinite()) {
        v.outcome = Outcome::holds;
        v.exact = true;
        v.note = "g is infinite";
        return v;
    }
    if (all_exact && tf && tg) {
        if (tf->slope == 1 && tg->slope > 1) {
            v.outcome = Outcome::holds;
            v.exact = true;
            v.note = "every power of f has tail slope 1 < " + std::to_string(tg->slope);
            return v;
        }
        // Powers of f eventually overtake g; find the first one that does.
        for (std::uint64_t k = k_max + 1; k <= k_max + 4096; ++k) {
            auto p = lt_eventually(power(f, k), g, horizon);
            if (!p.exact) break;
            if (p.outcome == Outcome::fails) {
                v.outcome = Outcome::fails;
                v.exact = true;
                v.k = k;
                v.note = "holds up to k = " + std::to_string(k_max) + " but f^" + std::to_string(k) +
                         " is not eventually below g";
                return v;
            }
        }
    }
    v.outcome = Outcome::holds;
    v.exact = false;
    v.note = "holds for every k <= " + std::to_string(k_max);
    return v;
}

inline PowerVerdict sim(const GrowthFn& f, const GrowthFn& g, std::uint64_t k_max, std::uint64_t horizon) {
    if (k_max < 1) throw error("k_max must be >= 1");
    PowerVerdict v;
    bool saw_inexact = false;
    auto try_k = [&](std::uint64_t k) {
        auto a = lt_eventually(f, power(g, k), horizon);
        auto b = lt_eventually(g, power(f, k), horizon);
        saw_inexact = saw_inexact || !a.exact || !b.exact;
        return a.outcome == Outcome::holds && b.outcome == Outcome::holds;
    };
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        v.k_checked = k;
        if (try_k(k)) {
            v.outcome = saw_inexact ? Outcome::inconclusive : Outcome::holds;
            v.exact = !saw_inexact;
            v.k = k;
            v.note = saw_inexact ? "sampled comparisons agree at k = " + std::to_string(k) : "k = " + std::to_string(k);
            return v;
        }
    }
    const auto tf = f.tail();
    const auto tg = g.tail();
    if (!saw_inexact && f.is_infinite() && g.is_infinite()) {
        v.outcome = Outcome::fails;
        v.exact = true;
        v.note = "infinity is never below infinity";
        return v;
    }
    if (!saw_inexact && tf && tg) {
        const bool same_class = (tf->slope == 1) == (tg->slope == 1);
        if (!same_class) {
            v.outcome = Outcome::fails;
            v.exact = true;
            v.note = "tail slopes " + std::to_string(tf->slope) + " and " + std::to_string(tg->slope) +
                     " lie in different classes";
            return v;
        }
        v.outcome = Outcome::inconclusive;
        v.note = "no k <= " + std::to_string(k_max) + " works, but a larger k does (same tail-slope class)";
        return v;
    }
    if (!saw_inexact && (f.is_infinite() != g.is_infinite())) {
        v.outcome = Outcome::fails;
        v.exact = true;
        v.note = "exactly one side is infinite";
        return v;
    }
    v.outcome = Outcome::inconclusive;
    v.note = "no k <= " + std::to_string(k_max) + " found";
    return v;
}

// ---- slowness ---------------------------------------------------------------

/// max over n in [from, to] of 1 - n / g(n). Infinite values count as 1.
inline Rational max_slowness_gap(const GrowthFn& g, std::uint64_t from, std::uint64_t to) {
    Rational worst(0);
    for (std::uint64_t n = from; n <= to; ++n) {
        const auto v = g.eval(n);
        if (v.is_infinite()) return Rational(1);
        const Rational gap(static_cast<std::int64_t>(v.value() - n), static_cast<std::int64_t>(v.value()));
        worst = std::max(worst, gap);
    }
    return worst;
}

struct BlockEvidence {
    /// Block number, counted from 2.
    std::uint64_t index = 0;
    std::uint64_t end = 0;
    /// 1 - (end - 1) / g(end - 1)
    Rational gap{0};
    bool below_inverse_index = false;
};

struct SlownessVerdict {
    enum class Kind { slow, not_slow, inconclusive };
    Kind verdict = Kind::inconclusive;
    std::string evidence;
    /// Sampled max of 1 - n/g(n) on [horizon/2, horizon] for black boxes.
    std::optional<Rational> sampled_gap;
    std::uint64_t horizon = 0;
    /// For block-step functions: the gap at every block end.
    std::vector<BlockEvidence> blocks;
};

inline const char* to_string(SlownessVerdict::Kind k) {
    switch (k) {
    case SlownessVerdict::Kind::slow: return "slow";
    case SlownessVerdict::Kind::not_slow: return "not_slow";
    case SlownessVerdict::Kind::inconclusive: return "inconclusive";
    }
    return "?";
}

inline SlownessVerdict is_slow(const GrowthFn& g, std::uint64_t horizon) {
    if (horizon < 1) throw error("horizon must be >= 1");
    SlownessVerdict v;
    v.horizon = horizon;
    if (g.is_infinite()) {
        v.verdict = SlownessVerdict::Kind::not_slow;
        v.evidence = "n / g(n) = 0 for infinite g";
        return v;
    }
    if (const auto* bs = std::get_if<GrowthFn::BlockStep>(&g.node())) {
        for (std::size_t i = 0; i < bs->breaks.size(); ++i) {
            const auto end = bs->breaks[i];
            BlockEvidence b;
            b.index = i + 2;
            b.end = end;
            const auto at = end - 1;
            const auto gv = g.eval(at).value();
            b.gap = Rational(static_cast<std::int64_t>(gv - at), static_cast<std::int64_t>(gv));
            b.below_inverse_index = b.gap < Rational(1, static_cast<std::int64_t>(b.index));
            v.blocks.push_back(b);
        }
    }
    if (auto t = g.tail()) {
        if (t->slope == 1) {
            v.verdict = SlownessVerdict::Kind::slow;
            v.evidence = "eventually n + " + std::to_string(t->offset) + " (from n = " + std::to_string(t->from) + ")";
            if (!v.blocks.empty()) {
                const bool all = std::all_of(v.blocks.begin(), v.blocks.end(),
                                             [](const BlockEvidence& b) { return b.below_inverse_index; });
                v.evidence += all ? "; block-end gaps 1 - (N-1)/g(N-1) < 1/n at every block"
                                  : "; some block-end gap is not below 1/n";
            }
        } else {
            v.verdict = SlownessVerdict::Kind::not_slow;
            v.evidence = "eventually " + std::to_string(t->slope) + "n + " + std::to_string(t->offset) +
                         ", n/g(n) -> 1/" + std::to_string(t->slope);
        }
        return v;
    }
    v.verdict = SlownessVerdict::Kind::inconclusive;
    v.sampled_gap = max_slowness_gap(g, horizon / 2, horizon);
    v.evidence = "black box; sampled gap on [" + std::to_string(horizon / 2) + ", " + std::to_string(horizon) + "]";
    return v;
}

// ---- profile of a growth function ------------------------------------------

struct GrowthProfile {
    /// prof_g(r), or nullopt when no n <= n_max qualifies.
    std::optional<std::uint64_t> value;
    /// The m with g(m) <= value realizing the bound.
    std::optional<std::uint64_t> m;
    std::uint64_t n_max = 0;
    /// Set when the infimum is provably over the empty set.
    bool provably_infinite = false;
    std::string note;

    bool exhausted() const noexcept { return !value.has_value(); }
};

/// max { m <= n : g(m) <= n }, by binary search (g is monotone).
inline std::optional<std::uint64_t> max_preimage_below(const GrowthFn& g, std::uint64_t n) {
    if (g.eval(0) > ExtNat(n)) return std::nullopt;
    std::uint64_t lo = 0, hi = n; // g(lo) <= n; g(m) > m so the answer is < n
    while (lo < hi) {
        const auto mid = lo + (hi - lo + 1) / 2;
        if (g.eval(mid) <= ExtNat(n)) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

inline GrowthProfile growth_profile(const GrowthFn& g, const Rational& r, std::uint64_t n_max) {
    if (r < Rational(1)) throw error("profile parameter r must be >= 1");
    if (n_max < 1) throw error("n_max must be >= 1");
    GrowthProfile out;
    out.n_max = n_max;
    if (g.is_infinite()) {
        out.provably_infinite = true;
        out.note = "no m has g(m) <= n: infimum of the empty set";
        return out;
    }
    const auto p = r.numerator();
    const auto q = r.denominator();
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const auto m = max_preimage_below(g, n);
        if (!m) continue;
        // (n - m) / n < q / p, strictly
        const auto lhs = static_cast<__int128>(n - *m) * p;
        const auto rhs = static_cast<__int128>(q) * static_cast<__int128>(n);
        if (lhs < rhs) {
            out.value = n;
            out.m = *m;
            return out;
        }
    }
    if (auto t = g.tail(); t && t->slope >= 2 && !g.is_custom()) {
        // g(m) >= a*m everywhere, so m <= n/a and (n - m)/n >= 1 - 1/a.
        const Rational floor_gap = Rational(1) - Rational(1, static_cast<std::int64_t>(t->slope));
        if (floor_gap >= Rational(1) / r) {
            out.provably_infinite = true;
            out.note = "g(m) >= " + std::to_string(t->slope) + "m forces (n-m)/n >= " + to_string(floor_gap) +
                       " >= 1/r for every n";
        }
    }
    if (out.note.empty()) out.note = "no n <= " + std::to_string(n_max) + " qualifies";
    return out;
}

// ---- profile domination -----------------------------------------------------

/// A profile function sampled at rational arguments.
using ProfileTable = std::map<Rational, ExtNat>;

inline ProfileTable growth_profile_table(const GrowthFn& g, std::span<const Rational> rs, std::uint64_t n_max) {
    ProfileTable t;
    for (const auto& r : rs) {
        auto p = growth_profile(g, r, n_max);
        t[r] = p.value ? ExtNat(*p.value) : ExtNat::infinity();
    }
    return t;
}

struct PfComparison {
    bool holds = true;
    std::optional<Rational> failing_r;
};

/// u(r) <= C * v(C' * r) + C'' at every sampled r. Throws if a needed
/// argument is missing from a table.
inline PfComparison compare_pf(const ProfileTable& u, const ProfileTable& v, const Rational& c, const Rational& c1,
                               const Rational& c2, std::span<const Rational> sample_rs) {
    if (c <= Rational(0) || c1 <= Rational(0) || c2 < Rational(0)) throw error("compare_pf constants must be positive");
    PfComparison out;
    for (const auto& r : sample_rs) {
        auto iu = u.find(r);
        auto iv = v.find(c1 * r);
        if (iu == u.end()) throw error("u is not tabulated at r = " + to_string(r));
        if (iv == v.end()) throw error("v is not tabulated at r = " + to_string(c1 * r));
        bool ok;
        if (iv->second.is_infinite()) ok = true;
        else if (iu->second.is_infinite()) ok = false;
        else
            ok = Rational(static_cast<std::int64_t>(iu->second.value())) <=
                 c * Rational(static_cast<std::int64_t>(iv->second.value())) + c2;
        if (!ok) {
            out.holds = false;
            out.failing_r = r;
            return out;
        }
    }
    return out;
}

struct PfConstants {
    Rational c{1};
    Rational c2{0};
};

/// For fixed C', the least integer C in [1, c_max] that works with C'' = 0,
/// else C = 1 with the least integer C'' that works. Throws if some sampled
/// value of u is infinite while v is finite.
inline PfConstants find_pf_constants(const ProfileTable& u, const ProfileTable& v, const Rational& c1,
                                     std::span<const Rational> sample_rs, std::int64_t c_max = 16) {
    for (std::int64_t c = 1; c <= c_max; ++c)
        if (compare_pf(u, v, Rational(c), c1, Rational(0), sample_rs).holds) return {Rational(c), Rational(0)};
    std::int64_t need = 0;
    for (const auto& r : sample_rs) {
        const auto& uv = u.at(r);
        const auto& vv = v.at(c1 * r);
        if (vv.is_infinite()) continue;
        if (uv.is_infinite()) throw error("u is infinite where v is finite at r = " + to_string(r));
        need = std::max(need, static_cast<std::int64_t>(uv.value()) - static_cast<std::int64_t>(vv.value()));
    }
    return {Rational(1), Rational(need)};
}

} // namespace sofic
