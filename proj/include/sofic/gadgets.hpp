#pragma once

// Worked constructions: the 3-cycle g-chunk, the delta shift and the
// transposition encoding of a permutation, and the staged map whose limit is
// a permutation exactly when the stages keep firing.

#include "sofic/chunk.hpp"
#include "sofic/growth.hpp"
#include "sofic/lazyperm.hpp"
#include "sofic/perm.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace sofic {

// ---- 3-cycles ------------------------------------------------------------------

/// h(3k) = 3k+1, h(3k+1) = 3k+2, h(3k+2) = 3k.
inline LazyPerm three_cycle() {
    auto fwd = [](Nat x) { return x % 3 == 2 ? x - 2 : x + 1; };
    auto bwd = [](Nat x) { return x % 3 == 0 ? x + 2 : x - 1; };
    return LazyPerm::gadget("threecycle", fwd, bwd);
}

inline LazyPerm three_cycle_squared() {
    auto h = three_cycle();
    return LazyPerm::gadget("threecycle2", [h](Nat x) { return h.backward(x); }, [h](Nat x) { return h(x); });
}

/// {1, h, h2} with all products, as a g-chunk bounded by Affine(31).
inline GChunk three_cycle_chunk(Nat horizon = 1000) {
    Chunk c({"1", "h", "h2"}, "1");
    c.add_unit_laws();
    c.set_product("h", "h", "h2");
    c.set_product("h", "h2", "1");
    c.set_product("h2", "h", "1");
    c.set_product("h2", "h2", "h");
    return make_gchunk(std::move(c), {LazyPerm::identity(), three_cycle(), three_cycle_squared()}, GrowthFn::affine(31),
                       horizon);
}

struct ExampleReport {
    std::size_t n = 0;
    /// max { m : m + 31 <= n }
    std::size_t m = 0;
    Perm sigma_h;
    Perm sigma_h2;
    /// |Fix(sigma_n(h)^-2 sigma_n(h2))|
    std::size_t fixed = 0;
    bool holds = false;
};

/// sigma_n(h) is the supp restriction of h; sigma_n(h2) is h2 at l with
/// g(l) <= n, the identity at l with g(l-2) > n, greedy in between.
inline ExampleReport example_check(std::size_t n) {
    if (n < 33) throw error("example needs n >= 33");
    ExampleReport rep;
    rep.n = n;
    rep.m = n - 31;
    const auto h = three_cycle();
    rep.sigma_h = supp_restrict(h, n);

    constexpr Point unset = static_cast<Point>(-1);
    std::vector<Point> im(n, unset);
    std::vector<bool> hit(n, false);
    for (std::size_t l = 0; l < n; ++l) {
        Nat y;
        if (l + 31 <= n) y = h.backward(l);
        else if (l >= 2 && l - 2 + 31 > n) y = l;
        else continue;
        im[l] = static_cast<Point>(y);
        hit[y] = true;
    }
    std::size_t free_range = 0;
    for (std::size_t l = 0; l < n; ++l) {
        if (im[l] != unset) continue;
        while (hit[free_range]) ++free_range;
        im[l] = static_cast<Point>(free_range);
        hit[free_range] = true;
    }
    rep.sigma_h2 = Perm(std::move(im));
    const auto inv = rep.sigma_h.inverse();
    rep.fixed = (inv * inv * rep.sigma_h2).fixed_point_count();
    const auto gap = static_cast<long>(rep.m) - static_cast<long>(rep.fixed);
    rep.holds = std::labs(gap) <= 5;
    return rep;
}

/// 2k <-> 2k+1
inline LazyPerm pair_swap() {
    auto f = [](Nat x) { return x ^ Nat{1}; };
    return LazyPerm::gadget("pairswap", f, f);
}

// ---- delta shift and transpositions --------------------------------------------

namespace detail {

// delta walks the line ... 5 3 1 0 2 4 ... one step to the right.
inline long line_position(Nat x) { return x % 2 == 0 ? static_cast<long>(x / 2) : -static_cast<long>((x + 1) / 2); }

inline Nat line_point(long p) { return p >= 0 ? static_cast<Nat>(2 * p) : static_cast<Nat>(-2 * p - 1); }

} // namespace detail

/// delta(1) = 0, delta(2n) = 2n+2, delta(2n+3) = 2n+1.
inline LazyPerm delta() {
    auto fwd = [](Nat x) -> Nat { return x == 1 ? 0 : x % 2 == 0 ? x + 2 : x - 2; };
    auto bwd = [](Nat x) -> Nat { return x == 0 ? 1 : x % 2 == 0 ? x - 2 : x + 2; };
    return LazyPerm::gadget("delta", fwd, bwd);
}

/// delta^k for any integer k.
inline LazyPerm delta_power(long k) {
    auto fwd = [k](Nat x) { return detail::line_point(detail::line_position(x) + k); };
    auto bwd = [k](Nat x) { return detail::line_point(detail::line_position(x) - k); };
    return LazyPerm::gadget("delta^" + std::to_string(k), fwd, bwd);
}

/// (gamma_j, gamma'_j): the pair ((0 1), (0 2)) moved along delta so that the
/// common point of the two supports is j.
inline std::pair<LazyPerm, LazyPerm> gamma_pair(Nat j) {
    const auto d1 = LazyPerm::finitary(Perm::from_cycles(2, {{0, 1}}));
    const auto d2 = LazyPerm::finitary(Perm::from_cycles(3, {{0, 2}}));
    const long i = static_cast<long>(j / 2);
    const long shift = j % 2 == 0 ? i : -(i + 1);
    const auto c = delta_power(shift);
    const auto ci = c.inverse();
    return {c * d1 * ci, c * d2 * ci};
}

/// gamma^rho = rho gamma rho^-1
inline LazyPerm transport(const LazyPerm& gamma, const LazyPerm& rho) { return rho * gamma * rho.inverse(); }

/// Supports of two transpositions meet iff (gamma gamma')^3 = 1.
inline bool cube_is_identity(const Perm& a, const Perm& b) { return power(a * b, 3).is_identity(); }

/// The conjunction of the four cube equations for gamma_n, gamma'_n against
/// gamma_k^rho, (gamma'_k)^rho, evaluated on {0..horizon-1}.
inline bool encode_check(const LazyPerm& rho, Nat k, Nat n, std::size_t horizon = 1000) {
    // both pairs live on {j-2, .., j+2} (or {0, 1, 2} near the origin)
    Nat need = n + 2;
    for (Nat x = k >= 2 ? k - 2 : 0; x <= k + 2; ++x) need = std::max(need, rho(x));
    if (const auto end = rho.descriptor().support_end) need = std::max(need, *end > 0 ? *end - 1 : 0);
    else
        throw error("encode_check needs a carrier with known finite support");
    if (need >= horizon)
        throw error("horizon " + std::to_string(horizon) + " too small: the gadgets reach " + std::to_string(need));
    const auto [gn, gn2] = gamma_pair(n);
    const auto [gk, gk2] = gamma_pair(k);
    const auto tk = transport(gk, rho);
    const auto tk2 = transport(gk2, rho);
    std::vector<Perm> parts;
    for (const auto* p : {&gn, &gn2, &tk, &tk2}) parts.push_back(p->truncate(horizon));
    return cube_is_identity(parts[0], parts[2]) && cube_is_identity(parts[1], parts[2]) &&
           cube_is_identity(parts[0], parts[3]) && cube_is_identity(parts[1], parts[3]);
}

// ---- staged map ------------------------------------------------------------------

/// flags[s] is true when stage s+1 adds a new element.
struct StageTrace {
    std::vector<bool> flags;
};

struct StageReport {
    std::size_t horizon = 0;
    /// Number of fired stages.
    std::size_t fired = 0;
    /// Largest multiple of 3, L <= horizon, such that the map restricted to
    /// [0, L) is a permutation of order 2 (0 when none).
    std::size_t involution_prefix = 0;
    /// Blocks [3l, 3l+3) inside the horizon where 3l and 3l+1 collide.
    std::vector<std::size_t> noninjective_blocks;
};

struct StageResult {
    /// The map on [0, horizon).
    std::vector<Nat> map;
    StageReport report;
};

/// Stage 0 sends 3l, 3l+1 to 3l+2 and 3l+2 to 3l+1. Each fired stage fixes
/// 3l for the first l with 3l still sent to 3l+2.
inline StageResult stage_construction(const StageTrace& trace, std::size_t horizon) {
    if (horizon % 3 != 0) throw error("horizon must be a multiple of 3");
    StageResult out;
    auto& f = out.map;
    f.resize(horizon);
    for (std::size_t l = 0; 3 * l < horizon; ++l) {
        f[3 * l] = 3 * l + 2;
        f[3 * l + 1] = 3 * l + 2;
        f[3 * l + 2] = 3 * l + 1;
    }
    std::size_t next = 0;
    for (bool fire : trace.flags) {
        if (!fire) continue;
        ++out.report.fired;
        while (3 * next < horizon && f[3 * next] != 3 * next + 2) ++next;
        if (3 * next < horizon) f[3 * next] = 3 * next;
    }
    out.report.horizon = horizon;
    for (std::size_t len = 3; len <= horizon; len += 3) {
        bool ok = true;
        bool moves = false;
        for (std::size_t x = 0; ok && x < len; ++x) {
            ok = f[x] < len && f[f[x]] == x;
            moves = moves || f[x] != x;
        }
        if (!ok) break;
        if (moves) out.report.involution_prefix = len;
    }
    for (std::size_t l = 0; 3 * l < horizon; ++l)
        if (f[3 * l] == f[3 * l + 1]) out.report.noninjective_blocks.push_back(l);
    return out;
}

} // namespace sofic
