#include "sofic/growth.hpp"

#include <catch_amalgamated.hpp>

using namespace sofic;

namespace {

// Least n <= n_max with some m, g(m) <= n and (n - m) * p < q * n, by
// trying every m.
std::optional<std::uint64_t> brute_profile(const GrowthFn& g, std::int64_t p, std::int64_t q, std::uint64_t n_max) {
    for (std::uint64_t n = 1; n <= n_max; ++n)
        for (std::uint64_t m = 0; m <= n; ++m)
            if (g.eval(m) <= ExtNat(n) && static_cast<std::int64_t>(n - m) * p < q * static_cast<std::int64_t>(n))
                return n;
    return std::nullopt;
}

std::vector<GrowthFn> samples() {
    return {GrowthFn::affine(1),
            GrowthFn::affine(31),
            GrowthFn::linear(2),
            GrowthFn::linear(3),
            parse_growth("blockstep:4,2;10,3;30,5"),
            parse_growth("tabulated:3,3,5,6;3"),
            parse_growth("compose(affine:2,linear:2)"),
            parse_growth("power(affine:3,4)")};
}

} // namespace

TEST_CASE("evaluation") {
    REQUIRE(GrowthFn::affine(1).eval(7) == ExtNat(8));
    for (std::uint64_t n = 0; n < 50; ++n) REQUIRE(power(GrowthFn::affine(1), 3).eval(n) == ExtNat(n + 3));
    REQUIRE(GrowthFn::infinity().eval(5).is_infinite());
    REQUIRE(GrowthFn::linear(2).eval(0) == ExtNat(2));
    REQUIRE(GrowthFn::linear(2).eval(6) == ExtNat(12));
    const auto bs = parse_growth("blockstep:4,2;10,3");
    REQUIRE(bs.eval(0) == ExtNat(2));
    REQUIRE(bs.eval(3) == ExtNat(5));
    REQUIRE(bs.eval(4) == ExtNat(7));
    REQUIRE(bs.eval(50) == ExtNat(53));
    REQUIRE(parse_growth("tabulated:3,3,5;2").eval(4) == ExtNat(6));
}

TEST_CASE("construction rejects functions outside the class") {
    REQUIRE_THROWS_AS(GrowthFn::affine(0), error);
    REQUIRE_THROWS_AS(GrowthFn::linear(1), error);
    REQUIRE_THROWS_AS(parse_growth("tabulated:0,5;1"), error);
    REQUIRE_THROWS_AS(parse_growth("tabulated:5,3;1"), error);
    REQUIRE_THROWS_AS(parse_growth("blockstep:4,2;3,3"), error);
    REQUIRE_THROWS_AS(parse_growth("power(affine:1,0)"), error);
    REQUIRE_THROWS_AS(parse_growth("affine:"), error);
    REQUIRE_THROWS_AS(parse_growth("affine:1 junk"), error);
}

TEST_CASE("monotone and above the diagonal") {
    for (const auto& g : samples())
        for (std::uint64_t n = 0; n < 2000; ++n) {
            INFO(to_string(g) << " at " << n);
            REQUIRE(g.eval(n) > ExtNat(n));
            REQUIRE(g.eval(n + 1) >= g.eval(n));
        }
}

TEST_CASE("spec strings round trip") {
    for (const auto& g : samples()) {
        const auto again = parse_growth(to_string(g));
        REQUIRE(to_string(again) == to_string(g));
        for (std::uint64_t n = 0; n < 200; ++n) REQUIRE(again.eval(n) == g.eval(n));
    }
}

TEST_CASE("tails agree with evaluation") {
    for (const auto& g : samples()) {
        const auto t = g.tail();
        REQUIRE(t);
        for (std::uint64_t n = t->from; n < t->from + 500; ++n)
            REQUIRE(g.eval(n) == ExtNat(t->slope * n + t->offset));
    }
}

TEST_CASE("eventual order") {
    const auto a1 = GrowthFn::affine(1), a2 = GrowthFn::affine(2), a5 = GrowthFn::affine(5), l2 = GrowthFn::linear(2);
    auto v = lt_eventually(a1, a2, 100);
    REQUIRE(v.outcome == Outcome::holds);
    REQUIRE(v.n0 == 0u);
    REQUIRE(lt_eventually(a5, a2, 100).outcome == Outcome::fails);
    v = lt_eventually(a2, l2, 100);
    REQUIRE(v.outcome == Outcome::holds);
    REQUIRE(v.exact);
    REQUIRE(v.n0 == 3u);
    REQUIRE(lt_eventually(l2, a2, 100).outcome == Outcome::fails);
    REQUIRE(lt_eventually(a1, GrowthFn::infinity(), 10).outcome == Outcome::holds);
    REQUIRE(lt_eventually(GrowthFn::infinity(), a1, 10).outcome == Outcome::fails);
}

TEST_CASE("black boxes are never decided") {
    const auto c = GrowthFn::custom("n+2", [](std::uint64_t n) { return ExtNat(n + 2); });
    const auto v = lt_eventually(GrowthFn::affine(1), c, 100);
    REQUIRE(v.outcome == Outcome::inconclusive);
    REQUIRE(v.n0 == 0u);
    REQUIRE(is_slow(c, 1000).verdict == SlownessVerdict::Kind::inconclusive);
}

TEST_CASE("power orders") {
    const auto a1 = GrowthFn::affine(1), a2 = GrowthFn::affine(2), l2 = GrowthFn::linear(2);
    auto s = sim(a1, a2, 3, 100);
    REQUIRE(s.outcome == Outcome::holds);
    REQUIRE(s.k == 3u);
    REQUIRE(sim(a1, a2, 2, 100).outcome == Outcome::inconclusive);
    REQUIRE(sim(l2, a1, 10, 100).outcome == Outcome::fails);
    REQUIRE(ll(a1, l2, 5, 100).outcome == Outcome::holds);
    REQUIRE(ll(a1, a2, 5, 100).outcome == Outcome::fails);
    REQUIRE(ll(a1, a2, 5, 100).k == 2u);
    // 2^k n overtakes 3n at k = 2
    auto l = ll(l2, GrowthFn::linear(3), 1, 100);
    REQUIRE(l.outcome == Outcome::fails);
    REQUIRE(l.k == 2u);
}

TEST_CASE("slowness") {
    REQUIRE(is_slow(GrowthFn::affine(31), 100).verdict == SlownessVerdict::Kind::slow);
    REQUIRE(is_slow(GrowthFn::linear(2), 100).verdict == SlownessVerdict::Kind::not_slow);
    REQUIRE(is_slow(GrowthFn::infinity(), 100).verdict == SlownessVerdict::Kind::not_slow);
    const auto bs = is_slow(parse_growth("blockstep:2,2;6,4;24,6"), 100);
    REQUIRE(bs.verdict == SlownessVerdict::Kind::slow);
    REQUIRE(bs.blocks.size() == 3);
    // 1 - 23/29 = 6/29 < 1/4
    REQUIRE(bs.blocks[2].gap == Rational(6, 29));
    REQUIRE(bs.blocks[2].below_inverse_index);
    for (std::uint64_t c = 1; c <= 19; ++c)
        REQUIRE(max_slowness_gap(compose(GrowthFn::affine(c), GrowthFn::affine(40 - 2 * c)), 1000, 3000) < Rational(1, 20));
}

TEST_CASE("growth profile") {
    REQUIRE(growth_profile(GrowthFn::affine(1), Rational(2), 10).value == 3u);
    const auto inf = growth_profile(GrowthFn::infinity(), Rational(2), 1000);
    REQUIRE(inf.exhausted());
    REQUIRE(inf.provably_infinite);
    const auto l2 = growth_profile(GrowthFn::linear(2), Rational(3), 500);
    REQUIRE(l2.exhausted());
    REQUIRE(l2.provably_infinite);
    REQUIRE(growth_profile(GrowthFn::linear(2), Rational(1), 10).value.has_value());
    REQUIRE(growth_profile(GrowthFn::affine(3), Rational(2), 5).exhausted());
    REQUIRE_FALSE(growth_profile(GrowthFn::affine(3), Rational(2), 5).provably_infinite);
}

TEST_CASE("growth profile matches a scan over every m") {
    const std::pair<std::int64_t, std::int64_t> rs[] = {{1, 1}, {3, 2}, {2, 1}, {3, 1}, {7, 2}, {10, 1}};
    for (const auto& g : samples())
        for (auto [p, q] : rs) {
            INFO(to_string(g) << " r=" << p << "/" << q);
            const auto got = growth_profile(g, Rational(p, q), 300);
            REQUIRE(got.value == brute_profile(g, p, q, 300));
            if (got.value) {
                bool is_value = false;
                for (std::uint64_t m = 0; m <= *got.value; ++m) is_value = is_value || g.eval(m) == ExtNat(*got.value);
                REQUIRE(is_value);
            }
        }
}

TEST_CASE("pointwise order is reflected in profiles") {
    const auto gs = samples();
    for (const auto& f : gs)
        for (const auto& g : gs) {
            const auto v = lt_eventually(f, g, 100);
            if (v.outcome != Outcome::holds) continue;
            // small n matter to the profile, so only pairs ordered from 0 on
            if (*v.n0 != 0) continue;
            for (std::int64_t r = 2; r <= 6; ++r) {
                const auto pf = growth_profile(f, Rational(r), 2000);
                const auto pg = growth_profile(g, Rational(r), 2000);
                if (pf.value && pg.value) REQUIRE(*pf.value <= *pg.value);
            }
        }
}

TEST_CASE("profile domination") {
    std::vector<Rational> rs;
    for (std::int64_t r = 2; r <= 5; ++r) rs.push_back(Rational(r));
    const auto u = growth_profile_table(GrowthFn::affine(1), rs, 1000);
    const auto v = growth_profile_table(GrowthFn::affine(2), rs, 1000);
    REQUIRE(compare_pf(u, u, Rational(1), Rational(1), Rational(0), rs).holds);
    REQUIRE(compare_pf(u, v, Rational(1), Rational(1), Rational(2), rs).holds);
    REQUIRE_FALSE(compare_pf(v, u, Rational(1), Rational(1), Rational(0), rs).holds);
    REQUIRE_THROWS_AS(compare_pf(u, v, Rational(1), Rational(2), Rational(0), rs), error);
}

TEST_CASE("doubling the growth against half the parameter") {
    std::vector<Rational> rs, halves;
    for (std::int64_t r = 2; r <= 10; ++r) {
        rs.push_back(Rational(r));
        halves.push_back(Rational(r, 2));
    }
    const auto u = growth_profile_table(GrowthFn::affine(2), rs, 1000);
    const auto v = growth_profile_table(GrowthFn::affine(1), halves, 1000);
    // u(r) = 2r + 1 and v(r/2) = floor(r/2) + 1
    for (std::int64_t r = 2; r <= 10; ++r) {
        REQUIRE(u.at(Rational(r)) == ExtNat(2 * r + 1));
        REQUIRE(v.at(Rational(r, 2)) == ExtNat(r / 2 + 1));
    }
    const auto k = find_pf_constants(u, v, Rational(1, 2), rs);
    REQUIRE(k.c == Rational(4));
    REQUIRE(k.c2 == Rational(0));
    REQUIRE(compare_pf(u, v, k.c, Rational(1, 2), k.c2, rs).holds);
    REQUIRE_FALSE(compare_pf(u, v, Rational(3), Rational(1, 2), Rational(0), rs).holds);
}
