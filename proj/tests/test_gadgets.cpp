#include "sofic/gadgets.hpp"

#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <set>

using namespace sofic;

namespace {

std::set<Nat> support(const Perm& p) {
    std::set<Nat> s;
    for (Point x = 0; x < p.degree(); ++x)
        if (p(x) != x) s.insert(x);
    return s;
}

std::set<Nat> triple(Nat j) {
    const auto [a, b] = gamma_pair(j);
    auto s = support(a.truncate(j + 8));
    for (auto x : support(b.truncate(j + 8))) s.insert(x);
    return s;
}

LazyPerm random_finitary(std::mt19937_64& rng, std::size_t max_support) {
    const auto s = 1 + rng() % max_support;
    std::vector<Point> im(s);
    std::iota(im.begin(), im.end(), 0);
    std::shuffle(im.begin(), im.end(), rng);
    return LazyPerm::finitary(Perm(im));
}

} // namespace

TEST_CASE("3-cycle chunk") {
    const auto gc = three_cycle_chunk();
    for (Nat x = 0; x < 300; ++x) {
        const auto& h = gc.carriers[1];
        REQUIRE(h(h(h(x))) == x);
        REQUIRE(gc.carriers[2](x) == h(h(x)));
    }
}

TEST_CASE("example inequality") {
    auto rep = example_check(99);
    REQUIRE(rep.m == 68);
    REQUIRE(rep.holds);
    // sigma_99(h) is h on 33 full blocks; sigma_99(h2) is h2 on [0, 68]
    REQUIRE(rep.sigma_h == three_cycle().truncate(99));
    REQUIRE(rep.fixed >= 69);
    REQUIRE(example_check(300).holds);
    REQUIRE_THROWS_AS(example_check(32), error);
    for (std::size_t n = 33; n <= 120; ++n) REQUIRE(example_check(n).holds);
}

TEST_CASE("delta") {
    const auto d = delta();
    REQUIRE(d(1) == 0);
    REQUIRE(d(4) == 6);
    REQUIRE(d(5) == 3);
    REQUIRE(d.backward(0) == 1);
    const auto d3 = d * d * d;
    for (Nat x = 0; x < 500; ++x) {
        REQUIRE(delta_power(1)(x) == d(x));
        REQUIRE(delta_power(-1)(x) == d.backward(x));
        REQUIRE(delta_power(3)(x) == d3(x));
        REQUIRE(delta_power(-3)(delta_power(3)(x)) == x);
    }
    REQUIRE(std::holds_alternative<BoundWitness>(audit(d, GrowthFn::affine(3), 10000)));
}

TEST_CASE("gamma pairs share exactly their index") {
    REQUIRE(to_cycle_string(gamma_pair(0).first.truncate(4)) == "(0 1)");
    REQUIRE(to_cycle_string(gamma_pair(0).second.truncate(4)) == "(0 2)");
    for (Nat j = 0; j < 80; ++j) {
        const auto [a, b] = gamma_pair(j);
        const auto sa = support(a.truncate(j + 8));
        const auto sb = support(b.truncate(j + 8));
        REQUIRE(sa.size() == 2);
        REQUIRE(sb.size() == 2);
        std::vector<Nat> common;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
        REQUIRE(common == std::vector<Nat>{j});
    }
}

TEST_CASE("transposition cube criterion") {
    for (Point n = 2; n <= 7; ++n)
        for (Point a = 0; a < n; ++a)
            for (Point b = a + 1; b < n; ++b)
                for (Point c = 0; c < n; ++c)
                    for (Point d = c + 1; d < n; ++d) {
                        const auto g = Perm::from_cycles(n, {{a, b}});
                        const auto h = Perm::from_cycles(n, {{c, d}});
                        const bool meet = a == c || a == d || b == c || b == d;
                        REQUIRE(cube_is_identity(g, h) == meet);
                    }
}

TEST_CASE("encoding examples") {
    REQUIRE(encode_check(LazyPerm::identity(), 5, 5, 1000));
    REQUIRE_FALSE(encode_check(LazyPerm::identity(), 5, 6, 1000));
    const auto swap = LazyPerm::finitary(parse_perm("(0 1)"));
    REQUIRE(encode_check(swap, 0, 1, 1000));
    REQUIRE_THROWS_AS(encode_check(LazyPerm::identity(), 40, 40, 20), error);
}

TEST_CASE("cube equations also hold when rho carries one triple onto another") {
    // gamma_0 = (0 1), gamma'_0 = (0 2); under (0 1) they become (0 1), (1 2):
    // every pair of supports still meets although rho(0) = 1
    const auto swap = LazyPerm::finitary(parse_perm("(0 1)"));
    REQUIRE(swap(0) != 0);
    REQUIRE(encode_check(swap, 0, 0, 100));
}

TEST_CASE("encoding detects image or matching triples") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto rho = random_finitary(rng, 20);
        for (Nat k = 0; k <= 24; ++k) {
            std::set<Nat> moved;
            for (auto x : triple(k)) moved.insert(rho(x));
            for (Nat n = 0; n <= 24; ++n) {
                const bool expect = rho(k) == n || moved == triple(n);
                REQUIRE(encode_check(rho, k, n, 40) == expect);
            }
        }
    }
}

TEST_CASE("stage construction") {
    auto res = stage_construction({}, 30);
    REQUIRE(res.report.fired == 0);
    REQUIRE(res.report.involution_prefix == 0);
    REQUIRE(res.report.noninjective_blocks.size() == 10);
    REQUIRE(res.map[0] == 2);
    REQUIRE(res.map[1] == 2);
    REQUIRE(res.map[2] == 1);

    res = stage_construction({{true, false, true, true, false, true}}, 30);
    REQUIRE(res.report.fired == 4);
    REQUIRE(res.report.involution_prefix == 12);
    REQUIRE(res.report.noninjective_blocks.front() == 4);
    REQUIRE(res.report.noninjective_blocks.size() == 6);

    res = stage_construction({std::vector<bool>(15, true)}, 30);
    REQUIRE(res.report.involution_prefix == 30);
    REQUIRE(res.report.noninjective_blocks.empty());
    REQUIRE_THROWS_AS(stage_construction({}, 31), error);
}
