#include "oracles.hpp"
#include "sofic/perm.hpp"

#include <catch_amalgamated.hpp>

using namespace sofic;

namespace {

Perm from_raw(const oracle::Raw& r) { return Perm(std::vector<Point>(r.begin(), r.end())); }

} // namespace

TEST_CASE("composition applies the right factor first") {
    const auto p = parse_perm("[1 2 0]");
    const auto q = parse_perm("[1 0 2]");
    REQUIRE((p * q) == parse_perm("[2 1 0]"));
    REQUIRE((q * p) == parse_perm("[0 2 1]"));
    REQUIRE_THROWS_AS(p * Perm::identity(4), error);
}

TEST_CASE("constructor rejects non-bijections") {
    REQUIRE_THROWS_AS(Perm(std::vector<Point>{0, 0}), error);
    REQUIRE_THROWS_AS(Perm(std::vector<Point>{0, 2}), error);
}

TEST_CASE("inverse, powers and fixed points") {
    const auto c = Perm::from_cycles(5, {{0, 1, 2}, {3, 4}});
    REQUIRE((c * c.inverse()).is_identity());
    REQUIRE(power(c, 6).is_identity());
    REQUIRE(power(c, -1) == c.inverse());
    REQUIRE(power(c, 3) == Perm::from_cycles(5, {{3, 4}}));
    REQUIRE(c.fixed_point_count() == 0);
    REQUIRE(Perm::identity(7).fixed_point_count() == 7);
}

TEST_CASE("text forms round trip") {
    const auto p = parse_perm("(0 3)(1 2 4)", 6);
    REQUIRE(to_string(p) == "[3 2 4 0 1 5]");
    REQUIRE(parse_perm(to_string(p)) == p);
    REQUIRE(parse_perm(to_cycle_string(p), 6) == p);
    REQUIRE(parse_perm("()", 3).is_identity());
    REQUIRE(parse_perm("(0 1)").degree() == 2);
    REQUIRE_THROWS_AS(parse_perm("[0 0]"), error);
    REQUIRE_THROWS_AS(parse_perm("(0 1)(1 2)"), error);
}

TEST_CASE("cycle types") {
    const auto p = Perm::from_cycles(6, {{0, 1}, {2, 3, 4}});
    REQUIRE(cycle_type(p).parts == std::vector<std::size_t>{3, 2, 1});
    const auto rep = cycle_type_representative(cycle_type(p), 6);
    REQUIRE(cycle_type(rep) == cycle_type(p));
    REQUIRE(rep == Perm::from_cycles(6, {{0, 1, 2}, {3, 4}}));
    REQUIRE_THROWS_AS(cycle_type_representative(CycleType({2, 2}), 5), error);
    // p(n) for n = 0..8
    const std::size_t counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
    for (std::size_t n = 0; n <= 8; ++n) REQUIRE(partitions(n).size() == counts[n]);
}

TEST_CASE("block sums") {
    const auto a = parse_perm("[1 0]");
    const auto b = parse_perm("[1 2 0]");
    const auto s = block_sum({{a, 2}, {b, 1}});
    REQUIRE(to_string(s) == "[1 0 3 2 5 6 4]");
    REQUIRE(block_sum({{a, 1}}) == a);
}

TEST_CASE("Hamming distance matches a pointwise count") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 9; ++n)
        for (int t = 0; t < 200; ++t) {
            const auto p = oracle::random_perm(n, rng);
            const auto q = oracle::random_perm(n, rng);
            REQUIRE(hamming_distance(from_raw(p), from_raw(q)) == Rational(oracle::differ(p, q), n));
        }
    REQUIRE(hamming_distance(Perm::identity(0), Perm::identity(0)) == Rational(0));
}

TEST_CASE("Hamming metric axioms and bi-invariance") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 8; ++n)
        for (int t = 0; t < 500; ++t) {
            const auto x = from_raw(oracle::random_perm(n, rng));
            const auto y = from_raw(oracle::random_perm(n, rng));
            const auto z = from_raw(oracle::random_perm(n, rng));
            REQUIRE((hamming_distance(x, y) == Rational(0)) == (x == y));
            REQUIRE(hamming_distance(x, y) == hamming_distance(y, x));
            REQUIRE(hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z));
            REQUIRE(hamming_distance(z * x, z * y) == hamming_distance(x, y));
            REQUIRE(hamming_distance(x * z, y * z) == hamming_distance(x, y));
        }
}
