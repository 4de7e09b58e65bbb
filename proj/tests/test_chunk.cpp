#include "sofic/chunk.hpp"
#include "sofic/chunk_io.hpp"
#include "sofic/perm.hpp"

#include <catch_amalgamated.hpp>

using namespace sofic;

namespace {

Chunk z2() { return load_chunk(SOFIC_DATA_DIR "/z2.chunk"); }

} // namespace

TEST_CASE("corpus chunks validate") {
    for (const char* name : {"trivial", "z2", "z3", "z4_prefix", "z_ball", "free2"}) {
        const auto c = load_chunk(std::string(SOFIC_DATA_DIR "/") + name + ".chunk");
        INFO(name);
        REQUIRE(validate(c).ok());
    }
}

TEST_CASE("cancellation failure is reported") {
    const auto rep = validate(load_chunk(SOFIC_DATA_DIR "/invalid.chunk"));
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.count(Violation::Kind::cancellation) > 0);
}

TEST_CASE("missing unit laws are violations") {
    Chunk c({"1", "a"}, "1");
    c.set_product("a", "a", "1");
    const auto rep = validate(c);
    REQUIRE(rep.count(Violation::Kind::unit_law) == 3);
    c.add_unit_laws();
    REQUIRE(validate(c).ok());
}

TEST_CASE("associativity failure is reported") {
    const auto c = parse_chunk(R"(unit 1
elem a
elem b
elem c
1 * 1 = 1
1 * a = a
a * 1 = a
1 * b = b
b * 1 = b
1 * c = c
c * 1 = c
a * a = b
b * a = c
a * b = 1
)");
    const auto rep = validate(c);
    REQUIRE(rep.count(Violation::Kind::associativity) > 0);
    REQUIRE(rep.count(Violation::Kind::cancellation) == 0);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_chunk("unit 1\nelem a\na * b = 1\n");
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        REQUIRE(e.line() == 3);
    }
    REQUIRE_THROWS_AS(parse_chunk("unit 1\nelem a\nelem a\n"), parse_error);
    REQUIRE_THROWS_AS(parse_chunk("elem a\n"), parse_error);
    REQUIRE_THROWS_AS(parse_chunk("unit 1\nbogus line\n"), parse_error);
    REQUIRE_THROWS_AS(parse_chunk("unit 1\n1 * 1 = 1\n1 * 1 = 1\n"), parse_error);
}

TEST_CASE("print and parse round trip") {
    const auto c = z2();
    REQUIRE(parse_chunk(print_chunk(c)) == c);
    REQUIRE(c.defined_count() == 4);
    REQUIRE(c.product(c.index_of("a"), c.index_of("a")) == c.unit());
}

TEST_CASE("induced chunk inside S_3") {
    const std::vector<Perm> elems = {Perm::identity(3), parse_perm("[1 2 0]"), parse_perm("[1 0 2]")};
    const auto c = induced_chunk<Perm>(
        elems, Perm::identity(3), [](const Perm& a, const Perm& b) { return a * b; },
        [](const Perm& p) { return to_cycle_string(p); });
    REQUIRE(validate(c).ok());
    // (0 1 2)^2 and (0 1 2)(0 1) lie outside the subset
    REQUIRE(c.defined_count() == 6);
    REQUIRE(c.product(2, 2) == c.unit());
    REQUIRE_FALSE(c.product(1, 1));
    REQUIRE_THROWS_AS(induced_chunk<Perm>(
                          std::span<const Perm>(elems).subspan(1), Perm::identity(3),
                          [](const Perm& a, const Perm& b) { return a * b; }, [](const Perm& p) { return to_string(p); }),
                      error);
}

TEST_CASE("homomorphisms between chunks") {
    const auto z3 = load_chunk(SOFIC_DATA_DIR "/z3.chunk");
    const auto triv = load_chunk(SOFIC_DATA_DIR "/trivial.chunk");
    const std::vector<Chunk::Index> to_unit = {0, 0, 0};
    REQUIRE(is_homomorphism(z3, std::span<const Chunk::Index>(to_unit), triv));
    REQUIRE_FALSE(is_bijective(to_unit, triv.size()));
    const std::vector<Chunk::Index> swap = {0, 2, 1};
    REQUIRE(is_homomorphism(z3, std::span<const Chunk::Index>(swap), z3));
    REQUIRE(is_bijective(swap, z3.size()));
    const auto z2c = z2();
    const std::vector<Chunk::Index> bad = {1, 0};
    REQUIRE_FALSE(is_homomorphism(z2c, std::span<const Chunk::Index>(bad), z2c));
}
