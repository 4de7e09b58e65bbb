#include "oracles.hpp"
#include "sofic/certificate_io.hpp"
#include "sofic/chunk_io.hpp"
#include "sofic/profile.hpp"

#include <catch_amalgamated.hpp>

using namespace sofic;

namespace {

Chunk corpus(const std::string& name) { return load_chunk(std::string(SOFIC_DATA_DIR "/") + name + ".chunk"); }

std::optional<std::size_t> value(const ProfileResult& r) {
    if (auto* c = std::get_if<ProfileCertificate>(&r)) return c->n;
    return std::nullopt;
}

} // namespace

TEST_CASE("measure on hand-built maps") {
    const auto c = corpus("z2");
    const std::vector<Perm> good = {Perm::identity(2), parse_perm("[1 0]")};
    const auto q = measure(c, good);
    REQUIRE(q.defect == Rational(0));
    REQUIRE(q.expansiveness == Rational(1));
    // a -> 3-cycle: a*a = 1 is violated on all three points
    const std::vector<Perm> bad = {Perm::identity(3), parse_perm("[1 2 0]")};
    REQUIRE(measure(c, bad).defect == Rational(1));
    const std::vector<Perm> mixed = {Perm::identity(2), parse_perm("[1 2 0]")};
    REQUIRE_THROWS_AS(measure(c, mixed), error);
    REQUIRE(!measure(corpus("trivial"), std::vector<Perm>{Perm::identity(4)}).expansiveness);
}

TEST_CASE("small profiles") {
    const auto z2 = std::get<ProfileCertificate>(sofic_profile(corpus("z2"), Rational(2), 8));
    REQUIRE(z2.n == 2);
    REQUIRE(to_string(z2.assignment[1]) == "[1 0]");
    REQUIRE(z2.infeasible.size() == 1);
    const auto z3 = std::get<ProfileCertificate>(sofic_profile(corpus("z3"), Rational(2), 8));
    REQUIRE(z3.n == 3);
    REQUIRE(z3.quality.defect == Rational(0));
    verify_certificate(corpus("z3"), z3);
    REQUIRE(value(sofic_profile(corpus("trivial"), Rational(5), 3)) == 1u);
}

TEST_CASE("r = 1 is vacuous") {
    const auto cert = std::get<ProfileCertificate>(sofic_profile(corpus("z3"), Rational(1), 4));
    REQUIRE(cert.n == 1);
    REQUIRE(cert.vacuous);
    REQUIRE_THROWS_AS(sofic_profile(corpus("z2"), Rational(1, 2), 4), error);
}

TEST_CASE("exhaustion lists every degree") {
    // Z/3Z needs 3 points at r = 2
    const auto res = sofic_profile(corpus("z3"), Rational(2), 2);
    const auto& ex = std::get<Exhausted>(res);
    REQUIRE(ex.infeasible.size() == 2);
    REQUIRE(ex.infeasible[1].n == 2);
}

TEST_CASE("invalid chunks are refused") {
    REQUIRE_THROWS_AS(sofic_profile(corpus("invalid"), Rational(2), 3), error);
    SearchOptions opt;
    opt.skip_validation = true;
    REQUIRE_NOTHROW(sofic_profile(corpus("invalid"), Rational(2), 3, opt));
}

TEST_CASE("pruned search agrees with enumeration") {
    for (const char* name : {"trivial", "z2", "z3", "z4_prefix", "z_ball", "free2"}) {
        const auto c = corpus(name);
        for (std::int64_t rp : {2, 3}) {
            INFO(name << " r=" << rp);
            const auto expect = oracle::profile(c, rp, 1, 4);
            const auto got = value(sofic_profile(c, Rational(rp), 4));
            REQUIRE(got.has_value() == expect.has_value());
            if (got) REQUIRE(*got == static_cast<std::size_t>(*expect));
        }
    }
}

TEST_CASE("non-integer r") {
    const auto c = corpus("z_ball");
    for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{3, 2}, {5, 2}, {7, 3}}) {
        const auto expect = oracle::profile(c, p, q, 4);
        const auto got = value(sofic_profile(c, Rational(p, q), 4));
        REQUIRE(got.has_value() == expect.has_value());
        if (got) REQUIRE(*got == static_cast<std::size_t>(*expect));
    }
}

TEST_CASE("worker count does not change the certificate") {
    for (const char* name : {"z3", "z4_prefix", "free2"}) {
        const auto c = corpus(name);
        SearchOptions par;
        par.workers = 4;
        const auto a = sofic_profile(c, Rational(3), 6);
        const auto b = sofic_profile(c, Rational(3), 6, par);
        REQUIRE(value(a) == value(b));
        if (value(a)) {
            const auto& ca = std::get<ProfileCertificate>(a);
            const auto& cb = std::get<ProfileCertificate>(b);
            REQUIRE(ca.assignment == cb.assignment);
            REQUIRE(ca.infeasible == cb.infeasible);
        }
    }
}

TEST_CASE("certificate text round trip and tampering") {
    const auto c = corpus("z2");
    const auto cert = std::get<ProfileCertificate>(sofic_profile(c, Rational(2), 8));
    const auto text = print_certificate(c, cert);
    REQUIRE(parse_certificate(text, c) == cert);
    REQUIRE(print_certificate(c, parse_certificate(text, c)) == text);

    auto tampered = text;
    tampered.replace(tampered.find("a -> [1 0]"), 10, "a -> [0 1]");
    REQUIRE_THROWS_AS(parse_certificate(tampered, c), error);
    auto not_bij = text;
    not_bij.replace(not_bij.find("a -> [1 0]"), 10, "a -> [1 1]");
    REQUIRE_THROWS_AS(parse_certificate(not_bij, c), error);
    auto lying = text;
    lying.replace(lying.find("defect 0/1"), 10, "defect 1/2");
    try {
        parse_certificate(lying, c);
        FAIL("tampered defect accepted");
    } catch (const error& e) {
        REQUIRE(std::string(e.what()).find("defect") != std::string::npos);
    }
}

TEST_CASE("3-cycle witness claimed as a Z/2Z certificate") {
    const auto c = corpus("z2");
    ProfileCertificate cert;
    cert.r = Rational(2);
    cert.n = 3;
    cert.assignment = {Perm::identity(3), parse_perm("[1 2 0]")};
    cert.quality.defect = Rational(0);
    cert.quality.expansiveness = Rational(1);
    cert.infeasible = {{1, 1, 1}, {2, 1, 1}};
    try {
        verify_certificate(c, cert);
        FAIL("accepted");
    } catch (const error& e) {
        REQUIRE(std::string(e.what()).find("measured 1/1") != std::string::npos);
    }
}

TEST_CASE("word problem from an r = 3 certificate") {
    const auto c = corpus("z3");
    const auto cert = std::get<ProfileCertificate>(sofic_profile(c, Rational(3), 8));
    const auto h = c.index_of("h"), h2 = c.index_of("h2"), one = c.unit();
    REQUIRE(decide_product(c, h, h, h2, cert) == ProductVerdict::equal);
    REQUIRE(decide_product(c, h, h, one, cert) == ProductVerdict::distinct);
    REQUIRE(decide_product(c, h, h2, one, cert) == ProductVerdict::equal);
    const auto weak = std::get<ProfileCertificate>(sofic_profile(c, Rational(2), 8));
    REQUIRE_THROWS_AS(decide_product(c, h, h, h2, weak), error);
}
