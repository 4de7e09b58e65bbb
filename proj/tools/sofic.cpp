// sofic: command-line front end.
//
// Exit codes: 0 success or certificate, 2 exhausted or inconclusive,
// 1 usage or data error.

#include "sofic.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

using namespace sofic;

namespace {

constexpr int ok = 0;
constexpr int data_error = 1;
constexpr int undecided = 2;

struct Globals {
    std::size_t workers = 1;
    std::uint64_t seed = 1;
};

void print_quality(std::ostream& os, const MorphismQuality& q) {
    os << "defect = " << to_string(q.defect) << "\n";
    os << "expansiveness = " << (q.expansiveness ? to_string(*q.expansiveness) : "inf") << "\n";
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoull(item));
    return out;
}

int run_chunk_validate(const std::string& path) {
    const auto c = load_chunk(path);
    const auto rep = validate(c);
    if (rep.ok()) {
        std::cout << "valid\n";
        return ok;
    }
    for (const auto& v : rep.violations) std::cout << to_string(v.kind) << ": " << v.message << "\n";
    std::cout << "invalid (" << rep.violations.size() << " violations)\n";
    return data_error;
}

int print_profile(const Chunk& c, const ProfileResult& res, const std::string& emit) {
    if (const auto* cert = std::get_if<ProfileCertificate>(&res)) {
        std::cout << "r = " << to_string(cert->r) << "\n";
        std::cout << "prof = " << cert->n << "\n";
        if (cert->vacuous) std::cout << "vacuous (r = 1)\n";
        print_quality(std::cout, cert->quality);
        for (const auto& d : cert->infeasible)
            std::cout << "infeasible n = " << d.n << " (classes " << d.classes << ", nodes " << d.nodes << ")\n";
        for (Chunk::Index i = 0; i < c.size(); ++i)
            std::cout << c.name(i) << " -> " << to_string(cert->assignment[i]) << "\n";
        if (!emit.empty()) {
            emit_certificate(emit, c, *cert);
            load_certificate(emit, c);
            std::cout << "certificate written to " << emit << "\n";
        }
        return ok;
    }
    const auto& ex = std::get<Exhausted>(res);
    std::cout << "r = " << to_string(ex.r) << "\n";
    std::cout << "prof > " << ex.n_max << " (exhausted)\n";
    for (const auto& d : ex.infeasible)
        std::cout << "infeasible n = " << d.n << " (classes " << d.classes << ", nodes " << d.nodes << ")\n";
    return undecided;
}

int run_profile(const Globals& g, const std::string& chunk_path, const std::string& r_text, std::size_t n_max,
                bool all_r, const std::string& emit) {
    const auto c = load_chunk(chunk_path);
    const auto r = parse_rational(r_text);
    SearchOptions opt;
    opt.workers = g.workers;
    if (!all_r) return print_profile(c, sofic_profile(c, r, n_max, opt), emit);
    if (!emit.empty()) throw error("--emit-witness cannot be combined with --all-r");
    int worst = ok;
    for (std::int64_t k = 1; Rational(k) <= r; ++k) {
        const int code = print_profile(c, sofic_profile(c, Rational(k), n_max, opt), "");
        worst = std::max(worst, code);
        std::cout << "\n";
    }
    return worst;
}

int run_cert_check(const std::string& chunk_path, const std::string& cert_path) {
    const auto c = load_chunk(chunk_path);
    const auto cert = load_certificate(cert_path, c);
    std::cout << "certificate ok: prof(" << to_string(cert.r) << ") = " << cert.n << "\n";
    return ok;
}

int run_growth_prof(const std::string& spec, const std::string& r_text, std::uint64_t n_max) {
    const auto g = parse_growth(spec);
    const auto res = growth_profile(g, parse_rational(r_text), n_max);
    if (res.value) {
        std::cout << *res.value << "\n";
        return ok;
    }
    std::cout << "exhausted (n_max = " << n_max << ")\n";
    if (res.provably_infinite) std::cout << "infinite: " << res.note << "\n";
    else std::cout << res.note << "\n";
    return undecided;
}

int run_growth_cmp(const std::string& f_spec, const std::string& g_spec, const std::string& rel, std::uint64_t horizon,
                   std::uint64_t k_max) {
    const auto f = parse_growth(f_spec);
    const auto g = parse_growth(g_spec);
    Outcome outcome;
    if (rel == "prec") {
        const auto v = lt_eventually(f, g, horizon);
        outcome = v.outcome;
        std::cout << to_string(v.outcome) << "\n";
        if (v.n0) std::cout << "n0 = " << *v.n0 << "\n";
        if (v.witness) std::cout << "witness = " << *v.witness << "\n";
        std::cout << (v.exact ? "exact: " : "sampled: ") << v.note << "\n";
    } else {
        const auto v = rel == "ll" ? ll(f, g, k_max, horizon) : sim(f, g, k_max, horizon);
        outcome = v.outcome;
        std::cout << to_string(v.outcome) << "\n";
        if (v.k) std::cout << "k = " << *v.k << "\n";
        std::cout << "k checked = " << v.k_checked << "\n";
        std::cout << (v.exact ? "exact: " : "bounded: ") << v.note << "\n";
    }
    return outcome == Outcome::inconclusive ? undecided : ok;
}

int run_growth_slow(const std::string& spec, std::uint64_t horizon) {
    const auto v = is_slow(parse_growth(spec), horizon);
    std::cout << to_string(v.verdict) << "\n" << v.evidence << "\n";
    if (v.sampled_gap) std::cout << "sampled gap = " << to_string(*v.sampled_gap) << "\n";
    for (const auto& b : v.blocks)
        std::cout << "block " << b.index << " end " << b.end << " gap " << to_string(b.gap)
                  << (b.below_inverse_index ? " < 1/" : " >= 1/") << b.index << "\n";
    return v.verdict == SlownessVerdict::Kind::inconclusive ? undecided : ok;
}

int run_supp(const std::string& path, std::size_t n, const std::string& r_text) {
    const auto gc = load_gchunk(path);
    const auto rep = supp_quality(gc, n, parse_rational(r_text));
    std::cout << "n = " << rep.n << "\n";
    std::cout << "m* = " << (rep.m_star ? std::to_string(*rep.m_star) : "none") << "\n";
    print_quality(std::cout, rep.quality);
    std::cout << "defect bound 2(n - m*)/n = " << to_string(rep.defect_bound)
              << (rep.defect_bound_holds ? " (holds)" : " (VIOLATED)") << "\n";
    std::cout << "separation hypothesis: " << (rep.separation_hypothesis ? "yes" : "no") << "\n";
    std::cout << "(n - m*)/n <= 1/(2r): " << (rep.prefix_large ? "yes" : "no") << "\n";
    std::cout << "expansiveness >= 1 - 1/(2r): " << (rep.expansive_conclusion ? "yes" : "no") << "\n";
    const auto sigma = supp_morphism(gc, n);
    if (n <= 64)
        for (Chunk::Index i = 0; i < gc.chunk.size(); ++i)
            std::cout << gc.chunk.name(i) << " -> " << to_string(sigma[i]) << "\n";
    return rep.defect_bound_holds ? ok : data_error;
}

int run_realize(const Globals& g, const std::string& chunk_path, std::size_t depth, std::uint64_t f_cap,
                std::size_t n_max, const std::string& emit) {
    if (depth < 2) throw error("--depth must be at least 2");
    const auto c = load_chunk(chunk_path);
    SearchOptions opt;
    opt.workers = g.workers;
    std::vector<ProfileCertificate> certs;
    for (std::size_t r = 2; r <= depth; ++r) {
        auto res = sofic_profile(c, Rational(static_cast<std::int64_t>(r)), n_max, opt);
        if (!std::holds_alternative<ProfileCertificate>(res)) {
            std::cout << "prof(" << r << ") > " << n_max << "; no certificate to realize\n";
            return undecided;
        }
        certs.push_back(std::get<ProfileCertificate>(std::move(res)));
    }
    RealizeOptions ro;
    ro.f_cap = f_cap;
    const auto R = realize(c, certs, ro);
    const auto text = print_realization(R);
    std::cout << text;
    if (!emit.empty()) {
        std::ofstream out(emit);
        if (!out) throw error("cannot write '" + emit + "'");
        out << text;
        out.close();
        load_realization(emit);
        std::cout << "realization written to " << emit << "\n";
    }
    bool all = true;
    for (const auto& b : R.reports()) all = all && b.meets_thresholds && b.slow_enough;
    return all ? ok : data_error;
}

int run_gadget_example(std::size_t n) {
    const auto rep = example_check(n);
    std::cout << "n = " << rep.n << "\nm = " << rep.m << "\n|Fix| = " << rep.fixed << "\n";
    std::cout << "|m - |Fix|| <= 5: " << (rep.holds ? "holds" : "FAILS") << "\n";
    return rep.holds ? ok : data_error;
}

int run_gadget_encode(const std::string& rho_text, Nat k, Nat n, std::size_t horizon) {
    const auto rho = LazyPerm::finitary(parse_perm(rho_text));
    const bool e = encode_check(rho, k, n, horizon);
    std::cout << (e ? "true" : "false") << "\n";
    std::cout << "rho(" << k << ") = " << rho(k) << "\n";
    if (e != (rho(k) == n)) std::cout << "note: the cube equations disagree with rho(k) = n here\n";
    return ok;
}

int run_gadget_stages(const std::string& trace_text, std::size_t horizon) {
    StageTrace t;
    for (auto v : parse_list(trace_text)) {
        if (v > 1) throw error("trace entries must be 0 or 1");
        t.flags.push_back(v == 1);
    }
    const auto res = stage_construction(t, horizon);
    std::cout << "fired = " << res.report.fired << "\n";
    std::cout << "order-2 permutation on [0, " << res.report.involution_prefix << ")\n";
    std::cout << "non-injective blocks = " << res.report.noninjective_blocks.size() << "\n";
    if (!res.report.noninjective_blocks.empty())
        std::cout << "first non-injective block = " << res.report.noninjective_blocks.front() << "\n";
    return ok;
}

int run_check_metric(const Globals& g, std::size_t trials) {
    std::mt19937_64 rng(g.seed);
    std::size_t violations = 0;
    for (std::size_t n = 2; n <= 8; ++n)
        for (std::size_t t = 0; t < trials; ++t) {
            auto draw = [&] {
                std::vector<Point> im(n);
                std::iota(im.begin(), im.end(), 0);
                std::shuffle(im.begin(), im.end(), rng);
                return Perm(std::move(im));
            };
            const auto x = draw(), y = draw(), z = draw();
            const bool fine = (hamming_distance(x, y) == Rational(0)) == (x == y) &&
                              hamming_distance(x, y) == hamming_distance(y, x) &&
                              hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z) &&
                              hamming_distance(z * x, z * y) == hamming_distance(x, y) &&
                              hamming_distance(x * z, y * z) == hamming_distance(x, y);
            violations += !fine;
        }
    std::cout << "seed = " << g.seed << "\nviolations = " << violations << "\n";
    return violations == 0 ? ok : data_error;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sofic profiles, growth functions and permutation gadgets"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--workers", g.workers, "search threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomized checks");

    int code = ok;
    auto action = [&code](auto fn) {
        return [&code, fn] { code = fn(); };
    };

    auto* chunk = app.add_subcommand("chunk", "chunk files")->require_subcommand(1);
    std::string chunk_file;
    auto* validate_cmd = chunk->add_subcommand("validate", "check unit laws, cancellation, associativity");
    validate_cmd->add_option("file", chunk_file)->required();
    validate_cmd->callback(action([&] { return run_chunk_validate(chunk_file); }));

    std::string r_text, emit;
    std::size_t n_max = 8;
    bool all_r = false;
    auto* profile = app.add_subcommand("profile", "exact sofic profile");
    profile->add_option("--chunk", chunk_file)->required();
    profile->add_option("--r", r_text)->required();
    profile->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
    profile->add_flag("--all-r", all_r, "every integer r from 1 up to --r");
    profile->add_option("--emit-witness", emit, "write the certificate here");
    profile->callback(action([&] { return run_profile(g, chunk_file, r_text, n_max, all_r, emit); }));

    std::string cert_file;
    auto* cert = app.add_subcommand("cert", "certificates")->require_subcommand(1);
    auto* cert_check = cert->add_subcommand("check", "re-measure a stored certificate");
    cert_check->add_option("--chunk", chunk_file)->required();
    cert_check->add_option("--cert", cert_file)->required();
    cert_check->callback(action([&] { return run_cert_check(chunk_file, cert_file); }));

    std::string f_spec, g_spec, rel = "prec";
    std::uint64_t horizon = 10000, k_max = 10, growth_n_max = 100000;
    auto* growth = app.add_subcommand("growth", "growth functions")->require_subcommand(1);
    auto* gprof = growth->add_subcommand("prof", "prof_g(r)");
    gprof->add_option("--g", g_spec)->required();
    gprof->add_option("--r", r_text)->required();
    gprof->add_option("--n-max", growth_n_max)->check(CLI::PositiveNumber);
    gprof->callback(action([&] { return run_growth_prof(g_spec, r_text, growth_n_max); }));
    auto* gcmp = growth->add_subcommand("cmp", "compare two growth functions");
    gcmp->add_option("--f", f_spec)->required();
    gcmp->add_option("--g", g_spec)->required();
    gcmp->add_option("--rel", rel)->check(CLI::IsMember({"prec", "ll", "sim"}));
    gcmp->add_option("--horizon", horizon)->check(CLI::PositiveNumber);
    gcmp->add_option("--k-max", k_max)->check(CLI::PositiveNumber);
    gcmp->callback(action([&] { return run_growth_cmp(f_spec, g_spec, rel, horizon, k_max); }));
    auto* gslow = growth->add_subcommand("slow", "slowness verdict");
    gslow->add_option("--g", g_spec)->required();
    gslow->add_option("--horizon", horizon)->check(CLI::PositiveNumber);
    gslow->callback(action([&] { return run_growth_slow(g_spec, horizon); }));

    std::string gchunk_file;
    std::size_t n = 0;
    auto* supp = app.add_subcommand("supp", "supp-morphism quality of a g-chunk");
    supp->add_option("--gchunk", gchunk_file)->required();
    supp->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    supp->add_option("--r", r_text)->required();
    supp->callback(action([&] { return run_supp(gchunk_file, n, r_text); }));

    std::size_t depth = 0;
    std::uint64_t f_cap = 1'000'000;
    auto* realize_cmd = app.add_subcommand("realize", "block-sum realization");
    realize_cmd->add_option("--chunk", chunk_file)->required();
    realize_cmd->add_option("--depth", depth)->required();
    realize_cmd->add_option("--f-cap", f_cap)->check(CLI::PositiveNumber);
    realize_cmd->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
    realize_cmd->add_option("--emit", emit);
    realize_cmd->callback(action([&] { return run_realize(g, chunk_file, depth, f_cap, n_max, emit); }));

    auto* gadget = app.add_subcommand("gadget", "worked constructions")->require_subcommand(1);
    auto* example = gadget->add_subcommand("example", "3-cycle fixed-point inequality");
    example->add_option("--n", n)->required();
    example->callback(action([&] { return run_gadget_example(n); }));
    std::string rho_text;
    Nat k = 0, target = 0;
    std::size_t enc_horizon = 1000;
    auto* encode = gadget->add_subcommand("encode", "cube equations for rho(k) = n");
    encode->add_option("--rho", rho_text)->required();
    encode->add_option("--k", k)->required();
    encode->add_option("--n", target)->required();
    encode->add_option("--horizon", enc_horizon)->check(CLI::PositiveNumber);
    encode->callback(action([&] { return run_gadget_encode(rho_text, k, target, enc_horizon); }));
    std::string trace_text;
    std::size_t stage_horizon = 300;
    auto* stages = gadget->add_subcommand("stages", "replay a stage trace");
    stages->add_option("--trace", trace_text);
    stages->add_option("--horizon", stage_horizon);
    stages->callback(action([&] { return run_gadget_stages(trace_text, stage_horizon); }));

    std::size_t trials = 10000;
    auto* check = app.add_subcommand("check", "randomized property checks")->require_subcommand(1);
    auto* metric = check->add_subcommand("metric", "Hamming metric axioms");
    metric->add_option("--trials", trials)->check(CLI::PositiveNumber);
    metric->callback(action([&] { return run_check_metric(g, trials); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return data_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return data_error;
    }
    return code;
}
