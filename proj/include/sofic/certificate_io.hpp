#pragma once

// Text form of profile certificates. Rationals are written as P/Q.
//
//   # sofic profile certificate
//   r 2/1
//   n 2
//   defect 0/1
//   expansiveness 1/1
//   infeasible 1 classes=1 nodes=1
//   1 -> [0 1]
//   a -> [1 0]

#include "sofic/chunk.hpp"
#include "sofic/chunk_io.hpp"
#include "sofic/profile.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace sofic {

inline std::string print_certificate(const Chunk& c, const ProfileCertificate& cert) {
    std::ostringstream os;
    os << "# sofic profile certificate\n";
    os << "r " << to_string(cert.r) << "\n";
    os << "n " << cert.n << "\n";
    os << "defect " << to_string(cert.quality.defect) << "\n";
    os << "expansiveness " << (cert.quality.expansiveness ? to_string(*cert.quality.expansiveness) : "inf") << "\n";
    if (cert.vacuous) os << "vacuous\n";
    for (const auto& d : cert.infeasible)
        os << "infeasible " << d.n << " classes=" << d.classes << " nodes=" << d.nodes << "\n";
    for (Chunk::Index i = 0; i < c.size(); ++i) os << c.name(i) << " -> " << to_string(cert.assignment.at(i)) << "\n";
    return os.str();
}

/// Parses a certificate and re-measures it against `c` before returning.
/// Throws sofic::error on malformed input or on any mismatch.
inline ProfileCertificate parse_certificate(std::istream& in, const Chunk& c, const std::string& source = "<certificate>") {
    ProfileCertificate cert;
    std::vector<std::optional<Perm>> images(c.size());
    bool have_r = false, have_n = false, have_defect = false, have_exp = false;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) { throw parse_error(source, lineno, what); };
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::strip_comment(line);
        const auto toks = detail::split_ws(body);
        if (toks.empty()) continue;
        try {
            if (toks.size() >= 3 && toks[1] == "->") {
                auto idx = c.find(toks[0]);
                if (!idx) fail("unknown element '" + toks[0] + "'");
                if (images[*idx]) fail("element '" + toks[0] + "' assigned twice");
                images[*idx] = parse_perm(body.substr(body.find("->") + 2));
            } else if (toks[0] == "r" && toks.size() == 2) {
                cert.r = parse_rational(toks[1]);
                have_r = true;
            } else if (toks[0] == "n" && toks.size() == 2) {
                cert.n = std::stoul(toks[1]);
                have_n = true;
            } else if (toks[0] == "defect" && toks.size() == 2) {
                cert.quality.defect = parse_rational(toks[1]);
                have_defect = true;
            } else if (toks[0] == "expansiveness" && toks.size() == 2) {
                if (toks[1] != "inf") cert.quality.expansiveness = parse_rational(toks[1]);
                have_exp = true;
            } else if (toks[0] == "vacuous" && toks.size() == 1) {
                cert.vacuous = true;
            } else if (toks[0] == "infeasible" && toks.size() == 4 && toks[2].rfind("classes=", 0) == 0 &&
                       toks[3].rfind("nodes=", 0) == 0) {
                cert.infeasible.push_back(
                    {std::stoul(toks[1]), std::stoul(toks[2].substr(8)), std::stoull(toks[3].substr(6))});
            } else {
                fail("unrecognized line '" + line + "'");
            }
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    if (!have_r || !have_n || !have_defect || !have_exp) throw error(source + ": certificate header incomplete");
    for (Chunk::Index i = 0; i < c.size(); ++i) {
        if (!images[i]) throw error(source + ": no image for element '" + c.name(i) + "'");
        cert.assignment.push_back(*images[i]);
    }
    if (cert.vacuous != (cert.r == Rational(1))) throw error(source + ": vacuous flag does not match r");
    verify_certificate(c, cert);
    return cert;
}

inline ProfileCertificate parse_certificate(const std::string& text, const Chunk& c) {
    std::istringstream in(text);
    return parse_certificate(in, c);
}

inline void emit_certificate(const std::string& path, const Chunk& c, const ProfileCertificate& cert) {
    std::ofstream out(path);
    if (!out) throw error("cannot write '" + path + "'");
    out << print_certificate(c, cert);
}

inline ProfileCertificate load_certificate(const std::string& path, const Chunk& c) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    return parse_certificate(in, c, path);
}

} // namespace sofic
