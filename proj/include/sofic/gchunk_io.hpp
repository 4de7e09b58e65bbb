#pragma once

// g-chunk files: chunk statements followed by carrier and bound lines.
//
//   unit 1
//   elem h
//   elem h2
//   ...products...
//   carrier h = gadget:threecycle
//   carrier h2 = gadget:threecycle2
//   bound = affine:31
//   horizon 1000
//
// Carrier sources: gadget:threecycle | gadget:threecycle2 | gadget:delta |
// gadget:pairswap |
// gadget:identity | table:[i0 i1 ...] (identity tail) | blocksum:PATH (the
// carrier of the same-named element in a stored realization). The unit's
// carrier defaults to the identity.

#include "sofic/chunk_io.hpp"
#include "sofic/gadgets.hpp"
#include "sofic/growth.hpp"
#include "sofic/lazyperm.hpp"
#include "sofic/realization.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>

namespace sofic {

inline LazyPerm parse_carrier(const std::string& spec, const std::string& element, const std::filesystem::path& base) {
    if (spec == "gadget:threecycle") return three_cycle();
    if (spec == "gadget:threecycle2") return three_cycle_squared();
    if (spec == "gadget:delta") return delta();
    if (spec == "gadget:pairswap") return pair_swap();
    if (spec == "gadget:identity") return LazyPerm::identity();
    if (spec.rfind("table:", 0) == 0) return LazyPerm::finitary(parse_perm(spec.substr(6)));
    if (spec.rfind("blocksum:", 0) == 0) {
        std::filesystem::path p = spec.substr(9);
        if (p.is_relative()) p = base / p;
        const auto R = load_realization(p.string());
        const auto e = R.chunk().find(element);
        if (!e) throw error("realization '" + p.string() + "' has no element '" + element + "'");
        return R.carrier(*e);
    }
    throw error("unknown carrier source '" + spec + "'");
}

/// Relative blocksum paths resolve against `base`.
inline GChunk parse_gchunk(std::istream& in, const std::string& source = "<gchunk>",
                           const std::filesystem::path& base = ".") {
    ChunkReader reader(source);
    std::map<std::string, std::pair<std::string, std::size_t>> carrier_specs;
    std::optional<GrowthFn> bound;
    Nat horizon = 1000;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (reader.feed(line, lineno)) continue;
        const auto body = detail::strip_comment(line);
        const auto toks = detail::split_ws(body);
        try {
            if (toks.size() == 4 && toks[0] == "carrier" && toks[2] == "=") {
                if (!carrier_specs.emplace(toks[1], std::pair{toks[3], lineno}).second)
                    throw parse_error(source, lineno, "carrier for '" + toks[1] + "' given twice");
            } else if (toks.size() >= 4 && toks[0] == "carrier" && toks[2] == "=") {
                // table:[...] with spaces inside the brackets
                const auto spec = body.substr(body.find('=') + 1);
                const auto first = spec.find_first_not_of(" \t");
                if (!carrier_specs.emplace(toks[1], std::pair{spec.substr(first), lineno}).second)
                    throw parse_error(source, lineno, "carrier for '" + toks[1] + "' given twice");
            } else if (toks.size() == 3 && toks[0] == "bound" && toks[1] == "=") {
                bound = parse_growth(toks[2]);
            } else if (toks.size() == 2 && toks[0] == "horizon") {
                horizon = std::stoull(toks[1]);
                if (horizon < 1) throw parse_error(source, lineno, "horizon must be >= 1");
            } else {
                throw parse_error(source, lineno, "unrecognized line '" + line + "'");
            }
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw parse_error(source, lineno, e.what());
        }
    }
    const auto chunk = reader.finish();
    if (!bound) throw error(source + ": missing 'bound = GROWTHSPEC'");
    std::vector<LazyPerm> carriers;
    for (Chunk::Index i = 0; i < chunk.size(); ++i) {
        auto it = carrier_specs.find(chunk.name(i));
        if (it == carrier_specs.end()) {
            if (i == chunk.unit()) {
                carriers.push_back(LazyPerm::identity());
                continue;
            }
            throw error(source + ": no carrier for '" + chunk.name(i) + "'");
        }
        try {
            carriers.push_back(parse_carrier(it->second.first, chunk.name(i), base));
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw parse_error(source, it->second.second, e.what());
        }
    }
    for (const auto& [name, spec] : carrier_specs)
        if (!chunk.find(name)) throw parse_error(source, spec.second, "carrier for unknown element '" + name + "'");
    return make_gchunk(chunk, std::move(carriers), *bound, horizon);
}

inline GChunk load_gchunk(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    return parse_gchunk(in, path, std::filesystem::path(path).parent_path());
}

} // namespace sofic
