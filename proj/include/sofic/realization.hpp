#pragma once

// Block-direct-sum realization of a sofic chunk by permutations of N.
//
// Given approximations sigma_i : E -> S_{m_i} (r = i, i = 2..N) and
// multiplicities f(i), the permutation sigma(e) acts on consecutive blocks:
// block i holds f(i) copies of sigma_i(e), and everything past the last block
// is fixed. Its restriction to the first S_n = sum_{1<i<=n} f(i) m_i points
// is sigma_{+,n}(e) = (+)_{1<i<=n} sigma_i(e)^{f(i)}.

#include "sofic/chunk.hpp"
#include "sofic/chunk_io.hpp"
#include "sofic/growth.hpp"
#include "sofic/lazyperm.hpp"
#include "sofic/perm.hpp"
#include "sofic/profile.hpp"

#include <fstream>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace sofic {

/// Checks made when block n is closed.
struct BlockReport {
    std::size_t n = 0;
    /// S_n, the degree of sigma_{+,n}.
    std::uint64_t end = 0;
    /// Quality of sigma_{+,n} from the per-block displacement formula.
    MorphismQuality quality;
    /// defect <= 1/(n-1) and expansiveness >= 1 - 1/(n-1).
    bool meets_thresholds = false;
    /// (sum_{1<i<n} m_i) / (S_n - 1 + sum_{1<i<n} m_i)
    Rational displayed_ratio{0};
    /// 1 - (S_n - 1) / g(S_n - 1) = (sum_{1<i<=n} m_i) / (S_n - 1 + sum_{1<i<=n} m_i)
    Rational g_gap{0};
    /// Both ratios are < 1/n.
    bool slow_enough = false;
};

class Realization {
public:
    /// Builds the realization from fixed multiplicities; `sigma[k]` is the
    /// approximation for block k + 2. Throws if shapes are inconsistent.
    Realization(Chunk chunk, std::vector<std::vector<Perm>> sigma, std::vector<std::uint64_t> f)
        : data_(std::make_shared<Data>()) {
        auto& d = *data_;
        d.chunk = std::move(chunk);
        d.sigma = std::move(sigma);
        d.f = std::move(f);
        if (d.sigma.empty()) throw error("realization needs at least one block");
        if (d.sigma.size() != d.f.size()) throw error("one multiplicity per block is required");
        std::uint64_t end = 0, msum = 0;
        for (std::size_t k = 0; k < d.sigma.size(); ++k) {
            if (d.sigma[k].size() != d.chunk.size()) throw error("block approximation does not cover the chunk");
            const auto m = d.sigma[k][0].degree();
            if (m == 0) throw error("block degree must be positive");
            for (const auto& p : d.sigma[k])
                if (p.degree() != m) throw error("block approximation mixes degrees");
            if (!d.sigma[k][d.chunk.unit()].is_identity()) throw error("unit must map to the identity");
            if (d.f[k] < 1) throw error("multiplicities must be positive");
            d.m.push_back(m);
            end += d.f[k] * m;
            msum += m;
            d.ends.push_back(end);
            d.msums.push_back(msum);
        }
        d.g = GrowthFn::block_step(d.ends, d.msums);
        for (std::size_t n = 2; n <= depth(); ++n) d.reports.push_back(report_for(n));
    }

    const Chunk& chunk() const { return data_->chunk; }
    /// Last block index N; blocks are numbered 2..N.
    std::size_t depth() const { return data_->sigma.size() + 1; }
    std::uint64_t m(std::size_t n) const { return data_->m.at(n - 2); }
    std::uint64_t f(std::size_t n) const { return data_->f.at(n - 2); }
    /// S_n = sum_{1<i<=n} f(i) m_i
    std::uint64_t end(std::size_t n) const { return n < 2 ? 0 : data_->ends.at(n - 2); }
    const std::vector<Perm>& sigma(std::size_t n) const { return data_->sigma.at(n - 2); }
    /// g(j) = j + m_2 + ... + m_n on [S_{n-1}, S_n).
    const GrowthFn& g() const { return data_->g; }
    const std::vector<BlockReport>& reports() const { return data_->reports; }

    /// sigma_{+,n}(e) as a permutation of degree S_n.
    Perm block_sum_at(std::size_t n, Chunk::Index e) const {
        std::vector<std::pair<Perm, std::size_t>> parts;
        for (std::size_t i = 2; i <= n; ++i) parts.emplace_back(sigma(i).at(e), f(i));
        return block_sum(parts);
    }

    std::vector<Perm> block_sums_at(std::size_t n) const {
        std::vector<Perm> out;
        for (Chunk::Index e = 0; e < chunk().size(); ++e) out.push_back(block_sum_at(n, e));
        return out;
    }

    /// sum_{1<i<=n} f(i) (m_i - |Fix(sigma_i(a) sigma_i(b)^-1)|) / S_n
    Rational displacement(std::size_t n, Chunk::Index a, Chunk::Index b) const {
        std::int64_t num = 0;
        for (std::size_t i = 2; i <= n; ++i) {
            const auto fix = (sigma(i)[a] * sigma(i)[b].inverse()).fixed_point_count();
            num += static_cast<std::int64_t>(f(i) * (m(i) - fix));
        }
        return Rational(num, static_cast<std::int64_t>(end(n)));
    }

    /// The permutation sigma(e) of N: block sums up to depth, identity after.
    LazyPerm carrier(Chunk::Index e) const {
        auto d = data_;
        const auto stop = d->ends.back();
        std::vector<Perm> fwd, bwd;
        for (const auto& blk : d->sigma) {
            fwd.push_back(blk.at(e));
            bwd.push_back(blk.at(e).inverse());
        }
        auto make = [d, stop](std::shared_ptr<const std::vector<Perm>> maps) {
            return [d, stop, maps](Nat x) -> Nat {
                if (x >= stop) return x;
                const auto it = std::upper_bound(d->ends.begin(), d->ends.end(), x);
                const auto k = static_cast<std::size_t>(it - d->ends.begin());
                const Nat base = k == 0 ? 0 : d->ends[k - 1];
                const Nat local = (x - base) % d->m[k];
                return x - local + (*maps)[k](static_cast<Point>(local));
            };
        };
        return LazyPerm::gadget("blocksum(" + chunk().name(e) + ", depth " + std::to_string(depth()) + ")",
                                make(std::make_shared<const std::vector<Perm>>(std::move(fwd))),
                                make(std::make_shared<const std::vector<Perm>>(std::move(bwd))),
                                LazyPerm::Kind::block_sum, stop);
    }

    std::vector<LazyPerm> carriers() const {
        std::vector<LazyPerm> out;
        for (Chunk::Index e = 0; e < chunk().size(); ++e) out.push_back(carrier(e));
        return out;
    }

private:
    struct Data {
        Chunk chunk;
        std::vector<std::vector<Perm>> sigma;
        std::vector<std::uint64_t> f, m, ends, msums;
        GrowthFn g = GrowthFn::affine(1);
        std::vector<BlockReport> reports;
    };

    BlockReport report_for(std::size_t n) const {
        BlockReport rep;
        rep.n = n;
        rep.end = end(n);
        const auto& c = chunk();
        const auto s = static_cast<std::int64_t>(end(n));
        for (Chunk::Index a = 0; a < c.size(); ++a)
            for (Chunk::Index b = 0; b < c.size(); ++b)
                if (auto ab = c.product(a, b)) {
                    std::int64_t bad = 0;
                    for (std::size_t i = 2; i <= n; ++i) {
                        const auto agree = agreement_count(sigma(i)[*ab], sigma(i)[a] * sigma(i)[b]);
                        bad += static_cast<std::int64_t>(f(i) * (m(i) - agree));
                    }
                    rep.quality.defect = std::max(rep.quality.defect, Rational(bad, s));
                }
        for (Chunk::Index a = 0; a < c.size(); ++a)
            for (Chunk::Index b = a + 1; b < c.size(); ++b) {
                const auto d = displacement(n, a, b);
                if (!rep.quality.expansiveness || d < *rep.quality.expansiveness) rep.quality.expansiveness = d;
            }
        rep.meets_thresholds = meets_thresholds(rep.quality, Rational(static_cast<std::int64_t>(n - 1)));
        const auto before = n > 2 ? static_cast<std::int64_t>(data_->msums[n - 3]) : 0;
        const auto through = static_cast<std::int64_t>(data_->msums[n - 2]);
        const auto inv_n = Rational(1, static_cast<std::int64_t>(n));
        const auto den1 = s - 1 + before;
        rep.displayed_ratio = den1 > 0 ? Rational(before, den1) : Rational(1);
        rep.g_gap = Rational(through, s - 1 + through);
        rep.slow_enough = den1 > 0 && rep.displayed_ratio < inv_n && rep.g_gap < inv_n;
        return rep;
    }

    std::shared_ptr<Data> data_;
};

struct RealizeOptions {
    std::uint64_t f_cap = 1'000'000;
};

/// Chooses each f(n) as the least positive integer for which block n passes
/// both the quality thresholds and the slowness inequalities. `certs[k]` must
/// be a certificate for r = k + 2.
inline Realization realize(const Chunk& c, std::span<const ProfileCertificate> certs, const RealizeOptions& opt = {}) {
    if (certs.empty()) throw error("realize needs certificates for r = 2, ..., N");
    {
        auto rep = validate(c);
        if (!rep.ok()) throw error("invalid chunk: " + rep.violations.front().message);
    }
    std::vector<std::vector<Perm>> sigma;
    for (std::size_t k = 0; k < certs.size(); ++k) {
        if (certs[k].r != Rational(static_cast<std::int64_t>(k + 2)))
            throw error("certificate " + std::to_string(k) + " is for r = " + to_string(certs[k].r) + ", expected " +
                        std::to_string(k + 2));
        verify_certificate(c, certs[k]);
        sigma.push_back(certs[k].assignment);
    }

    // Per-block disagreement counts, so candidate f(n) are scored without
    // materializing block sums.
    const auto sz = c.size();
    struct BlockCounts {
        std::int64_t m;
        std::vector<std::int64_t> product_bad; // per defined product
        std::vector<std::int64_t> pair_diff;   // per unordered pair
    };
    std::vector<std::pair<Chunk::Index, Chunk::Index>> prods;
    std::vector<Chunk::Index> prod_to;
    for (Chunk::Index a = 0; a < sz; ++a)
        for (Chunk::Index b = 0; b < sz; ++b)
            if (auto ab = c.product(a, b)) {
                prods.emplace_back(a, b);
                prod_to.push_back(*ab);
            }
    std::vector<BlockCounts> counts;
    for (const auto& s : sigma) {
        BlockCounts bc;
        bc.m = static_cast<std::int64_t>(s[0].degree());
        for (std::size_t p = 0; p < prods.size(); ++p)
            bc.product_bad.push_back(bc.m - static_cast<std::int64_t>(agreement_count(
                                                s[prod_to[p]], s[prods[p].first] * s[prods[p].second])));
        for (Chunk::Index a = 0; a < sz; ++a)
            for (Chunk::Index b = a + 1; b < sz; ++b)
                bc.pair_diff.push_back(bc.m - static_cast<std::int64_t>(agreement_count(s[a], s[b])));
        counts.push_back(std::move(bc));
    }

    std::vector<std::uint64_t> f;
    std::vector<__int128> bad(prods.size(), 0), diff(sz * (sz - 1) / 2, 0);
    __int128 end = 0, msum_before = 0;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        const auto n = static_cast<__int128>(k + 2);
        const auto& bc = counts[k];
        const __int128 msum_through = msum_before + bc.m;
        std::optional<std::uint64_t> chosen;
        for (std::uint64_t cand = 1; cand <= opt.f_cap; ++cand) {
            const __int128 s = end + static_cast<__int128>(cand) * bc.m;
            bool ok = true;
            // defect <= 1/(n-1) and expansiveness >= 1 - 1/(n-1)
            for (std::size_t p = 0; ok && p < prods.size(); ++p)
                ok = (n - 1) * (bad[p] + static_cast<__int128>(cand) * bc.product_bad[p]) <= s;
            for (std::size_t p = 0; ok && p < diff.size(); ++p)
                ok = (n - 1) * (diff[p] + static_cast<__int128>(cand) * bc.pair_diff[p]) >= (n - 2) * s;
            // slowness: M/(s - 1 + M) < 1/n for M = msum_before and msum_through
            ok = ok && s - 1 + msum_before > 0 && n * msum_before < s - 1 + msum_before &&
                 n * msum_through < s - 1 + msum_through;
            if (ok) {
                chosen = cand;
                break;
            }
        }
        if (!chosen)
            throw error("no f(" + std::to_string(k + 2) + ") <= " + std::to_string(opt.f_cap) +
                        " satisfies the block quality and slowness inequalities");
        f.push_back(*chosen);
        end += static_cast<__int128>(*chosen) * bc.m;
        for (std::size_t p = 0; p < prods.size(); ++p) bad[p] += static_cast<__int128>(*chosen) * bc.product_bad[p];
        for (std::size_t p = 0; p < diff.size(); ++p) diff[p] += static_cast<__int128>(*chosen) * bc.pair_diff[p];
        msum_before = msum_through;
    }
    return Realization(c, std::move(sigma), std::move(f));
}

/// The chunk of S(omega) formed by the realized carriers: a*b = c whenever
/// sigma(a) sigma(b) = sigma(c) (checked on the constructed range; beyond it
/// all carriers are the identity).
inline Chunk realized_chunk(const Realization& R) {
    const auto sums = R.block_sums_at(R.depth());
    std::vector<std::size_t> idx(sums.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return induced_chunk<std::size_t>(
        std::span<const std::size_t>(idx), R.chunk().unit(), [&](std::size_t a, std::size_t b) -> std::size_t {
            const auto prod = sums[a] * sums[b];
            for (std::size_t k = 0; k < sums.size(); ++k)
                if (sums[k] == prod) return k;
            return sums.size();
        },
        [&](std::size_t i) { return R.chunk().name(i); });
}

/// The realized g-chunk, audited to one block-width past the last block.
inline GChunk realized_gchunk(const Realization& R) {
    const auto horizon = R.end(R.depth()) + R.m(R.depth());
    return make_gchunk(realized_chunk(R), R.carriers(), R.g(), horizon);
}

/// The identity-on-names map E' -> E is a bijective homomorphism.
inline bool realizes(const Realization& R, const GChunk& gc) {
    std::vector<Chunk::Index> id(R.chunk().size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    return is_bijective(id, R.chunk().size()) && is_homomorphism(gc.chunk, std::span<const Chunk::Index>(id), R.chunk());
}

// ---- text form --------------------------------------------------------------
//
//   # realization
//   chunk-begin
//   ...chunk statements...
//   chunk-end
//   depth 3
//   block 2 m=2 f=1 end=2
//   sigma 2 a [1 0]
//   g blockstep:2,2;...
//   report 2 defect=0/1 expansiveness=1/1 displayed=0/1 g_gap=1/2 thresholds=ok slowness=ok

inline std::string print_realization(const Realization& R) {
    std::ostringstream os;
    os << "# realization\nchunk-begin\n" << print_chunk(R.chunk()) << "chunk-end\n";
    os << "depth " << R.depth() << "\n";
    for (std::size_t n = 2; n <= R.depth(); ++n) {
        os << "block " << n << " m=" << R.m(n) << " f=" << R.f(n) << " end=" << R.end(n) << "\n";
        for (Chunk::Index e = 0; e < R.chunk().size(); ++e)
            os << "sigma " << n << " " << R.chunk().name(e) << " " << to_string(R.sigma(n)[e]) << "\n";
    }
    os << "g " << to_string(R.g()) << "\n";
    for (const auto& b : R.reports())
        os << "report " << b.n << " defect=" << to_string(b.quality.defect)
           << " expansiveness=" << (b.quality.expansiveness ? to_string(*b.quality.expansiveness) : "inf")
           << " displayed=" << to_string(b.displayed_ratio) << " g_gap=" << to_string(b.g_gap)
           << " thresholds=" << (b.meets_thresholds ? "ok" : "FAIL") << " slowness=" << (b.slow_enough ? "ok" : "FAIL")
           << "\n";
    return os.str();
}

/// Rebuilds a realization from its text form and recomputes every check;
/// throws if the stored g or reports differ from the recomputed ones.
inline Realization parse_realization(std::istream& in, const std::string& source = "<realization>") {
    std::string line;
    std::size_t lineno = 0;
    ChunkReader reader(source);
    bool in_chunk = false, chunk_done = false;
    std::optional<Chunk> chunk;
    std::size_t depth = 0;
    std::vector<std::uint64_t> f;
    std::vector<std::vector<std::optional<Perm>>> sig;
    std::string g_text;
    std::vector<std::string> report_lines;
    auto fail = [&](const std::string& what) { throw parse_error(source, lineno, what); };
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::strip_comment(line);
        const auto toks = detail::split_ws(body);
        if (toks.empty()) continue;
        if (toks[0] == "chunk-begin") {
            if (in_chunk || chunk_done) fail("unexpected chunk-begin");
            in_chunk = true;
            continue;
        }
        if (toks[0] == "chunk-end") {
            if (!in_chunk) fail("unexpected chunk-end");
            in_chunk = false;
            chunk_done = true;
            chunk = reader.finish();
            continue;
        }
        if (in_chunk) {
            if (!reader.feed(line, lineno)) fail("bad chunk statement");
            continue;
        }
        if (!chunk) fail("chunk must come first");
        try {
            if (toks[0] == "depth" && toks.size() == 2) {
                depth = std::stoul(toks[1]);
                if (depth < 2) fail("depth must be >= 2");
                f.assign(depth - 1, 0);
                sig.assign(depth - 1, std::vector<std::optional<Perm>>(chunk->size()));
            } else if (toks[0] == "block" && toks.size() == 5) {
                const auto n = std::stoul(toks[1]);
                if (n < 2 || n > depth) fail("block index out of range");
                if (toks[3].rfind("f=", 0) != 0) fail("expected f=");
                f[n - 2] = std::stoull(toks[3].substr(2));
            } else if (toks[0] == "sigma" && toks.size() >= 4) {
                const auto n = std::stoul(toks[1]);
                if (n < 2 || n > depth) fail("block index out of range");
                auto e = chunk->find(toks[2]);
                if (!e) fail("unknown element '" + toks[2] + "'");
                sig[n - 2][*e] = parse_perm(body.substr(body.find('[')));
            } else if (toks[0] == "g" && toks.size() == 2) {
                g_text = toks[1];
            } else if (toks[0] == "report") {
                report_lines.push_back(body);
            } else {
                fail("unrecognized line");
            }
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    if (!chunk || depth == 0) throw error(source + ": incomplete realization");
    std::vector<std::vector<Perm>> sigma;
    for (std::size_t k = 0; k < sig.size(); ++k) {
        std::vector<Perm> row;
        for (std::size_t e = 0; e < sig[k].size(); ++e) {
            if (!sig[k][e]) throw error(source + ": missing sigma for block " + std::to_string(k + 2));
            row.push_back(*sig[k][e]);
        }
        sigma.push_back(std::move(row));
    }
    Realization R(*chunk, std::move(sigma), std::move(f));
    if (!g_text.empty() && g_text != to_string(R.g())) throw error(source + ": stored g does not match the block layout");
    std::istringstream again(print_realization(R));
    std::vector<std::string> expect;
    while (std::getline(again, line))
        if (line.rfind("report", 0) == 0) expect.push_back(line);
    if (!report_lines.empty() && report_lines != expect) throw error(source + ": stored reports do not match recomputation");
    return R;
}

inline Realization load_realization(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    return parse_realization(in, path);
}

} // namespace sofic
