#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "btu/canonical.hpp"
#include "btu/errors.hpp"
#include "btu/matrix.hpp"
#include "btu/partition.hpp"
#include "btu/permutation.hpp"

namespace btu {

/// Describes a family of labeled (m,r) units: chains p1=I_m, p2, ..., pr of
/// pairwise-compatible permutations where the partition induced by each
/// adjacent pair (p_i, p_{i+1}) is betas[i-1].  Only the r-1 adjacent pairs
/// are constrained; the remaining pairwise partitions are free.
struct PhiSpec {
    int m;
    std::vector<Partition> betas;

    PhiSpec(int m_in, std::vector<Partition> betas_in) : m(m_in), betas(std::move(betas_in)) {
        if (betas.empty()) throw DomainError("phi spec: needs at least one partition");
        for (const auto& b : betas)
            if (b.m() != m) throw DomainError("phi spec: every partition must sum to m");
        if (r() > m) throw DomainError("phi spec: r = betas+1 exceeds m");
    }

    int r() const { return static_cast<int>(betas.size()) + 1; }

    /// "m=6; betas=(3,3)|(2,2,2)"
    std::string to_string() const {
        std::ostringstream os;
        os << "m=" << m << "; betas=";
        for (std::size_t i = 0; i < betas.size(); ++i) os << (i ? "|" : "") << betas[i].to_string();
        return os.str();
    }

    static PhiSpec parse(std::string_view text) {
        std::string s(text);
        auto mpos = s.find("m=");
        auto bpos = s.find("betas=");
        if (mpos == std::string::npos || bpos == std::string::npos)
            throw DomainError("phi spec: expected \"m=M; betas=(..)|(..)\"");
        int m = 0;
        try {
            m = std::stoi(s.substr(mpos + 2));
        } catch (const std::exception&) {
            throw DomainError("phi spec: bad m");
        }
        std::string blist = s.substr(bpos + 6);
        std::vector<Partition> betas;
        std::size_t start = 0;
        while (start < blist.size()) {
            auto bar = blist.find('|', start);
            std::string tok = blist.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
            if (tok.find('(') == std::string::npos)
                throw DomainError("phi spec: expected a parenthesized partition, got \"" + tok + "\"");
            betas.push_back(Partition::parse(tok));
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
        return PhiSpec(m, std::move(betas));
    }
};

namespace detail {

/// Candidate successors for the next chain slot: compatible with every
/// permutation so far and inducing `beta` against the last one; lex order.
inline std::vector<Permutation> phi_candidates(const std::vector<Permutation>& chain,
                                               const Partition& beta) {
    std::vector<Permutation> out;
    for_each_compatible(chain[0].m(), chain, [&](const Permutation& q) {
        if (beta_of(chain.back(), q) == beta) out.push_back(q);
        return true;
    });
    return out;
}

} // namespace detail

/// One member of the family, or nullopt when the family is empty
/// (the satisfiability question has a genuine "no").  The seed picks
/// deterministically among valid branches: same seed, same member.
inline std::optional<PermutationRep> build_phi_member(const PhiSpec& spec, std::uint64_t seed) {
    if (spec.m > 9) throw ResourceError("build_phi_member: m > 9 not supported");
    std::mt19937_64 rng(seed);
    std::vector<Permutation> chain{Permutation::identity(spec.m)};
    std::function<bool(int)> rec = [&](int level) -> bool {
        if (level == spec.r()) return true;
        auto cands = detail::phi_candidates(chain, spec.betas[static_cast<std::size_t>(level - 1)]);
        // seeded Fisher-Yates; deterministic given (spec, seed)
        for (std::size_t i = cands.size(); i > 1; --i)
            std::swap(cands[i - 1], cands[static_cast<std::size_t>(rng() % i)]);
        for (auto& q : cands) {
            chain.push_back(std::move(q));
            if (rec(level + 1)) return true;
            chain.pop_back();
        }
        return false;
    };
    if (!rec(1)) return std::nullopt;
    return PermutationRep(std::move(chain));
}

/// Exhaustive family listing in lexicographic order of (p2,...,pr);
/// `truncated` reports that a limit cut the listing short.
struct PhiEnumeration {
    std::vector<PermutationRep> members;
    bool truncated = false;
};

inline PhiEnumeration enumerate_phi(const PhiSpec& spec,
                                    std::optional<std::size_t> limit = std::nullopt) {
    if (spec.m > 6) throw ResourceError("enumerate_phi: exhaustive listing is m <= 6 only");
    PhiEnumeration out;
    std::vector<Permutation> chain{Permutation::identity(spec.m)};
    std::function<bool(int)> rec = [&](int level) -> bool {
        if (level == spec.r()) {
            if (limit && out.members.size() >= *limit) {
                out.truncated = true;
                return false;
            }
            out.members.emplace_back(chain);
            return true;
        }
        bool keep_going = true;
        for_each_compatible(spec.m, chain, [&](const Permutation& q) {
            if (beta_of(chain.back(), q) != spec.betas[static_cast<std::size_t>(level - 1)]) return true;
            chain.push_back(q);
            keep_going = rec(level + 1);
            chain.pop_back();
            return keep_going;
        });
        return keep_going;
    };
    rec(1);
    return out;
}

/// Isomorphism classes hit by the family: distinct canonical keys over
/// the full enumeration.
inline std::size_t count_nonisomorphic_in_phi(const PhiSpec& spec) {
    auto fam = enumerate_phi(spec);
    std::set<CanonicalKey> keys;
    for (const auto& rep : fam.members) keys.insert(canonical_key(to_btu(rep)));
    return keys.size();
}

/// All r(r-1)/2 pairwise partitions of a rep, keyed by 1-based (i,j), i<j.
using PartitionProfile = std::map<std::pair<int, int>, Partition>;

inline PartitionProfile partition_profile(const PermutationRep& rep) {
    PartitionProfile out;
    for (int i = 0; i < rep.r(); ++i)
        for (int j = i + 1; j < rep.r(); ++j)
            out.emplace(std::make_pair(i + 1, j + 1),
                        beta_of(rep.perms()[static_cast<std::size_t>(i)],
                                rep.perms()[static_cast<std::size_t>(j)]));
    return out;
}

/// True iff two positions share two labels across the rep — exactly the
/// condition for a 4-cycle in to_btu(rep) (two VNs with two common CNs).
inline bool has_4cycle(const PermutationRep& rep) {
    int m = rep.m();
    std::vector<std::uint64_t> labels_at(static_cast<std::size_t>(m), 0);
    for (const auto& p : rep.perms())
        for (int j = 0; j < m; ++j)
            labels_at[static_cast<std::size_t>(j)] |= std::uint64_t{1} << (p.images()[static_cast<std::size_t>(j)] - 1);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (std::popcount(labels_at[static_cast<std::size_t>(a)] & labels_at[static_cast<std::size_t>(b)]) >= 2)
                return true;
    return false;
}

} // namespace btu
