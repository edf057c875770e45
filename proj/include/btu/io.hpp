#pragma once

// JSON mirrors of the library's value types, shared by the CLI and tests.
// BigInt-valued fields serialize as decimal strings so nothing silently
// saturates a double on the way through.

#include <string>
#include <vector>

#include <json.hpp>

#include "btu/canonical.hpp"
#include "btu/cycle_index.hpp"
#include "btu/graph_ops.hpp"
#include "btu/matrix.hpp"
#include "btu/numeric.hpp"
#include "btu/partition.hpp"
#include "btu/permutation.hpp"
#include "btu/phi.hpp"

namespace btu {

using Json = nlohmann::json;

inline std::string bigint_str(const BigInt& n) { return n.str(); }

inline Json json_of(const Partition& beta) { return Json(beta.parts()); }

inline Partition partition_from_json(const Json& j) {
    return Partition(j.get<std::vector<int>>());
}

inline Json json_of(const Btu& g) {
    Json rows = Json::array();
    for (int i = 0; i < g.m(); ++i) {
        Json row = Json::array();
        for (int jcol = 0; jcol < g.m(); ++jcol) row.push_back(g.bit(i, jcol) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    return Json{{"m", g.m()}, {"r", g.r()}, {"rows", std::move(rows)}};
}

inline Btu btu_from_json(const Json& j) {
    int m = j.at("m").get<int>();
    if (m < 1 || m > 64) throw DomainError("btu json: m must be in 1..64");
    auto rows_in = j.at("rows");
    if (static_cast<int>(rows_in.size()) != m) throw DomainError("btu json: wrong row count");
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(rows_in[static_cast<std::size_t>(i)].size()) != m)
            throw DomainError("btu json: wrong row length");
        for (int jcol = 0; jcol < m; ++jcol) {
            int v = rows_in[static_cast<std::size_t>(i)][static_cast<std::size_t>(jcol)].get<int>();
            if (v != 0 && v != 1) throw DomainError("btu json: entries must be 0/1");
            if (v) rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << jcol;
        }
    }
    Btu g = Btu::from_rows(m, std::move(rows));
    if (j.contains("r") && j.at("r").get<int>() != g.r())
        throw DomainError("btu json: declared r does not match matrix");
    return g;
}

inline Json json_of(const Permutation& p) { return Json(p.images()); }

inline Permutation permutation_from_json(const Json& j) {
    return Permutation(j.get<std::vector<int>>());
}

inline Json json_of(const PermutationRep& rep) {
    Json perms = Json::array();
    for (const auto& p : rep.perms()) perms.push_back(json_of(p));
    return Json{{"m", rep.m()}, {"r", rep.r()}, {"perms", std::move(perms)}};
}

inline PermutationRep rep_from_json(const Json& j) {
    std::vector<Permutation> perms;
    for (const auto& p : j.at("perms")) perms.push_back(permutation_from_json(p));
    return PermutationRep(std::move(perms));
}

inline Json json_of(const CanonicalKey& key) {
    return Json{{"m", key.m}, {"hex", key.hex()}};
}

inline Json json_of(const PhiSpec& spec) {
    Json betas = Json::array();
    for (const auto& b : spec.betas) betas.push_back(json_of(b));
    return Json{{"m", spec.m}, {"betas", std::move(betas)}};
}

inline PhiSpec phispec_from_json(const Json& j) {
    std::vector<Partition> betas;
    for (const auto& b : j.at("betas")) betas.push_back(partition_from_json(b));
    return PhiSpec(j.at("m").get<int>(), std::move(betas));
}

inline Json json_of(const Rational& q) {
    return Json{{"num", bigint_str(numerator(q))}, {"den", bigint_str(denominator(q))}};
}

inline Json json_of(const CycleIndexPoly& z) {
    Json terms = Json::array();
    // descending exponent vectors, same order as to_string()
    const auto& map = z.terms();
    for (auto it = map.rbegin(); it != map.rend(); ++it)
        terms.push_back(Json{{"type", it->first.j},
                             {"num", bigint_str(numerator(it->second))},
                             {"den", bigint_str(denominator(it->second))}});
    return Json{{"degree", z.degree()}, {"terms", std::move(terms)}};
}

inline Json json_of(const PartitionProfile& profile) {
    Json out = Json::array();
    for (const auto& [ij, beta] : profile)
        out.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"beta", json_of(beta)}});
    return out;
}

} // namespace btu
