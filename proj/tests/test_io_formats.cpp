#include <btu/btu.hpp>
#include <btu/io.hpp>
#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using btu::Json;
using btu::Partition;
using btu::Permutation;
using btu::PermutationRep;

TEST_CASE("partition json round-trips") {
    Partition beta({4, 2});
    Json j = btu::json_of(beta);
    CHECK(j.dump() == "[4,2]");
    CHECK(btu::partition_from_json(j) == beta);
    CHECK_THROWS_AS(btu::partition_from_json(Json::parse("[1,2]")), btu::DomainError);
}

TEST_CASE("matrix json round-trips and validates") {
    btu::Btu g = btu::psi(Partition({3, 3}));
    Json j = btu::json_of(g);
    CHECK(j.at("m") == 6);
    CHECK(j.at("r") == 2);
    REQUIRE(j.at("rows").size() == 6);
    CHECK(btu::btu_from_json(j) == g);
    // r is optional on input but checked when present
    Json no_r = j;
    no_r.erase("r");
    CHECK(btu::btu_from_json(no_r) == g);
    Json bad_r = j;
    bad_r["r"] = 3;
    CHECK_THROWS_AS(btu::btu_from_json(bad_r), btu::DomainError);
    Json bad_entry = j;
    bad_entry["rows"][0][0] = 2;
    CHECK_THROWS_AS(btu::btu_from_json(bad_entry), btu::DomainError);
    Json short_row = j;
    short_row["rows"][0].erase(0);
    CHECK_THROWS_AS(btu::btu_from_json(short_row), btu::DomainError);

    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + static_cast<int>(oracle::rng_below(rng, 8));
        int r = 1 + static_cast<int>(oracle::rng_below(rng, m));
        btu::Btu u = oracle::random_btu(m, r, rng);
        CHECK(btu::btu_from_json(btu::json_of(u)) == u);
    }
}

TEST_CASE("permutation and representation json round-trip") {
    Permutation p({2, 3, 1});
    CHECK(btu::json_of(p).dump() == "[2,3,1]");
    CHECK(btu::permutation_from_json(btu::json_of(p)) == p);
    CHECK_THROWS_AS(btu::permutation_from_json(Json::parse("[1,1]")), btu::DomainError);

    PermutationRep rep({Permutation::identity(3), p});
    Json j = btu::json_of(rep);
    CHECK(j.at("m") == 3);
    CHECK(j.at("r") == 2);
    CHECK(btu::rep_from_json(j) == rep);
    CHECK_THROWS_AS(btu::rep_from_json(Json::parse(R"({"perms":[[1,2],[1,2]]})")),
                    btu::DomainError);
}

TEST_CASE("family spec json round-trips") {
    btu::PhiSpec spec(6, {Partition({3, 3}), Partition({2, 2, 2})});
    Json j = btu::json_of(spec);
    CHECK(j.at("m") == 6);
    REQUIRE(j.at("betas").size() == 2);
    auto back = btu::phispec_from_json(j);
    CHECK(back.m == spec.m);
    CHECK(back.betas == spec.betas);
}

TEST_CASE("canonical key serializes as hex") {
    auto key = btu::canonical_key(btu::psi(Partition({2})));
    Json j = btu::json_of(key);
    CHECK(j.at("m") == 2);
    CHECK(j.at("hex") == "f0");
}

TEST_CASE("exact numbers serialize as strings") {
    Json q = btu::json_of(btu::Rational(-2, 6));
    CHECK(q.at("num") == "-1");
    CHECK(q.at("den") == "3");
    CHECK(btu::bigint_str(btu::factorial(25)) == "15511210043330985984000000");
}

TEST_CASE("polynomial json carries exact terms in display order") {
    Json j = btu::json_of(btu::z_dihedral(5));
    CHECK(j.at("degree") == 5);
    REQUIRE(j.at("terms").size() == 3);
    CHECK(j["terms"][0]["type"] == Json::parse("[5,0,0,0,0]"));
    CHECK(j["terms"][0]["num"] == "1");
    CHECK(j["terms"][0]["den"] == "10");
    CHECK(j["terms"][1]["type"] == Json::parse("[1,2,0,0,0]"));
    CHECK(j["terms"][2]["type"] == Json::parse("[0,0,0,0,1]"));
    CHECK(j["terms"][2]["num"] == "2");
    CHECK(j["terms"][2]["den"] == "5");
}

TEST_CASE("pairwise profile serializes with 1-based indices") {
    PermutationRep rep({Permutation::identity(3), Permutation({2, 3, 1}),
                        Permutation({3, 1, 2})});
    Json j = btu::json_of(btu::partition_profile(rep));
    REQUIRE(j.size() == 3);
    CHECK(j[0]["i"] == 1);
    CHECK(j[0]["j"] == 2);
    CHECK(j[0]["beta"] == Json::parse("[3]"));
    CHECK(j[2]["i"] == 2);
    CHECK(j[2]["j"] == 3);
}
