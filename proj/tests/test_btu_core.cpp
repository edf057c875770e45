#include <btu/btu.hpp>
#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"

using btu::Btu;
using btu::Partition;

namespace {

// Reference forms kept verbatim from hand-worked 6x6 examples.  The first
// two are different labelings of a single 12-cycle; the third splits into
// two 6-cycles, so it is isomorphic to neither.
const char* kTwelveCycleA =
    "6 2\n"
    "0 0 0 0 1 1\n"
    "1 0 0 0 0 1\n"
    "1 1 0 0 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 0 1 1 0\n"
    "0 1 1 0 0 0\n";

const char* kTwelveCycleB =
    "6 2\n"
    "1 0 0 0 0 1\n"
    "1 1 0 0 0 0\n"
    "0 1 1 0 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 0 1 1 0\n"
    "0 0 0 0 1 1\n";

const char* kTwoSixCycles =
    "6 2\n"
    "1 0 1 0 0 0\n"
    "1 1 0 0 0 0\n"
    "0 1 1 0 0 0\n"
    "0 0 0 1 0 1\n"
    "0 0 0 1 1 0\n"
    "0 0 0 0 1 1\n";

const char* kEightFourCycles =
    "6 2\n"
    "1 0 0 1 0 0\n"
    "1 1 0 0 0 0\n"
    "0 1 1 0 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 0 0 1 1\n"
    "0 0 0 0 1 1\n";

const char* kThreeFourCycles =
    "6 2\n"
    "1 1 0 0 0 0\n"
    "1 1 0 0 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 1 1 0 0\n"
    "0 0 0 0 1 1\n"
    "0 0 0 0 1 1\n";

Btu all_ones(int m) {
    return Btu::from_rows(m, std::vector<std::uint64_t>(m, Btu::mask(m)));
}

Btu identity(int m) {
    std::vector<std::uint64_t> rows(m);
    for (int i = 0; i < m; ++i) rows[i] = 1ull << i;
    return Btu::from_rows(m, rows);
}

// Assemble a unit from r image tables directly (bypasses the library's
// permutation types on purpose).
Btu btu_of_images(int m, const std::vector<std::vector<int>>& perms) {
    std::vector<std::uint64_t> rows(m, 0);
    for (auto& images : perms)
        for (int j = 0; j < m; ++j) rows[images[j] - 1] |= 1ull << j;
    return Btu::from_rows(m, rows);
}

void check_cycle_valid(const Btu& g, const btu::Cycle& c) {
    REQUIRE(c.size() >= 4);
    REQUIRE(c.size() % 2 == 0);
    // alternating cn,vn,...; consecutive pairs (and the wrap) are edges
    for (std::size_t k = 0; k < c.size(); k += 2) {
        int cn = c[k];
        int vn_next = c[k + 1];
        int vn_prev = c[(k + c.size() - 1) % c.size()];
        REQUIRE(g.bit(cn - 1, vn_next - 1));
        REQUIRE(g.bit(cn - 1, vn_prev - 1));
    }
    // simple: no vertex repeats on either side
    std::set<int> cns, vns;
    for (std::size_t k = 0; k < c.size(); k += 2) {
        cns.insert(c[k]);
        vns.insert(c[k + 1]);
    }
    REQUIRE(cns.size() == c.size() / 2);
    REQUIRE(vns.size() == c.size() / 2);
    // starts at its smallest check node
    REQUIRE(c[0] == *cns.begin());
}

}  // namespace

TEST_CASE("matrix validation rejects irregular input") {
    CHECK_THROWS_AS(Btu::from_rows(2, {0b01, 0b01}), btu::DomainError);
    CHECK_THROWS_AS(Btu::from_rows(2, {0b11, 0b01}), btu::DomainError);
    CHECK_THROWS_AS(Btu::from_rows(2, {0b01}), btu::DomainError);
    CHECK_THROWS_AS(Btu::from_rows(2, {0b101, 0b011}), btu::DomainError);
    CHECK_THROWS_AS(Btu::from_rows(0, {}), btu::DomainError);
    CHECK_THROWS_AS(Btu::from_rows(2, {0, 0}), btu::DomainError);
    CHECK_NOTHROW(Btu::from_rows(1, {1}));
}

TEST_CASE("matrix accessors agree with each other") {
    Btu g = Btu::from_text(kTwelveCycleA);
    CHECK(g.m() == 6);
    CHECK(g.r() == 2);
    CHECK(g.bit(0, 4));
    CHECK_FALSE(g.bit(0, 0));
    for (int j = 0; j < 6; ++j) {
        std::uint64_t col = 0;
        for (int i = 0; i < 6; ++i)
            if (g.bit(i, j)) col |= 1ull << i;
        CHECK(col == g.column(j));
    }
}

TEST_CASE("matrix text form round-trips") {
    for (const char* t : {kTwelveCycleA, kTwelveCycleB, kTwoSixCycles,
                          kEightFourCycles, kThreeFourCycles}) {
        Btu g = Btu::from_text(t);
        CHECK(g.to_text() == t);
        CHECK(Btu::from_text(g.to_text()) == g);
    }
    CHECK_THROWS_AS(Btu::from_text(""), btu::DomainError);
    CHECK_THROWS_AS(Btu::from_text("2 1\n1 0\n0"), btu::DomainError);
    CHECK_THROWS_AS(Btu::from_text("2 2\n1 0\n0 1"), btu::DomainError);  // header r wrong
    CHECK_THROWS_AS(Btu::from_text("2 1\n1 2\n0 1"), btu::DomainError);
}

TEST_CASE("partition units have the constructed shape") {
    CHECK(btu::psi(Partition({6})).to_text() ==
          "6 2\n"
          "1 1 0 0 0 0\n"
          "0 1 1 0 0 0\n"
          "0 0 1 1 0 0\n"
          "0 0 0 1 1 0\n"
          "0 0 0 0 1 1\n"
          "1 0 0 0 0 1\n");
    CHECK(btu::psi(Partition({2})) == all_ones(2));
    CHECK(btu::psi(Partition({2, 2, 2})) == Btu::from_text(kThreeFourCycles));

    for (int m = 2; m <= 9; ++m)
        for (const auto& beta : btu::enumerate_p2(m)) {
            Btu g = btu::psi(beta);
            INFO(beta.to_string());
            CHECK(g.r() == 2);
            for (int i = 0; i < m; ++i) CHECK(g.bit(i, i));
        }
}

TEST_CASE("partition units match their printed counterparts up to labels") {
    CHECK(btu::is_isomorphic(btu::psi(Partition({6})), Btu::from_text(kTwelveCycleB)));
    CHECK(btu::is_isomorphic(btu::psi(Partition({4, 2})), Btu::from_text(kEightFourCycles)));
    CHECK(btu::is_isomorphic(btu::psi(Partition({3, 3})), Btu::from_text(kTwoSixCycles)));
    CHECK(btu::is_isomorphic(btu::psi(Partition({2, 2, 2})), Btu::from_text(kThreeFourCycles)));
}

TEST_CASE("declared cycle lengths match an exhaustive cycle search") {
    CHECK(btu::known_cycle_lengths(Partition({4, 2})) == std::vector<int>{8, 4});
    CHECK(btu::known_cycle_lengths(Partition({3, 3})) == std::vector<int>{6, 6});
    for (int m = 2; m <= 8; ++m)
        for (const auto& beta : btu::enumerate_p2(m)) {
            Btu g = btu::psi(beta);
            auto lens = btu::known_cycle_lengths(beta);
            std::sort(lens.begin(), lens.end());
            INFO(beta.to_string());
            CHECK(oracle::brute_cycle_lengths(g) == lens);
        }
}

TEST_CASE("girth of partition units is twice the smallest part") {
    for (int m = 2; m <= 10; ++m)
        for (const auto& beta : btu::enumerate_p2(m)) {
            INFO(beta.to_string());
            CHECK(btu::girth(btu::psi(beta)) == 2 * beta.min_part());
        }
}

TEST_CASE("girth handles the acyclic and complete cases") {
    CHECK_FALSE(btu::girth(identity(1)).has_value());
    CHECK_FALSE(btu::girth(identity(5)).has_value());
    CHECK(btu::girth(all_ones(2)) == 4);
    CHECK(btu::girth(all_ones(5)) == 4);
    CHECK(btu::girth(Btu::from_text(kTwelveCycleA)) == 12);
    CHECK(btu::girth(Btu::from_text(kTwoSixCycles)) == 6);
}

TEST_CASE("girth agrees with an edge-deletion search on random units") {
    std::mt19937_64 rng(20260819);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 2 + static_cast<int>(oracle::rng_below(rng, 6));  // 2..7
        int r = 1 + static_cast<int>(oracle::rng_below(rng, m));
        Btu g = oracle::random_btu(m, r, rng);
        auto got = btu::girth(g);
        auto want = oracle::brute_girth(g);
        INFO(g.to_text());
        CHECK(got == want);
        if (got) CHECK(*got % 2 == 0);
        CHECK(got.has_value() == (g.r() >= 2));
    }
}

TEST_CASE("cycle listing finds every simple cycle once") {
    auto cycles = btu::enumerate_cycles(all_ones(2), 4);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0] == btu::Cycle{1, 1, 2, 2});

    // complete 3x3: every CN pair x VN pair closes one 4-cycle
    auto k33 = btu::enumerate_cycles(all_ones(3), 4);
    CHECK(k33.size() == 9);
    for (const auto& c : k33) check_cycle_valid(all_ones(3), c);

    auto two = btu::enumerate_cycles(btu::psi(Partition({3, 3})), 12);
    REQUIRE(two.size() == 2);
    CHECK(two[0].size() == 6);
    CHECK(two[1].size() == 6);
    CHECK(two[0][0] == 1);
    CHECK(two[1][0] == 4);

    CHECK_THROWS_AS(btu::enumerate_cycles(all_ones(2), 3), btu::DomainError);
    CHECK_THROWS_AS(btu::enumerate_cycles(all_ones(2), 2), btu::DomainError);
}

TEST_CASE("cycle listing matches brute force on random units") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 2 + static_cast<int>(oracle::rng_below(rng, 4));  // 2..5
        int r = 1 + static_cast<int>(oracle::rng_below(rng, std::min(m, 3)));
        Btu g = oracle::random_btu(m, r, rng);
        auto cycles = btu::enumerate_cycles(g, 2 * m);
        std::vector<int> lens;
        for (const auto& c : cycles) {
            check_cycle_valid(g, c);
            lens.push_back(static_cast<int>(c.size()));
        }
        INFO(g.to_text());
        CHECK(lens == oracle::brute_cycle_lengths(g));
        // sorted by (length, content), no duplicates
        std::set<btu::Cycle> uniq(cycles.begin(), cycles.end());
        CHECK(uniq.size() == cycles.size());
    }
}

TEST_CASE("cycle listing respects the length bound") {
    Btu g = btu::psi(Partition({4, 2}));
    auto all = btu::enumerate_cycles(g, 8);
    REQUIRE(all.size() == 2);
    auto four_only = btu::enumerate_cycles(g, 4);
    REQUIRE(four_only.size() == 1);
    CHECK(four_only[0].size() == 4);
    auto six_bound = btu::enumerate_cycles(g, 6);
    CHECK(six_bound == four_only);
}

TEST_CASE("smallest unit of each girth is the single cycle") {
    for (int target = 4; target <= 16; target += 2) {
        Btu g = btu::cage(target);
        CHECK(g.m() == target / 2);
        CHECK(g.r() == 2);
        CHECK(btu::girth(g) == target);
        // minimal: any smaller m admits only shorter cycles
        for (int m = 2; m < target / 2; ++m)
            for (const auto& beta : btu::enumerate_p2(m))
                CHECK(btu::girth(btu::psi(beta)) < target);
    }
    CHECK(btu::cage(12) == btu::psi(Partition({6})));
    CHECK_THROWS_AS(btu::cage(3), btu::DomainError);
    CHECK_THROWS_AS(btu::cage(2), btu::DomainError);
    CHECK_THROWS_AS(btu::cage(5), btu::DomainError);
}

TEST_CASE("complement flips every entry and is an involution") {
    Btu g = btu::psi(Partition({2, 2}));
    Btu c = btu::complement(g);
    CHECK(c.m() == 4);
    CHECK(c.r() == 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(c.bit(i, j) != g.bit(i, j));
    CHECK(btu::complement(c) == g);
    // flipping the two-block form swaps its blocks: same class again
    CHECK(btu::is_isomorphic(c, g));
    // flipping the single 8-cycle rewires it into another single 8-cycle
    Btu ring = btu::psi(Partition({4}));
    CHECK(btu::is_isomorphic(btu::complement(ring), ring));

    CHECK(btu::complement(identity(3)).r() == 2);
    CHECK_THROWS_AS(btu::complement(all_ones(3)), btu::DomainError);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int m = 2 + static_cast<int>(oracle::rng_below(rng, 6));
        int r = 1 + static_cast<int>(oracle::rng_below(rng, m - 1));  // r < m
        Btu u = oracle::random_btu(m, r, rng);
        Btu v = btu::complement(u);
        CHECK(v.r() == m - r);
        CHECK(btu::complement(v) == u);
    }
}

TEST_CASE("binary rank of partition units drops by the part count") {
    for (int m = 2; m <= 12; ++m)
        for (const auto& beta : btu::enumerate_p2(m)) {
            INFO(beta.to_string());
            CHECK(btu::gf2_rank(btu::psi(beta)) == m - beta.count());
        }
    CHECK(btu::gf2_rank(identity(6)) == 6);
    CHECK(btu::gf2_rank(all_ones(4)) == 1);
    CHECK(btu::gf2_rank(Btu::from_text(kTwelveCycleA)) == 5);
}

TEST_CASE("binary rank is a relabeling invariant and even-degree units are singular") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        int m = 2 + static_cast<int>(oracle::rng_below(rng, 6));
        int r = 1 + static_cast<int>(oracle::rng_below(rng, m));
        Btu g = oracle::random_btu(m, r, rng);
        CHECK(btu::gf2_rank(g) == btu::gf2_rank(oracle::shuffled_copy(g, rng)));
        if (r % 2 == 0) CHECK(btu::gf2_rank(g) < m);
    }
}

TEST_CASE("canonical key is invariant under relabeling") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 150; ++trial) {
        int m = 2 + static_cast<int>(oracle::rng_below(rng, 6));  // 2..7
        int r = 1 + static_cast<int>(oracle::rng_below(rng, m));
        Btu g = oracle::random_btu(m, r, rng);
        auto key = btu::canonical_key(g);
        CHECK(key == btu::canonical_key(oracle::shuffled_copy(g, rng)));
        // canonical representative: same class, and itself canonical
        Btu rep = key.to_btu();
        CHECK(rep.m() == m);
        CHECK(rep.r() == r);
        CHECK(btu::canonical_key(rep) == key);
    }
}

TEST_CASE("canonical witness maps the input onto its canonical form") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 100; ++trial) {
        int m = 2 + static_cast<int>(oracle::rng_below(rng, 6));
        int r = 1 + static_cast<int>(oracle::rng_below(rng, m));
        Btu g = oracle::random_btu(m, r, rng);
        auto [key, wit] = btu::canonical_form_with_witness(g);
        REQUIRE(wit.row_perm.size() == static_cast<std::size_t>(m));
        REQUIRE(wit.col_perm.size() == static_cast<std::size_t>(m));
        std::set<int> rs(wit.row_perm.begin(), wit.row_perm.end());
        std::set<int> cs(wit.col_perm.begin(), wit.col_perm.end());
        CHECK(rs.size() == static_cast<std::size_t>(m));
        CHECK(cs.size() == static_cast<std::size_t>(m));
        CHECK(oracle::apply_relabel(g, wit.row_perm, wit.col_perm) == key.to_btu());
    }
}

TEST_CASE("canonical key text form") {
    auto key = btu::canonical_key(all_ones(2));
    CHECK(key.hex() == "f0");
    CHECK(key.to_btu() == all_ones(2));
    auto key6 = btu::canonical_key(btu::psi(Partition({3, 3})));
    CHECK(key6.hex().size() == 10);  // ceil(36/8) bytes, two digits each
    CHECK(key6.hex().find_first_not_of("0123456789abcdef") == std::string::npos);
}

TEST_CASE("isomorphism decisions match the reference pairs") {
    Btu a = Btu::from_text(kTwelveCycleA);
    Btu b = Btu::from_text(kTwelveCycleB);
    Btu c = Btu::from_text(kTwoSixCycles);
    CHECK(btu::is_isomorphic(a, b));
    CHECK(btu::is_isomorphic(b, a));
    CHECK_FALSE(btu::is_isomorphic(a, c));
    CHECK_FALSE(btu::is_isomorphic(b, c));
    CHECK(btu::is_isomorphic(a, btu::psi(Partition({6}))));
    // shape mismatches are decisions, not errors
    CHECK_FALSE(btu::is_isomorphic(a, all_ones(6)));
    CHECK_FALSE(btu::is_isomorphic(a, btu::psi(Partition({5}))));
}

TEST_CASE("isomorphism decisions match brute force on random pairs") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 80; ++trial) {
        int m = 2 + static_cast<int>(oracle::rng_below(rng, 4));  // 2..5
        int r = 1 + static_cast<int>(oracle::rng_below(rng, m));
        Btu g = oracle::random_btu(m, r, rng);
        Btu h = (trial % 2 == 0) ? oracle::shuffled_copy(g, rng)
                                 : oracle::random_btu(m, r, rng);
        INFO(g.to_text() << "\nvs\n" << h.to_text());
        CHECK(btu::is_isomorphic(g, h) == oracle::brute_isomorphic(g, h));
    }
}

TEST_CASE("canonical search rejects sizes beyond its guard") {
    std::mt19937_64 rng(1);
    Btu big = oracle::random_btu(9, 2, rng);
    CHECK_THROWS_AS(btu::canonical_key(big), btu::ResourceError);
    CHECK_NOTHROW(btu::canonical_key(big, 9));
    Btu bigger = oracle::random_btu(13, 2, rng);
    CHECK_THROWS_AS(btu::canonical_key(bigger, 13), btu::ResourceError);
}

TEST_CASE("class lists for degree one and two come from closed forms") {
    auto one = btu::enumerate_nonisomorphic(5, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == identity(5));

    auto two = btu::enumerate_nonisomorphic(6, 2);
    auto parts = btu::enumerate_p2(6);
    REQUIRE(two.size() == parts.size());
    for (std::size_t i = 0; i < two.size(); ++i) CHECK(two[i] == btu::psi(parts[i]));

    // closed form reaches sizes the brute search cannot
    CHECK(btu::enumerate_nonisomorphic(30, 2).size() ==
          static_cast<std::size_t>(btu::count_p2(30)));
    CHECK_THROWS_AS(btu::enumerate_nonisomorphic(31, 2), btu::ResourceError);
}

TEST_CASE("class counts match the hand-checked table") {
    using btu::count_nonisomorphic;
    CHECK(count_nonisomorphic(4, 1) == 1);
    CHECK(count_nonisomorphic(4, 2) == 2);
    CHECK(count_nonisomorphic(4, 3) == 1);
    CHECK(count_nonisomorphic(4, 4) == 1);
    CHECK(count_nonisomorphic(5, 1) == 1);
    CHECK(count_nonisomorphic(5, 2) == 2);
    CHECK(count_nonisomorphic(5, 3) == 2);
    CHECK(count_nonisomorphic(5, 4) == 1);
    CHECK(count_nonisomorphic(6, 1) == 1);
    CHECK(count_nonisomorphic(6, 2) == 4);
    CHECK(count_nonisomorphic(6, 3) == 7);
    CHECK(count_nonisomorphic(6, 4) == 4);
    CHECK(count_nonisomorphic(6, 5) == 1);
    CHECK(count_nonisomorphic(6, 6) == 1);
    CHECK(count_nonisomorphic(7, 2) == 4);  // p(7) - p(6) = 15 - 11
}

TEST_CASE("brute-force class lists are pairwise non-isomorphic and complete") {
    auto list = btu::enumerate_nonisomorphic(6, 3);
    REQUIRE(list.size() == 7);
    for (std::size_t i = 0; i < list.size(); ++i) {
        CHECK(list[i].m() == 6);
        CHECK(list[i].r() == 3);
        for (std::size_t j = i + 1; j < list.size(); ++j)
            CHECK_FALSE(btu::is_isomorphic(list[i], list[j]));
    }
    // ascending key order
    for (std::size_t i = 0; i + 1 < list.size(); ++i)
        CHECK(btu::canonical_key(list[i]) < btu::canonical_key(list[i + 1]));
}

TEST_CASE("every assembled unit lands in an enumerated class") {
    // all ordered pairs of non-clashing image tables assemble every
    // labeled (4,2) unit; their distinct keys must be exactly the classes
    auto perms4 = oracle::all_perms(4);
    std::set<btu::CanonicalKey> keys;
    for (auto& p : perms4)
        for (auto& q : perms4)
            if (oracle::images_compatible(p, q))
                keys.insert(btu::canonical_key(btu_of_images(4, {p, q})));
    CHECK(keys.size() == 2);
    std::set<btu::CanonicalKey> enumerated;
    for (const auto& g : btu::enumerate_nonisomorphic(4, 2))
        enumerated.insert(btu::canonical_key(g));
    CHECK(keys == enumerated);

    // same crosscheck one degree higher
    std::set<btu::CanonicalKey> keys3;
    for (auto& p : perms4)
        for (auto& q : perms4) {
            if (!oracle::images_compatible(p, q)) continue;
            for (auto& s : perms4)
                if (oracle::images_compatible(p, s) && oracle::images_compatible(q, s))
                    keys3.insert(btu::canonical_key(btu_of_images(4, {p, q, s})));
        }
    CHECK(keys3.size() == 1);

    auto perms5 = oracle::all_perms(5);
    std::set<btu::CanonicalKey> keys5;
    for (auto& p : perms5)
        for (auto& q : perms5)
            if (oracle::images_compatible(p, q))
                keys5.insert(btu::canonical_key(btu_of_images(5, {p, q})));
    CHECK(keys5.size() == 2);
}

TEST_CASE("enumeration guards argument and resource limits") {
    CHECK_THROWS_AS(btu::count_nonisomorphic(0, 1), btu::DomainError);
    CHECK_THROWS_AS(btu::count_nonisomorphic(4, 5), btu::DomainError);
    CHECK_THROWS_AS(btu::count_nonisomorphic(4, 0), btu::DomainError);
    CHECK_THROWS_AS(btu::enumerate_nonisomorphic(9, 3), btu::ResourceError);

    btu::EnumerationLimits tight;
    tight.timeout = std::chrono::milliseconds(1);
    tight.max_m = 7;
    CHECK_THROWS_AS(btu::enumerate_nonisomorphic(7, 3, tight), btu::ResourceError);
}

TEST_CASE("enumeration is deterministic across thread counts") {
    btu::EnumerationLimits serial;
    serial.threads = 1;
    btu::EnumerationLimits parallel;
    parallel.threads = 4;
    auto a = btu::enumerate_nonisomorphic(6, 3, serial);
    auto b = btu::enumerate_nonisomorphic(6, 3, parallel);
    CHECK(a == b);
}
