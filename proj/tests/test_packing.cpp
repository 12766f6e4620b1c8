#include "doctest.h"
#include "pcdp/packing.hpp"
#include "test_families.hpp"

#include <algorithm>
#include <random>

using namespace pcdp;
using namespace testdata;

TEST_CASE("block normalization and rejection") {
    Block b({3, 1, 3}, 5);
    CHECK(b.elements() == std::vector<Int>{1, 3});
    CHECK_THROWS_AS(Block({5}, 5), std::invalid_argument);
    CHECK_THROWS_AS(Block({-1}, 5), std::invalid_argument);
    CHECK_THROWS_AS(Block({}, 5), std::invalid_argument);
}

TEST_CASE("difference profile basics") {
    SUBCASE("single pair block over Z_4") {
        BlockFamily fam(4, {{0, 1}});
        auto p = difference_profile(fam);
        CHECK(p.at(1) == 1);
        CHECK(p.at(2) == 0);
        CHECK(p.at(3) == 1);
    }
    SUBCASE("shift-tiled triple system over Z_9 peaks at 6") {
        // Each block repeats the differences 4 and 5 internally (5 = -4
        // mod 9), and the blocks are translates, so the peak is 3*2.
        CHECK(difference_profile(pdcp9_m3_family()).max() == 6);
    }
    SUBCASE("singleton families have zero profile") {
        for (Int n : {2, 5, 9}) {
            std::vector<std::vector<Int>> blocks;
            for (Int x = 0; x < n; ++x) blocks.push_back({x});
            CHECK(difference_profile(BlockFamily(n, blocks)).max() == 0);
        }
    }
}

TEST_CASE("index of the golden families") {
    CHECK(index_of(ex1_family()) == 3);
    CHECK(index_of(ex2_family()) == 4);
    CHECK(index_of(BlockFamily(2, {{0, 1}})) == 2);
}

TEST_CASE("partition detection") {
    CHECK(is_partition(pdcp9_m3_family()));
    CHECK_FALSE(is_partition(BlockFamily(3, {{0, 1}, {1, 2}})));
    CHECK_FALSE(is_partition(BlockFamily(2, {{0}})));
}

TEST_CASE("pcdp verification certificates") {
    SUBCASE("claim met") {
        auto cert = verify_pcdp(ex1_family(), 3);
        CHECK(cert.ok);
        CHECK(cert.value("n") == 21);
        CHECK(cert.value("m") == 7);
        CHECK(cert.value("index") == 3);
        CHECK(cert.block_sizes == "[3^7]");
    }
    SUBCASE("claim too low produces a witness") {
        auto cert = verify_pcdp(ex1_family(), 2);
        CHECK_FALSE(cert.ok);
        CHECK(!cert.witness.empty());
    }
    SUBCASE("singletons verify at claim 0") {
        std::vector<std::vector<Int>> blocks;
        for (Int x = 0; x < 6; ++x) blocks.push_back({x});
        CHECK(verify_pcdp(BlockFamily(6, blocks), 0).ok);
    }
    SUBCASE("non-partition fails with witness") {
        auto cert = verify_pcdp(BlockFamily(3, {{0}, {2}}), 0);
        CHECK_FALSE(cert.ok);
        CHECK(cert.witness.find("1") != std::string::npos);
    }
}

TEST_CASE("constant-profile families") {
    CHECK(is_pcdf(BlockFamily(7, {{0, 1, 3}, {2, 4, 5, 6}})));
    std::vector<std::vector<Int>> singles;
    for (Int x = 0; x < 5; ++x) singles.push_back({x});
    CHECK(is_pcdf(BlockFamily(5, singles)));
    CHECK_FALSE(is_pcdf(ex1_family()));
}

TEST_CASE("index lower bound") {
    CHECK(rho_lower_bound(21, 7) == 3);
    CHECK(rho_lower_bound(25, 6) == 4);
    CHECK(rho_lower_bound(10, 2) == 6);
    CHECK_THROWS_AS(rho_lower_bound(5, 5), std::invalid_argument);
    SUBCASE("agrees with the balanced ceiling form up to 200") {
        for (Int n = 3; n <= 200; ++n) {
            for (Int m = 2; m < n; ++m) {
                if (m == 2 && n % 4 == 2) continue;  // refined case handled separately
                const Int mu = n / m;
                const Int eps = n % m;
                const Int sumsq = eps * (mu + 1) * (mu + 1) + (m - eps) * mu * mu;
                const Int ceiling = (sumsq - n + (n - 2)) / (n - 1);  // ceil((sumsq-n)/(n-1))
                CHECK(rho_lower_bound(n, m) == ceiling);
                CHECK(rho_lower_bound(n, m) == mu);
            }
        }
    }
}

TEST_CASE("optimality checks on the golden families") {
    CHECK(is_optimal(ex1_family()));
    CHECK(is_optimal(ex2_family()));
    CHECK_FALSE(is_optimal(pdcp9_m3_family()));  // index 6 against bound 3
    CHECK(is_optimal(pdcp9_m9_family()));
}

TEST_CASE("profile equals the intersection-definition oracle") {
    std::mt19937 rng(20240901);
    for (int trial = 0; trial < 60; ++trial) {
        const Int n = 4 + static_cast<Int>(rng() % 14);
        const Int m = 1 + static_cast<Int>(rng() % 4);
        auto fam = random_family(rng, n, m);
        auto profile = difference_profile(fam);
        for (Int g = 1; g < n; ++g) CHECK(profile.at(g) == phi_by_intersection(fam, g));
    }
}

TEST_CASE("profile sum counting identity") {
    std::mt19937 rng(123456);
    for (int trial = 0; trial < 200; ++trial) {
        const Int n = 3 + static_cast<Int>(rng() % 16);
        const Int m = 1 + static_cast<Int>(rng() % 4);
        auto fam = random_family(rng, n, m);
        Int expected = 0;
        for (Int k : fam.sizes()) expected += k * (k - 1);
        CHECK(difference_profile(fam).sum() == expected);
    }
}

TEST_CASE("shift invariance of the profile") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        const Int n = 3 + static_cast<Int>(rng() % 16);
        auto fam = random_family(rng, n, 1 + static_cast<Int>(rng() % 3));
        const Int c = static_cast<Int>(rng() % n);
        CHECK(difference_profile(fam) == difference_profile(shift_family(fam, c)));
    }
}

TEST_CASE("half-set and complement share the same profile") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 200; ++trial) {
        const Int n = 6 + 2 * static_cast<Int>(rng() % 8);  // even orders 6..20
        auto [d, dc] = random_half_set(rng, n);
        auto pd = difference_profile(BlockFamily(n, {d}));
        auto pdc = difference_profile(BlockFamily(n, {dc}));
        CHECK(pd == pdc);
        // Hence any two-block partition into half-sets has even index.
        auto joint = difference_profile(BlockFamily(n, {d, dc}));
        CHECK(joint.max() % 2 == 0);
        for (Int g = 1; g < n; ++g) CHECK(joint.at(g) == 2 * pd.at(g));
    }
}

TEST_CASE("exhaustive minimum-index search") {
    SUBCASE("matches the explicit triple system at (9,3)") {
        auto r = brute_force_min_index(9, 3);
        REQUIRE(r.completed);
        CHECK(r.best_index == 3);
        REQUIRE(r.family.has_value());
        CHECK(verify_pcdp(*r.family, 3).ok);
    }
    SUBCASE("two half-blocks of Z_6 cannot do better than 4") {
        auto r = brute_force_min_index(6, 2);
        REQUIRE(r.completed);
        CHECK(r.best_index == 4);
    }
    SUBCASE("all singletons") {
        for (Int n : {2, 5, 8}) {
            auto r = brute_force_min_index(n, n);
            REQUIRE(r.completed);
            CHECK(r.best_index == 0);
        }
    }
    SUBCASE("deterministic witness") {
        auto a = brute_force_min_index(8, 3);
        auto b = brute_force_min_index(8, 3);
        REQUIRE(a.family.has_value());
        CHECK(a.family->blocks() == b.family->blocks());
    }
}

TEST_CASE("capped search settles existence questions") {
    SUBCASE("no partition of Z_6 into two triples has index 3") {
        auto r = search_pcdp(6, 2, 3, 3);
        CHECK(r.completed);
        CHECK_FALSE(r.family.has_value());
    }
    SUBCASE("index-4 witness exists for (6, [3^2])") {
        auto r = search_pcdp(6, 2, 4, 3);
        REQUIRE(r.family.has_value());
        CHECK(verify_pcdp(*r.family, 4).ok);
        for (Int k : r.family->sizes()) CHECK(k == 3);
    }
}
