#include "doctest.h"
#include "pcdp/modring.hpp"

#include <numeric>
#include <set>

using namespace pcdp;

TEST_CASE("primality by trial division") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(21));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_THROWS_AS(is_prime(0), std::invalid_argument);
}

TEST_CASE("smallest primitive roots") {
    CHECK(primitive_root(5) == 2);
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(2) == 1);
    CHECK(primitive_root(13) == 2);
    CHECK_THROWS_AS(primitive_root(8), std::invalid_argument);
}

TEST_CASE("quadratic residue sets") {
    auto r7 = quadratic_residue_sets(7);
    CHECK(r7.residues == std::vector<Int>{1, 2, 4});
    CHECK(r7.nonresidues == std::vector<Int>{3, 5, 6});
    auto r5 = quadratic_residue_sets(5);
    CHECK(r5.residues == std::vector<Int>{1, 4});
    CHECK(r5.nonresidues == std::vector<Int>{2, 3});
    auto r2 = quadratic_residue_sets(2);
    CHECK(r2.residues == std::vector<Int>{1});
    CHECK(r2.nonresidues.empty());
}

TEST_CASE("cyclotomic classes") {
    CHECK(cyclotomic_class(2, 5, 1) == std::vector<Int>{2, 3});
    CHECK(cyclotomic_class(2, 13, 0) == std::vector<Int>{1, 3, 4, 9, 10, 12});
    SUBCASE("e=1 gives the whole multiplicative group") {
        for (Int q : {3, 7, 11}) {
            auto cls = cyclotomic_class(1, q, 0);
            CHECK(static_cast<Int>(cls.size()) == q - 1);
            CHECK(cls.front() == 1);
            CHECK(cls.back() == q - 1);
        }
    }
    CHECK_THROWS_AS(cyclotomic_class(3, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(cyclotomic_class(2, 5, 2), std::invalid_argument);
}

TEST_CASE("classes partition the multiplicative group with equal sizes") {
    for (Int q : {5, 7, 13, 17, 29}) {
        for (Int e = 1; e <= q - 1; ++e) {
            if ((q - 1) % e != 0) continue;
            std::set<Int> all;
            for (Int i = 0; i < e; ++i) {
                auto cls = cyclotomic_class(e, q, i);
                CHECK(static_cast<Int>(cls.size()) == (q - 1) / e);
                all.insert(cls.begin(), cls.end());
            }
            CHECK(static_cast<Int>(all.size()) == q - 1);
        }
    }
}

TEST_CASE("quadratic residues equal the even cyclotomic class") {
    for (Int q : {5, 7, 11, 13, 19, 23}) {
        CHECK(quadratic_residue_sets(q).residues == cyclotomic_class(2, q, 0));
    }
}

TEST_CASE("cyclotomic numbers") {
    CHECK(cyclotomic_number(2, 5, 0, 0) == 0);
    CHECK(cyclotomic_number(2, 5, 0, 1) == 1);
    for (Int q : {5, 7, 11})
        CHECK(cyclotomic_number(1, q, 0, 0) == q - 2);
}

TEST_CASE("discrete logs") {
    CHECK(discrete_log(3, 1, 7) == 0);
    CHECK(discrete_log(3, 2, 7) == 2);
    CHECK(discrete_log(2, 3, 5) == 3);
    CHECK_THROWS_AS(discrete_log(3, 0, 7), std::invalid_argument);
    SUBCASE("left inverse of exponentiation") {
        for (Int q : {5, 7, 13, 19}) {
            Int w = primitive_root(q);
            for (Int x = 1; x < q; ++x) CHECK(pow_mod(w, discrete_log(w, x, q), q) == x);
        }
    }
}

TEST_CASE("crt pack and unpack") {
    CHECK(crt_pack(0, 7, 0, 2) == 0);
    CHECK(crt_pack(1, 7, 1, 2) == 1);
    CHECK(crt_pack(3, 5, 2, 3) == 8);
    CHECK(crt_unpack(8, 5, 3) == std::pair<Int, Int>{3, 2});
    CHECK_THROWS_AS(crt_pack(0, 6, 0, 2), std::invalid_argument);
    SUBCASE("bijectivity") {
        for (auto [m, w] : {std::pair<Int, Int>{5, 3}, {7, 2}, {9, 4}}) {
            std::set<Int> image;
            for (Int a = 0; a < m; ++a)
                for (Int b = 0; b < w; ++b) {
                    Int x = crt_pack(a, m, b, w);
                    CHECK(crt_unpack(x, m, w) == std::pair<Int, Int>{a, b});
                    image.insert(x);
                }
            CHECK(static_cast<Int>(image.size()) == m * w);
        }
    }
}

TEST_CASE("s^2 + 4t^2 decomposition of primes = 5 mod 8") {
    CHECK(decompose_s2_4t2(5) == std::pair<Int, Int>{1, 1});
    CHECK(decompose_s2_4t2(13) == std::pair<Int, Int>{3, 1});
    CHECK(decompose_s2_4t2(29) == std::pair<Int, Int>{5, 1});
    CHECK(decompose_s2_4t2(37) == std::pair<Int, Int>{1, 3});
    CHECK_THROWS_AS(decompose_s2_4t2(7), std::invalid_argument);
    SUBCASE("identity and sign rule hold up to 200") {
        for (Int p = 5; p <= 200; ++p) {
            if (!is_prime(p) || p % 8 != 5) continue;
            auto [s, t] = decompose_s2_4t2(p);
            CHECK(s * s + 4 * t * t == p);
            CHECK(s > 0);
            CHECK(t > 0);
            CHECK((s % 4 == 1 || s % 4 == 3));
        }
    }
}

TEST_CASE("cyclic group reduction") {
    CyclicGroup z7(7);
    CHECK(z7.reduce(-1) == 6);
    CHECK(z7.sub(2, 5) == 4);
    CHECK(z7.mul(3, 5) == 1);
    CHECK_THROWS_AS(CyclicGroup(0), std::invalid_argument);
}
