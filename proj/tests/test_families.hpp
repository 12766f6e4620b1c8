#pragma once

// Shared golden families and independent test-side oracles.  The oracles
// deliberately recompute via the intersection definition |(D + g) ∩ D|,
// independent of the pair-histogram route the library uses.

#include <random>
#include <set>
#include <vector>

#include "pcdp/packing.hpp"

namespace testdata {

using pcdp::BlockFamily;
using pcdp::Int;

inline BlockFamily ex1_family() {
    return BlockFamily(21, {{0, 1, 2},
                            {3, 7, 11},
                            {6, 13, 20},
                            {8, 9, 19},
                            {4, 12, 17},
                            {5, 10, 15},
                            {14, 16, 18}});
}

inline BlockFamily ex2_family() {
    return BlockFamily(25, {{0, 1, 2, 3, 4},
                            {6, 12, 18, 24},
                            {8, 11, 19, 22},
                            {7, 14, 16, 23},
                            {9, 13, 17, 21},
                            {5, 10, 15, 20}});
}

inline BlockFamily pdcp9_m3_family() {
    return BlockFamily(9, {{0, 1, 5}, {3, 4, 8}, {6, 7, 2}});
}

inline BlockFamily pdcp9_m9_family() {
    return BlockFamily(27, {{0, 1, 2},
                            {3, 4, 6},
                            {5, 7, 10},
                            {8, 11, 16},
                            {9, 17, 22},
                            {12, 18, 24},
                            {13, 20, 26},
                            {14, 21, 25},
                            {15, 19, 23}});
}

/// Oracle: Phi(g) as a literal sum of |(D_i + g) ∩ D_i| set intersections.
inline Int phi_by_intersection(const BlockFamily& fam, Int g) {
    const Int n = fam.order();
    Int total = 0;
    for (const auto& block : fam.blocks()) {
        std::set<Int> shifted;
        for (Int x : block.elements()) shifted.insert((x + g) % n);
        for (Int x : block.elements()) total += shifted.count(x);
    }
    return total;
}

inline BlockFamily shift_family(const BlockFamily& fam, Int c) {
    const Int n = fam.order();
    std::vector<std::vector<Int>> blocks;
    for (const auto& block : fam.blocks()) {
        std::vector<Int> b;
        for (Int x : block.elements()) b.push_back(((x + c) % n + n) % n);
        blocks.push_back(std::move(b));
    }
    return BlockFamily(n, std::move(blocks));
}

/// A random family of non-empty subsets (not necessarily disjoint).
inline BlockFamily random_family(std::mt19937& rng, Int n, Int m) {
    std::vector<std::vector<Int>> blocks(m);
    std::uniform_int_distribution<Int> pick(0, n - 1);
    for (auto& b : blocks) {
        std::set<Int> s;
        const Int size = 1 + pick(rng) % n;
        while (static_cast<Int>(s.size()) < size) s.insert(pick(rng));
        b.assign(s.begin(), s.end());
    }
    return BlockFamily(n, std::move(blocks));
}

/// A uniformly random partition of Z_n into exactly m non-empty blocks.
inline BlockFamily random_partition(std::mt19937& rng, Int n, Int m) {
    while (true) {
        std::vector<std::vector<Int>> blocks(m);
        std::uniform_int_distribution<Int> pick(0, m - 1);
        for (Int x = 0; x < n; ++x) blocks[pick(rng)].push_back(x);
        bool ok = true;
        for (const auto& b : blocks) ok = ok && !b.empty();
        if (ok) return BlockFamily(n, std::move(blocks));
    }
}

/// A random half-set of even-order Z_n together with its complement.
inline std::pair<std::vector<Int>, std::vector<Int>> random_half_set(std::mt19937& rng, Int n) {
    std::vector<Int> all(n);
    for (Int i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Int> d(all.begin(), all.begin() + n / 2);
    std::vector<Int> dc(all.begin() + n / 2, all.end());
    return {d, dc};
}

}  // namespace testdata
