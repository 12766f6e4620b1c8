#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcdp/certificate.hpp"
#include "pcdp/modring.hpp"

namespace pcdp {

/// A base block: a nonempty, strictly sorted set of residues mod n.
/// Out-of-range residues are rejected; duplicates are collapsed.
class Block {
public:
    Block(std::vector<Int> elements, Int n);

    const std::vector<Int>& elements() const { return elems_; }
    Int size() const { return static_cast<Int>(elems_.size()); }
    bool contains(Int x) const;
    bool operator==(const Block&) const = default;

private:
    std::vector<Int> elems_;
};

/// A family of base blocks over Z_n: the universal carrier for cyclic
/// difference packings and their partitioned/derived forms.
class BlockFamily {
public:
    BlockFamily(Int n, std::vector<std::vector<Int>> blocks);

    Int order() const { return n_; }
    Int block_count() const { return static_cast<Int>(blocks_.size()); }
    const std::vector<Block>& blocks() const { return blocks_; }

    /// Multiset K of block sizes, in family order.
    std::vector<Int> sizes() const;
    /// K in exponential presentation, e.g. "[3^7]" or "[4^5 5^1]".
    std::string sizes_exponential() const;

    /// Same blocks regardless of order.
    bool same_blocks(const BlockFamily& other) const;
    bool operator==(const BlockFamily&) const = default;

private:
    Int n_;
    std::vector<Block> blocks_;
};

/// Counts of the difference function on Z_n^*: at(g) for g in 1..n-1.
class DifferenceProfile {
public:
    DifferenceProfile(Int n, std::vector<Int> counts);

    Int order() const { return n_; }
    Int at(Int g) const;
    Int max() const;
    Int sum() const;
    bool constant() const;
    const std::vector<Int>& raw() const { return counts_; }
    bool operator==(const DifferenceProfile&) const = default;

private:
    Int n_;
    std::vector<Int> counts_;  // counts_[g-1]
};

/// The difference function of the family: at(g) counts ordered pairs
/// (x, y) within a common block with x - y = g (mod n).
DifferenceProfile difference_profile(const BlockFamily& fam);

/// The packing index: the maximum of the difference profile.
Int index_of(const BlockFamily& fam);

/// True iff the blocks are pairwise disjoint and cover Z_n.
bool is_partition(const BlockFamily& fam);

/// Checks the partitioned-packing property; with a claimed index, ok
/// means partition and index <= claim, else the exact index is reported.
Certificate verify_pcdp(const BlockFamily& fam, std::optional<Int> claimed_index = std::nullopt);

/// True iff the (already verified) partition has a constant profile.
bool is_pcdf(const BlockFamily& fam);

/// Lower bound on the minimum index over all partitions of Z_n into m
/// blocks: floor(n/m), raised by one when m = 2 and n = 2 (mod 4).
Int rho_lower_bound(Int n, Int m);

/// One-sided optimality check: index equals the lower bound.  A false
/// result means "not certified by the bound", not a disproof.
bool is_optimal(const BlockFamily& fam);

struct PcdpSearchResult {
    Int best_index = -1;                  // -1 when nothing was found
    std::optional<BlockFamily> family;
    bool completed = false;               // search space exhausted within budget
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 400'000'000;

/// Exhaustive branch-and-bound over all partitions of Z_n into exactly m
/// blocks, minimizing the index.  Canonical form (0 in the first block,
/// blocks ordered by minimum element) kills the relabeling symmetry.
/// Deterministic; `completed` is false when the budget ran out first.
PcdpSearchResult brute_force_min_index(Int n, Int m, std::uint64_t budget = kDefaultSearchBudget);

/// First partition with index <= index_cap (optionally with every block
/// of the given size), or proof by exhaustion that none exists.
PcdpSearchResult search_pcdp(Int n, Int m, Int index_cap, std::optional<Int> block_size,
                             std::uint64_t budget = kDefaultSearchBudget);

}  // namespace pcdp
