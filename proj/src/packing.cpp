#include "pcdp/packing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace pcdp {

Block::Block(std::vector<Int> elements, Int n) : elems_(std::move(elements)) {
    if (n < 1) throw std::invalid_argument("block: group order must be >= 1");
    if (elems_.empty()) throw std::invalid_argument("block: empty blocks are rejected");
    for (Int x : elems_)
        if (x < 0 || x >= n)
            throw std::invalid_argument("block: residue " + std::to_string(x) +
                                        " out of range for Z_" + std::to_string(n));
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool Block::contains(Int x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

BlockFamily::BlockFamily(Int n, std::vector<std::vector<Int>> blocks) : n_(n) {
    if (n < 1) throw std::invalid_argument("family: group order must be >= 1");
    blocks_.reserve(blocks.size());
    for (auto& b : blocks) blocks_.emplace_back(std::move(b), n);
}

std::vector<Int> BlockFamily::sizes() const {
    std::vector<Int> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(b.size());
    return out;
}

std::string BlockFamily::sizes_exponential() const {
    std::map<Int, Int> hist;
    for (const auto& b : blocks_) ++hist[b.size()];
    std::string out = "[";
    bool first = true;
    for (const auto& [size, count] : hist) {
        if (!first) out += " ";
        first = false;
        out += std::to_string(size) + "^" + std::to_string(count);
    }
    return out + "]";
}

bool BlockFamily::same_blocks(const BlockFamily& other) const {
    if (n_ != other.n_ || blocks_.size() != other.blocks_.size()) return false;
    auto a = blocks_, b = other.blocks_;
    auto less = [](const Block& x, const Block& y) { return x.elements() < y.elements(); };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    return a == b;
}

DifferenceProfile::DifferenceProfile(Int n, std::vector<Int> counts)
    : n_(n), counts_(std::move(counts)) {
    if (n < 1 || static_cast<Int>(counts_.size()) != n - 1)
        throw std::invalid_argument("difference profile: counts must have length n-1");
}

Int DifferenceProfile::at(Int g) const {
    if (g < 1 || g >= n_) throw std::out_of_range("difference profile: g must be in 1..n-1");
    return counts_[g - 1];
}

Int DifferenceProfile::max() const {
    return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

Int DifferenceProfile::sum() const {
    return std::accumulate(counts_.begin(), counts_.end(), Int{0});
}

bool DifferenceProfile::constant() const {
    return std::adjacent_find(counts_.begin(), counts_.end(), std::not_equal_to<>()) ==
           counts_.end();
}

DifferenceProfile difference_profile(const BlockFamily& fam) {
    const Int n = fam.order();
    std::vector<Int> counts(n - 1, 0);
    for (const auto& block : fam.blocks()) {
        const auto& e = block.elements();
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::size_t j = 0; j < e.size(); ++j) {
                if (i == j) continue;
                const Int d = ((e[i] - e[j]) % n + n) % n;
                ++counts[d - 1];
            }
        }
    }
    return DifferenceProfile(n, std::move(counts));
}

Int index_of(const BlockFamily& fam) { return difference_profile(fam).max(); }

bool is_partition(const BlockFamily& fam) {
    const Int n = fam.order();
    std::vector<char> seen(n, 0);
    Int covered = 0;
    for (const auto& block : fam.blocks()) {
        for (Int x : block.elements()) {
            if (seen[x]) return false;
            seen[x] = 1;
            ++covered;
        }
    }
    return covered == n;
}

namespace {

std::string partition_witness(const BlockFamily& fam) {
    const Int n = fam.order();
    std::vector<Int> count(n, 0);
    for (const auto& block : fam.blocks())
        for (Int x : block.elements()) ++count[x];
    for (Int x = 0; x < n; ++x) {
        if (count[x] == 0) return "element " + std::to_string(x) + " is not covered";
        if (count[x] > 1) return "element " + std::to_string(x) + " lies in multiple blocks";
    }
    return "not a partition";
}

}  // namespace

Certificate verify_pcdp(const BlockFamily& fam, std::optional<Int> claimed_index) {
    Certificate cert;
    cert.kind = "pcdp";
    cert.block_sizes = fam.sizes_exponential();
    cert.values = {{"n", fam.order()}, {"m", fam.block_count()}};
    if (!is_partition(fam)) {
        cert.ok = false;
        cert.witness = partition_witness(fam);
        return cert;
    }
    const auto profile = difference_profile(fam);
    const Int index = profile.max();
    cert.values.emplace_back("index", index);
    if (claimed_index && index > *claimed_index) {
        cert.ok = false;
        for (Int g = 1; g < fam.order(); ++g) {
            if (profile.at(g) > *claimed_index) {
                cert.witness = "difference count at g=" + std::to_string(g) + " is " +
                               std::to_string(profile.at(g)) + " > claimed " +
                               std::to_string(*claimed_index);
                break;
            }
        }
        return cert;
    }
    cert.ok = true;
    return cert;
}

bool is_pcdf(const BlockFamily& fam) {
    if (!is_partition(fam)) throw std::invalid_argument("is_pcdf: family is not a partition");
    return difference_profile(fam).constant();
}

Int rho_lower_bound(Int n, Int m) {
    if (m <= 0 || m >= n) throw std::invalid_argument("rho_lower_bound: need 0 < m < n");
    const Int mu = n / m;
    if (m == 2 && n % 4 == 2) return mu + 1;
    return mu;
}

bool is_optimal(const BlockFamily& fam) {
    if (!is_partition(fam)) throw std::invalid_argument("is_optimal: family is not a partition");
    const Int n = fam.order();
    const Int m = fam.block_count();
    const Int index = index_of(fam);
    if (m == n) return index == 0;
    return index == rho_lower_bound(n, m);
}

namespace {

// Shared backtracking core over set partitions of Z_n into exactly m
// blocks.  Elements are placed in increasing order, so blocks are ordered
// by minimum element and 0 always lands in block 0.
struct PartitionSearcher {
    Int n, m;
    std::optional<Int> block_size;      // exact size for every block when set
    std::optional<Int> cap;             // feasible-index cap; stop at first hit
    std::uint64_t budget;

    std::vector<std::vector<Int>> blocks;
    std::vector<Int> counts;            // difference histogram, index g in 1..n-1
    Int cur_max = 0;

    Int best = -1;
    std::optional<std::vector<std::vector<Int>>> best_blocks;
    bool completed = true;
    std::uint64_t nodes = 0;

    PartitionSearcher(Int n_, Int m_) : n(n_), m(m_), counts(n, 0) {}

    bool over_budget() {
        if (++nodes > budget) {
            completed = false;
            return true;
        }
        return false;
    }

    // Adds x to block b; returns the previous cur_max for undo.
    Int add(Int b, Int x) {
        const Int prev_max = cur_max;
        for (Int y : blocks[b]) {
            Int d1 = x - y;
            if (d1 < 0) d1 += n;
            const Int d2 = n - d1;
            const Int c1 = ++counts[d1];
            const Int c2 = ++counts[d2];
            cur_max = std::max({cur_max, c1, c2});
        }
        blocks[b].push_back(x);
        return prev_max;
    }

    void remove(Int b, Int x, Int prev_max) {
        blocks[b].pop_back();
        for (Int y : blocks[b]) {
            Int d1 = x - y;
            if (d1 < 0) d1 += n;
            --counts[d1];
            --counts[n - d1];
        }
        cur_max = prev_max;
    }

    bool prune() const {
        if (cap) return cur_max > *cap;
        return best >= 0 && cur_max >= best;
    }

    // True when the caller should unwind (first capped hit or budget).
    bool dfs(Int next) {
        if (over_budget()) return true;
        if (next == n) {
            if (cap) {
                best = cur_max;
                best_blocks = blocks;
                return true;
            }
            if (best < 0 || cur_max < best) {
                best = cur_max;
                best_blocks = blocks;
            }
            return false;
        }
        const Int used = static_cast<Int>(blocks.size());
        // Every still-unopened block needs a fresh minimum element.
        if (n - next < m - used) return false;
        for (Int b = 0; b < used; ++b) {
            if (block_size && static_cast<Int>(blocks[b].size()) >= *block_size) continue;
            const Int prev_max = add(b, next);
            const bool stop = !prune() && dfs(next + 1);
            remove(b, next, prev_max);
            if (stop) return true;
        }
        if (used < m) {
            blocks.emplace_back();
            blocks.back().push_back(next);
            const bool stop = dfs(next + 1);
            blocks.pop_back();
            if (stop) return true;
        }
        return false;
    }
};

PcdpSearchResult run_search(PartitionSearcher& s) {
    s.dfs(0);
    PcdpSearchResult out;
    out.best_index = s.best;
    out.completed = s.completed;
    out.nodes = s.nodes;
    if (s.best_blocks) out.family = BlockFamily(s.n, *s.best_blocks);
    return out;
}

}  // namespace

PcdpSearchResult brute_force_min_index(Int n, Int m, std::uint64_t budget) {
    if (n < 1 || m < 1 || m > n)
        throw std::invalid_argument("brute_force_min_index: need 1 <= m <= n");
    PartitionSearcher s(n, m);
    s.budget = budget;
    return run_search(s);
}

PcdpSearchResult search_pcdp(Int n, Int m, Int index_cap, std::optional<Int> block_size,
                             std::uint64_t budget) {
    if (n < 1 || m < 1 || m > n) throw std::invalid_argument("search_pcdp: need 1 <= m <= n");
    if (block_size && *block_size * m != n)
        throw std::invalid_argument("search_pcdp: block size does not tile Z_n");
    PartitionSearcher s(n, m);
    s.budget = budget;
    s.cap = index_cap;
    s.block_size = block_size;
    return run_search(s);
}

}  // namespace pcdp
