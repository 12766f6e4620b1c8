#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pcdp/certificate.hpp"

namespace pcdp {

/// The ring Z_n with canonical residues 0..n-1.  All arithmetic reduces
/// into [0, n); fits desk-scale orders with 64-bit intermediates.
class CyclicGroup {
public:
    explicit CyclicGroup(Int order);

    Int order() const { return n_; }
    Int reduce(Int x) const {
        Int r = x % n_;
        return r < 0 ? r + n_ : r;
    }
    Int add(Int a, Int b) const { return reduce(a + b); }
    Int sub(Int a, Int b) const { return reduce(a - b); }
    Int neg(Int a) const { return reduce(-a); }
    Int mul(Int a, Int b) const { return reduce(reduce(a) * reduce(b)); }

private:
    Int n_;
};

/// An element (a, b) of a product group Z_m x Z_w, componentwise reduced.
struct ProductElement {
    Int first;   // residue mod m
    Int second;  // residue mod w
    bool operator==(const ProductElement&) const = default;
};

bool is_prime(Int n);

/// Distinct prime factors in increasing order.
std::vector<Int> prime_factors(Int n);

Int pow_mod(Int base, Int exp, Int mod);

/// Smallest generator of the multiplicative group mod a prime q.
Int primitive_root(Int q);

struct ResidueSets {
    std::vector<Int> residues;     // nonzero quadratic residues, sorted
    std::vector<Int> nonresidues;  // remaining nonzero residues, sorted
};
ResidueSets quadratic_residue_sets(Int n);

/// The coset w^i <w^e> of the index-e subgroup of Z_q^*, q prime, as a
/// sorted set of residues; w is the smallest primitive root.
std::vector<Int> cyclotomic_class(Int e, Int q, Int index);

/// |(D_h + 1) ∩ D_r| for classes of order e over Z_q.
Int cyclotomic_number(Int e, Int q, Int h, Int r);

/// k with base^k = x (mod q), 0 <= k < q-1.  Linear scan; base must
/// generate x (always true for a primitive root and x != 0).
Int discrete_log(Int base, Int x, Int q);

/// Ring isomorphism Z_m x Z_w -> Z_{mw} for coprime m, w, and its inverse.
Int crt_pack(Int a, Int m, Int b, Int w);
std::pair<Int, Int> crt_unpack(Int x, Int m, Int w);

/// Writes a prime p = 5 (mod 8) as s^2 + 4t^2 with s, t > 0.  Returns the
/// decomposition with s = 1 (mod 4) when one exists, else s = 3 (mod 4).
std::pair<Int, Int> decompose_s2_4t2(Int p);

}  // namespace pcdp
