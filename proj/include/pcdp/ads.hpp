#pragma once

#include <vector>

#include "pcdp/certificate.hpp"
#include "pcdp/packing.hpp"

namespace pcdp {

/// A k-subset of Z_n whose difference counts take the value lambda at
/// exactly t nonzero shifts and lambda+1 at the remaining n-1-t.
struct AlmostDifferenceSet {
    Int n;
    Block elements;
    Int k;
    Int lambda;
    Int t;
};

/// Checks the two-adjacent-values profile condition and infers (k, lambda, t).
/// A constant profile is accepted as the difference-set degenerate case
/// t = n-1.
Certificate verify_ads(const std::vector<Int>& elements, Int n);

/// Wraps verify_ads; throws VerificationError when the profile is not
/// two-valued.
AlmostDifferenceSet make_ads(std::vector<Int> elements, Int n);

/// (lambda + 1)(n - 1) = t (mod k(k-1)).
bool ads_necessary_condition(Int n, Int k, Int lambda, Int t);

/// Complement of a half-set ADS carries the same (lambda, t).
AlmostDifferenceSet complement_ads(const AlmostDifferenceSet& ads);

/// Logarithm set of (nonresidues - 1) over Z_{q-1}, q an odd prime.
/// Parameters: ((q-1)/2, (q-3)/4, (3q-5)/4) for q = 3 (mod 4) and
/// ((q-1)/2, (q-5)/4, (q-1)/4) for q = 1 (mod 4).
AlmostDifferenceSet lempel_ads(Int q);

struct DingTriple {
    int i, j, l;
    bool operator==(const DingTriple&) const = default;
};

/// Admissible triples for p = s^2 + 4t^2: the t=1 list, the s=1 list, or
/// both (p = 5).
std::vector<DingTriple> ding_admissible_triples(Int p);

/// Quartic cyclotomic construction over Z_2 x Z_p packed into Z_{2p},
/// p = 5 (mod 8) prime; parameters (2p, p, (2p-2)/4; (6p-2)/4).
AlmostDifferenceSet ding_ads(Int p, DingTriple triple);

/// {D, complement} as an optimal two-block partition; requires the ADS
/// parameters matching the half-set constructions for n = 0 or 2 (mod 4).
BlockFamily ads_to_pcdp(const AlmostDifferenceSet& ads);

/// Optimal (n, [(n/2)^2], *)-PCDP dispatcher: n+1 prime, or n = 2p with
/// p = 5 (mod 8) prime.
BlockFamily optimal_halving_pcdp(Int n);

}  // namespace pcdp
