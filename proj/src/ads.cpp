#include "pcdp/ads.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "pcdp/modring.hpp"

namespace pcdp {

Certificate verify_ads(const std::vector<Int>& elements, Int n) {
    Certificate cert;
    cert.kind = "ads";
    if (n < 2) {
        cert.witness = "group order must be >= 2";
        return cert;
    }
    BlockFamily fam(n, {elements});
    const Block& d = fam.blocks().front();
    const auto profile = difference_profile(fam);
    Int lo = profile.at(1), hi = profile.at(1);
    for (Int g = 2; g < n; ++g) {
        lo = std::min(lo, profile.at(g));
        hi = std::max(hi, profile.at(g));
    }
    cert.values = {{"n", n}, {"k", d.size()}};
    if (hi - lo > 1) {
        for (Int g = 1; g < n; ++g) {
            if (profile.at(g) != lo && profile.at(g) != lo + 1) {
                cert.witness = "difference count at g=" + std::to_string(g) + " is " +
                               std::to_string(profile.at(g)) + ", outside {" + std::to_string(lo) +
                               "," + std::to_string(lo + 1) + "}";
                break;
            }
        }
        if (cert.witness.empty())
            cert.witness = "profile spans more than two values";
        return cert;
    }
    Int t = 0;
    for (Int g = 1; g < n; ++g)
        if (profile.at(g) == lo) ++t;
    if (hi == lo) t = n - 1;  // constant profile: a difference set
    cert.ok = true;
    cert.values.emplace_back("lambda", lo);
    cert.values.emplace_back("t", t);
    return cert;
}

AlmostDifferenceSet make_ads(std::vector<Int> elements, Int n) {
    auto cert = verify_ads(elements, n);
    if (!cert.ok) throw VerificationError("not an almost difference set", cert);
    return AlmostDifferenceSet{n, Block(std::move(elements), n), cert.value("k"),
                               cert.value("lambda"), cert.value("t")};
}

bool ads_necessary_condition(Int n, Int k, Int lambda, Int t) {
    const Int modulus = k * (k - 1);
    if (modulus == 0) return t % 1 == 0;  // k <= 1: vacuous
    return ((lambda + 1) * (n - 1) - t) % modulus == 0;
}

AlmostDifferenceSet complement_ads(const AlmostDifferenceSet& ads) {
    if (ads.n % 2 != 0 || ads.k != ads.n / 2)
        throw std::invalid_argument("complement_ads: requires a half-set over even order");
    std::vector<Int> comp;
    for (Int x = 0; x < ads.n; ++x)
        if (!ads.elements.contains(x)) comp.push_back(x);
    auto out = make_ads(std::move(comp), ads.n);
    if (out.lambda != ads.lambda || out.t != ads.t)
        throw std::logic_error("complement_ads: parameters changed under complement");
    return out;
}

AlmostDifferenceSet lempel_ads(Int q) {
    if (!is_prime(q) || q % 2 == 0)
        throw std::invalid_argument("lempel_ads: q must be an odd prime");
    const Int w = primitive_root(q);
    const auto nonresidues = cyclotomic_class(2, q, 1);
    std::vector<Int> logs;
    logs.reserve(nonresidues.size());
    for (Int x : nonresidues) {
        const Int shifted = (x - 1 + q) % q;
        // 1 is always a square, so 0 never arises here; fail loudly if the
        // arithmetic ever says otherwise.
        if (shifted == 0)
            throw std::logic_error("lempel_ads: 0 appeared in the shifted nonresidue set");
        logs.push_back(discrete_log(w, shifted, q));
    }
    auto ads = make_ads(std::move(logs), q - 1);
    const Int expected_lambda = (q % 4 == 3) ? (q - 3) / 4 : (q - 5) / 4;
    const Int expected_t = (q % 4 == 3) ? (3 * q - 5) / 4 : (q - 1) / 4;
    if (ads.k != (q - 1) / 2 || ads.lambda != expected_lambda || ads.t != expected_t)
        throw std::logic_error("lempel_ads: parameters disagree with the stated formulas");
    return ads;
}

namespace {

const std::vector<DingTriple> kTriplesT1 = {{0, 1, 3}, {0, 2, 3}, {1, 2, 0}, {1, 3, 0}};
const std::vector<DingTriple> kTriplesS1 = {{0, 1, 2}, {0, 3, 2}, {1, 0, 3}, {1, 2, 3}};

}  // namespace

std::vector<DingTriple> ding_admissible_triples(Int p) {
    const auto [s, t] = decompose_s2_4t2(p);
    std::vector<DingTriple> out;
    if (t == 1) out.insert(out.end(), kTriplesT1.begin(), kTriplesT1.end());
    if (s == 1) out.insert(out.end(), kTriplesS1.begin(), kTriplesS1.end());
    return out;
}

namespace {

std::vector<Int> ding_candidate(Int p, DingTriple triple, bool swap_odd_classes) {
    // Replacing the primitive root w by w^3 swaps the quartic classes 1 and
    // 3; the triple lists presume the sign convention for t that this
    // labeling freedom absorbs, so both labelings are candidates.
    auto relabel = [&](int idx) {
        if (swap_odd_classes && (idx == 1 || idx == 3)) return idx ^ 2;
        return idx;
    };
    const auto di = cyclotomic_class(4, p, relabel(triple.i));
    const auto dj = cyclotomic_class(4, p, relabel(triple.j));
    const auto dl = cyclotomic_class(4, p, relabel(triple.l));
    std::set<Int> packed;
    for (const auto* cls : {&di, &dj})
        for (Int x : *cls) packed.insert(crt_pack(0, 2, x, p));
    for (const auto* cls : {&dl, &dj})
        for (Int x : *cls) packed.insert(crt_pack(1, 2, x, p));
    packed.insert(crt_pack(0, 2, 0, p));
    return {packed.begin(), packed.end()};
}

}  // namespace

AlmostDifferenceSet ding_ads(Int p, DingTriple triple) {
    if (!is_prime(p) || p % 8 != 5)
        throw std::invalid_argument("ding_ads: p must be a prime = 5 (mod 8)");
    const auto admissible = ding_admissible_triples(p);
    if (std::find(admissible.begin(), admissible.end(), triple) == admissible.end())
        throw std::invalid_argument("ding_ads: triple not admissible for this decomposition");

    const Int n = 2 * p;
    for (bool swap_odd : {false, true}) {
        auto elements = ding_candidate(p, triple, swap_odd);
        auto cert = verify_ads(elements, n);
        if (cert.ok && cert.value("k") == n / 2 && cert.value("lambda") == (n - 2) / 4 &&
            cert.value("t") == (3 * n - 2) / 4)
            return make_ads(std::move(elements), n);
    }
    throw VerificationError("ding_ads: no class labeling verifies for triple (" +
                            std::to_string(triple.i) + "," + std::to_string(triple.j) + "," +
                            std::to_string(triple.l) + ") at p=" + std::to_string(p));
}

BlockFamily ads_to_pcdp(const AlmostDifferenceSet& ads) {
    const Int n = ads.n;
    if (n % 2 != 0 || ads.k != n / 2)
        throw std::invalid_argument("ads_to_pcdp: requires a half-set over even order");
    Int expected_index;
    if (n % 4 == 0) {
        if (ads.lambda != (n - 4) / 4 || ads.t != n / 4)
            throw std::invalid_argument("ads_to_pcdp: parameters do not match the 0 mod 4 case");
        expected_index = n / 2;
    } else {
        if (ads.lambda != (n - 2) / 4 || ads.t != (3 * n - 2) / 4)
            throw std::invalid_argument("ads_to_pcdp: parameters do not match the 2 mod 4 case");
        expected_index = (n + 2) / 2;
    }
    std::vector<Int> comp;
    for (Int x = 0; x < n; ++x)
        if (!ads.elements.contains(x)) comp.push_back(x);
    BlockFamily fam(n, {ads.elements.elements(), comp});
    auto cert = verify_pcdp(fam, expected_index);
    if (!cert.ok || cert.value("index") != expected_index)
        throw VerificationError("ads_to_pcdp: output index mismatch", cert);
    if (!is_optimal(fam)) throw std::logic_error("ads_to_pcdp: output not bound-optimal");
    return fam;
}

BlockFamily optimal_halving_pcdp(Int n) {
    // Odd-prime successor covers both congruence classes of q = n + 1;
    // otherwise fall through to the 2p route.
    if (n >= 4 && is_prime(n + 1)) return ads_to_pcdp(lempel_ads(n + 1));
    if (n % 4 == 2 && is_prime(n / 2) && (n / 2) % 8 == 5)
        return ads_to_pcdp(ding_ads(n / 2, ding_admissible_triples(n / 2).front()));
    throw std::invalid_argument("optimal_halving_pcdp: n matches no construction clause");
}

}  // namespace pcdp
