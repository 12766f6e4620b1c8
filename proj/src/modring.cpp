#include "pcdp/modring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace pcdp {

CyclicGroup::CyclicGroup(Int order) : n_(order) {
    if (order < 1) throw std::invalid_argument("cyclic group order must be >= 1");
}

bool is_prime(Int n) {
    if (n < 1) throw std::invalid_argument("is_prime: n must be >= 1");
    if (n < 4) return n >= 2;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (Int d = 5; d * d <= n; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

std::vector<Int> prime_factors(Int n) {
    if (n < 1) throw std::invalid_argument("prime_factors: n must be >= 1");
    std::vector<Int> out;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

Int pow_mod(Int base, Int exp, Int mod) {
    if (mod < 1) throw std::invalid_argument("pow_mod: modulus must be >= 1");
    if (exp < 0) throw std::invalid_argument("pow_mod: negative exponent");
    Int acc = 1 % mod;
    Int b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return acc;
}

Int primitive_root(Int q) {
    if (!is_prime(q)) throw std::invalid_argument("primitive_root: q must be prime");
    if (q == 2) return 1;
    const auto factors = prime_factors(q - 1);
    for (Int g = 2; g < q; ++g) {
        bool ok = true;
        for (Int p : factors) {
            if (pow_mod(g, (q - 1) / p, q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found (q not prime?)");
}

ResidueSets quadratic_residue_sets(Int n) {
    if (n < 2) throw std::invalid_argument("quadratic_residue_sets: n must be >= 2");
    std::set<Int> squares;
    for (Int x = 1; x < n; ++x) squares.insert(x * x % n);
    squares.erase(0);
    ResidueSets out;
    out.residues.assign(squares.begin(), squares.end());
    for (Int x = 1; x < n; ++x)
        if (!squares.count(x)) out.nonresidues.push_back(x);
    return out;
}

std::vector<Int> cyclotomic_class(Int e, Int q, Int index) {
    if (!is_prime(q)) throw std::invalid_argument("cyclotomic_class: q must be prime");
    if (e < 1 || (q - 1) % e != 0)
        throw std::invalid_argument("cyclotomic_class: e must divide q-1");
    if (index < 0 || index >= e) throw std::invalid_argument("cyclotomic_class: index out of range");
    const Int w = primitive_root(q);
    const Int size = (q - 1) / e;
    std::vector<Int> out;
    out.reserve(size);
    Int step = pow_mod(w, e, q);
    Int x = pow_mod(w, index, q);
    for (Int k = 0; k < size; ++k) {
        out.push_back(x);
        x = x * step % q;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int cyclotomic_number(Int e, Int q, Int h, Int r) {
    const auto dh = cyclotomic_class(e, q, h);
    const auto dr = cyclotomic_class(e, q, r);
    std::set<Int> target(dr.begin(), dr.end());
    Int count = 0;
    for (Int x : dh)
        if (target.count((x + 1) % q)) ++count;
    return count;
}

Int discrete_log(Int base, Int x, Int q) {
    if (!is_prime(q)) throw std::invalid_argument("discrete_log: q must be prime");
    const CyclicGroup zq(q);
    base = zq.reduce(base);
    x = zq.reduce(x);
    if (x == 0) throw std::invalid_argument("discrete_log: log of 0 is undefined");
    Int acc = 1;
    for (Int k = 0; k < q - 1; ++k) {
        if (acc == x) return k;
        acc = acc * base % q;
    }
    throw std::invalid_argument("discrete_log: x not in the subgroup generated by base");
}

namespace {

// Extended gcd: returns g and x with a*x = g (mod m), for inverse computation.
Int inverse_mod(Int a, Int m) {
    Int old_r = ((a % m) + m) % m, r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int quot = old_r / r;
        old_r = std::exchange(r, old_r - quot * r);
        old_s = std::exchange(s, old_s - quot * s);
    }
    if (old_r != 1) throw std::invalid_argument("inverse_mod: not invertible");
    return ((old_s % m) + m) % m;
}

}  // namespace

Int crt_pack(Int a, Int m, Int b, Int w) {
    if (m < 1 || w < 1) throw std::invalid_argument("crt_pack: moduli must be >= 1");
    if (std::gcd(m, w) != 1) throw std::invalid_argument("crt_pack: moduli must be coprime");
    const CyclicGroup zm(m), zw(w);
    a = zm.reduce(a);
    b = zw.reduce(b);
    if (w == 1) return a;
    const Int t = (((b - a) % w) + w) % w * inverse_mod(m % w, w) % w;
    return a + m * t;
}

std::pair<Int, Int> crt_unpack(Int x, Int m, Int w) {
    if (m < 1 || w < 1) throw std::invalid_argument("crt_unpack: moduli must be >= 1");
    if (std::gcd(m, w) != 1) throw std::invalid_argument("crt_unpack: moduli must be coprime");
    const CyclicGroup zmw(m * w);
    x = zmw.reduce(x);
    return {x % m, x % w};
}

std::pair<Int, Int> decompose_s2_4t2(Int p) {
    if (!is_prime(p) || p % 8 != 5)
        throw std::invalid_argument("decompose_s2_4t2: p must be a prime = 5 (mod 8)");
    std::vector<std::pair<Int, Int>> found;
    for (Int t = 1; 4 * t * t < p; ++t) {
        const Int s2 = p - 4 * t * t;
        Int s = static_cast<Int>(std::sqrt(static_cast<double>(s2)));
        while (s * s < s2) ++s;
        while (s * s > s2) --s;
        if (s >= 1 && s * s == s2) found.emplace_back(s, t);
    }
    for (const auto& st : found)
        if (st.first % 4 == 1) return st;
    for (const auto& st : found)
        if (st.first % 4 == 3) return st;
    throw std::invalid_argument("decompose_s2_4t2: no decomposition found");
}

}  // namespace pcdp
