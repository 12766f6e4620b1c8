#include "pcdp/diffmat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace pcdp {

std::string flavor_name(MatrixFlavor f) {
    switch (f) {
        case MatrixFlavor::cdm: return "cdm";
        case MatrixFlavor::homogeneous_cdm: return "homogeneous_cdm";
        case MatrixFlavor::hdm: return "hdm";
        case MatrixFlavor::homogeneous_hdm: return "homogeneous_hdm";
        case MatrixFlavor::pdm: return "pdm";
    }
    throw std::logic_error("flavor_name: unknown flavor");
}

MatrixFlavor flavor_from_name(const std::string& name) {
    if (name == "cdm") return MatrixFlavor::cdm;
    if (name == "homogeneous_cdm") return MatrixFlavor::homogeneous_cdm;
    if (name == "hdm") return MatrixFlavor::hdm;
    if (name == "homogeneous_hdm") return MatrixFlavor::homogeneous_hdm;
    if (name == "pdm") return MatrixFlavor::pdm;
    throw std::invalid_argument("unknown matrix flavor '" + name + "'");
}

std::vector<Int> DifferenceMatrix::hole() const {
    std::vector<Int> h;
    if (hole_w < 1 || n % hole_w != 0) return h;
    const Int step = n / hole_w;
    for (Int x = 0; x < n; x += step) h.push_back(x);
    return h;
}

std::vector<Int> DifferenceMatrix::column(Int j) const {
    std::vector<Int> col;
    col.reserve(entries.size());
    for (const auto& row : entries) col.push_back(row.at(j));
    return col;
}

namespace {

bool is_hdm_flavor(MatrixFlavor f) {
    return f == MatrixFlavor::hdm || f == MatrixFlavor::homogeneous_hdm;
}

bool is_homogeneous_flavor(MatrixFlavor f) {
    return f == MatrixFlavor::homogeneous_cdm || f == MatrixFlavor::homogeneous_hdm;
}

std::string col_to_string(const std::vector<Int>& col) {
    std::string s = "[";
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(col[i]);
    }
    return s + "]";
}

// Row-pair difference histogram check: every element of `target_once`
// exactly once, everything else never.  Returns a witness or "".
std::string check_pair_coverage(const DifferenceMatrix& mat, const std::vector<char>& target_once) {
    const Int n = mat.n;
    for (Int r = 0; r < mat.rows(); ++r) {
        for (Int s = r + 1; s < mat.rows(); ++s) {
            std::vector<Int> count(n, 0);
            for (Int j = 0; j < mat.cols(); ++j)
                ++count[((mat.entries[r][j] - mat.entries[s][j]) % n + n) % n];
            for (Int x = 0; x < n; ++x) {
                const Int want = target_once[x] ? 1 : 0;
                if (count[x] != want)
                    return "rows (" + std::to_string(r) + "," + std::to_string(s) +
                           ") cover difference " + std::to_string(x) + " " +
                           std::to_string(count[x]) + " times, expected " + std::to_string(want);
            }
        }
    }
    return "";
}

std::string check_rows_are_permutations(const DifferenceMatrix& mat,
                                        const std::vector<Int>& universe) {
    for (Int r = 0; r < mat.rows(); ++r) {
        auto row = mat.entries[r];
        std::sort(row.begin(), row.end());
        if (row != universe)
            return "row " + std::to_string(r) + " is not a permutation of the required set";
    }
    return "";
}

}  // namespace

Certificate verify_matrix(const DifferenceMatrix& mat) {
    Certificate cert;
    cert.kind = flavor_name(mat.flavor);
    const Int n = mat.n;
    cert.values = {{"n", n}, {"k", mat.rows()}, {"cols", mat.cols()}};
    if (is_hdm_flavor(mat.flavor)) cert.values.emplace_back("w", mat.hole_w);

    if (n < 1) {
        cert.witness = "group order must be >= 1";
        return cert;
    }
    for (const auto& row : mat.entries) {
        if (static_cast<Int>(row.size()) != mat.cols()) {
            cert.witness = "ragged rows";
            return cert;
        }
        for (Int x : row)
            if (x < 0 || x >= n) {
                cert.witness = "entry " + std::to_string(x) + " out of range";
                return cert;
            }
    }

    switch (mat.flavor) {
        case MatrixFlavor::cdm:
        case MatrixFlavor::homogeneous_cdm: {
            if (mat.rows() < 1) {
                cert.witness = "no rows";
                return cert;
            }
            if (mat.cols() != n) {
                cert.witness = "column count must equal the group order";
                return cert;
            }
            std::vector<char> all(n, 1);
            if (auto w = check_pair_coverage(mat, all); !w.empty()) {
                cert.witness = w;
                return cert;
            }
            if (mat.flavor == MatrixFlavor::homogeneous_cdm) {
                std::vector<Int> universe(n);
                std::iota(universe.begin(), universe.end(), 0);
                if (auto w = check_rows_are_permutations(mat, universe); !w.empty()) {
                    cert.witness = w;
                    return cert;
                }
            }
            break;
        }
        case MatrixFlavor::hdm:
        case MatrixFlavor::homogeneous_hdm: {
            if (mat.rows() < 1) {
                cert.witness = "no rows";
                return cert;
            }
            if (mat.hole_w < 1 || n % mat.hole_w != 0) {
                cert.witness = "hole order must divide the group order";
                return cert;
            }
            if (mat.cols() != n - mat.hole_w) {
                cert.witness = "column count must be n - w";
                return cert;
            }
            std::vector<char> outside_hole(n, 1);
            for (Int x : mat.hole()) outside_hole[x] = 0;
            if (auto w = check_pair_coverage(mat, outside_hole); !w.empty()) {
                cert.witness = w;
                return cert;
            }
            if (mat.flavor == MatrixFlavor::homogeneous_hdm) {
                std::vector<Int> universe;
                for (Int x = 0; x < n; ++x)
                    if (outside_hole[x]) universe.push_back(x);
                if (auto w = check_rows_are_permutations(mat, universe); !w.empty()) {
                    cert.witness = w;
                    return cert;
                }
            }
            break;
        }
        case MatrixFlavor::pdm: {
            if (mat.rows() != 3) {
                cert.witness = "partial matrices have exactly 3 rows";
                return cert;
            }
            if (mat.cols() != n - 3) {
                cert.witness = "column count must be n - 3";
                return cert;
            }
            std::vector<std::vector<Int>> computed_missing;
            for (Int r = 0; r < 3; ++r) {
                std::vector<char> seen(n, 0);
                for (Int x : mat.entries[r]) {
                    if (seen[x]) {
                        cert.witness =
                            "row " + std::to_string(r) + " repeats entry " + std::to_string(x);
                        return cert;
                    }
                    seen[x] = 1;
                }
                std::vector<Int> missing;
                for (Int x = 0; x < n; ++x)
                    if (!seen[x]) missing.push_back(x);
                computed_missing.push_back(std::move(missing));
            }
            for (Int r = 0; r < 3; ++r) {
                for (Int s = r + 1; s < 3; ++s) {
                    std::vector<Int> count(n, 0);
                    for (Int j = 0; j < mat.cols(); ++j) {
                        const Int d = ((mat.entries[r][j] - mat.entries[s][j]) % n + n) % n;
                        if (++count[d] > 1) {
                            cert.witness = "rows (" + std::to_string(r) + "," + std::to_string(s) +
                                           ") repeat difference " + std::to_string(d);
                            return cert;
                        }
                    }
                }
            }
            if (!mat.missing_sets.empty()) {
                if (mat.missing_sets.size() != 3) {
                    cert.witness = "declared missing sets must number 3";
                    return cert;
                }
                for (Int r = 0; r < 3; ++r) {
                    auto declared = mat.missing_sets[r];
                    std::sort(declared.begin(), declared.end());
                    if (declared != computed_missing[r]) {
                        cert.witness = "declared missing set of row " + std::to_string(r) +
                                       " differs from the computed complement";
                        return cert;
                    }
                }
                // Extendibility: the pooled differences of the missing sets
                // cover each element at most three times.
                std::vector<Int> count(n, 0);
                for (const auto& missing : computed_missing) {
                    for (Int a : missing)
                        for (Int b : missing) {
                            if (a == b) continue;
                            const Int d = ((a - b) % n + n) % n;
                            if (++count[d] > 3) {
                                cert.witness = "missing-set differences cover " +
                                               std::to_string(d) + " more than three times";
                                return cert;
                            }
                        }
                }
            }
            break;
        }
    }
    cert.ok = true;
    return cert;
}

DifferenceMatrix mult_table_cdm(Int p) {
    if (!is_prime(p)) throw std::invalid_argument("mult_table_cdm: p must be prime");
    DifferenceMatrix mat;
    mat.n = p;
    mat.flavor = MatrixFlavor::cdm;
    mat.entries.assign(p, std::vector<Int>(p));
    for (Int i = 0; i < p; ++i)
        for (Int j = 0; j < p; ++j) mat.entries[i][j] = i * j % p;
    return mat;
}

DifferenceMatrix homogeneous_prime_cdm(Int p, Int k) {
    if (!is_prime(p)) throw std::invalid_argument("homogeneous_prime_cdm: p must be prime");
    if (k < 1 || k > p - 1)
        throw std::invalid_argument("homogeneous_prime_cdm: need 1 <= k <= p-1");
    DifferenceMatrix mat;
    mat.n = p;
    mat.flavor = MatrixFlavor::homogeneous_cdm;
    mat.entries.assign(k, std::vector<Int>(p));
    for (Int i = 1; i <= k; ++i)
        for (Int j = 0; j < p; ++j) mat.entries[i - 1][j] = i * j % p;
    return mat;
}

DifferenceMatrix trivial_cdm(Int k) {
    if (k < 1) throw std::invalid_argument("trivial_cdm: need k >= 1");
    DifferenceMatrix mat;
    mat.n = 1;
    mat.flavor = MatrixFlavor::homogeneous_cdm;
    mat.entries.assign(k, std::vector<Int>(1, 0));
    return mat;
}

DifferenceMatrix zero_column_hdm(Int n, Int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("zero_column_hdm: need n, k >= 1");
    DifferenceMatrix mat;
    mat.n = n;
    mat.flavor = MatrixFlavor::homogeneous_hdm;
    mat.hole_w = n;
    mat.entries.assign(k, {});
    return mat;
}

DifferenceMatrix product_cdm(const DifferenceMatrix& a, const DifferenceMatrix& b) {
    if (a.flavor != MatrixFlavor::homogeneous_cdm || b.flavor != MatrixFlavor::homogeneous_cdm)
        throw std::invalid_argument("product_cdm: inputs must be homogeneous");
    if (a.rows() != b.rows()) throw std::invalid_argument("product_cdm: row counts differ");
    DifferenceMatrix out;
    out.n = a.n * b.n;
    out.flavor = MatrixFlavor::homogeneous_cdm;
    out.entries.assign(a.rows(), std::vector<Int>(out.n));
    for (Int i = 0; i < a.rows(); ++i) {
        Int j = 0;
        for (Int j1 = 0; j1 < a.cols(); ++j1)
            for (Int j2 = 0; j2 < b.cols(); ++j2)
                out.entries[i][j++] = a.entries[i][j1] * b.n + b.entries[i][j2];
    }
    auto cert = verify_matrix(out);
    if (!cert.ok) throw VerificationError("product_cdm: output failed verification", cert);
    return out;
}

MatrixSearchResult homogeneous_cdm(Int n, Int k, std::uint64_t budget) {
    if (n < 1 || k < 1) throw std::invalid_argument("homogeneous_cdm: need n, k >= 1");
    MatrixSearchResult result;
    if (n == 1) {
        result.matrix = trivial_cdm(k);
        result.completed = true;
        result.note = "trivial order-1 matrix";
        return result;
    }
    std::map<Int, Int> factorization;
    {
        Int rest = n;
        for (Int d = 2; d * d <= rest; ++d)
            while (rest % d == 0) {
                ++factorization[d];
                rest /= d;
            }
        if (rest > 1) ++factorization[rest];
    }
    const bool multiplier_route =
        std::all_of(factorization.begin(), factorization.end(),
                    [&](const auto& pe) { return pe.first >= k + 1; });
    if (multiplier_route) {
        DifferenceMatrix acc = trivial_cdm(k);
        for (const auto& [p, e] : factorization)
            for (Int i = 0; i < e; ++i) acc = product_cdm(acc, homogeneous_prime_cdm(p, k));
        result.matrix = std::move(acc);
        result.completed = true;
        result.note = "product of prime multiplication tables";
        return result;
    }
    if (k == 3 && n % 2 == 1 && n >= 5) {
        MatrixSearchOptions opts;
        opts.budget = budget;
        auto search = search_matrix(MatrixFlavor::homogeneous_cdm, n, 3, 0, opts);
        if (!search.note.empty()) search.note += "; ";
        search.note += "backtracking search";
        return search;
    }
    throw std::invalid_argument("homogeneous_cdm: (" + std::to_string(n) + "," +
                                std::to_string(k) + ") is not admissible");
}

DifferenceMatrix inflate_hdm(const DifferenceMatrix& hdm, const DifferenceMatrix& cdm) {
    if (!is_hdm_flavor(hdm.flavor))
        throw std::invalid_argument("inflate_hdm: first argument must carry a hole");
    if (is_hdm_flavor(cdm.flavor))
        throw std::invalid_argument("inflate_hdm: second argument must be hole-free");
    if (hdm.rows() != cdm.rows()) throw std::invalid_argument("inflate_hdm: row counts differ");
    const Int n = hdm.n;
    const Int m = cdm.n;
    DifferenceMatrix out;
    out.n = m * n;
    out.hole_w = m * hdm.hole_w;
    out.flavor = (hdm.flavor == MatrixFlavor::homogeneous_hdm &&
                  cdm.flavor == MatrixFlavor::homogeneous_cdm)
                     ? MatrixFlavor::homogeneous_hdm
                     : MatrixFlavor::hdm;
    out.entries.assign(hdm.rows(), {});
    for (Int i = 0; i < hdm.rows(); ++i) {
        out.entries[i].reserve(hdm.cols() * cdm.cols());
        // Hole-aligned lift: the residue mod n decides hole membership, so
        // layering the small matrix on top of it keeps the hole a subgroup.
        for (Int jh = 0; jh < hdm.cols(); ++jh)
            for (Int jc = 0; jc < cdm.cols(); ++jc)
                out.entries[i].push_back(hdm.entries[i][jh] + n * cdm.entries[i][jc]);
    }
    auto cert = verify_matrix(out);
    if (!cert.ok) throw VerificationError("inflate_hdm: output failed verification", cert);
    return out;
}

DifferenceMatrix fill_hole(const DifferenceMatrix& hdm, const DifferenceMatrix& pdm) {
    if (hdm.flavor != MatrixFlavor::homogeneous_hdm || hdm.rows() != 3)
        throw std::invalid_argument("fill_hole: need a homogeneous 3-row hole matrix");
    if (pdm.flavor != MatrixFlavor::pdm || pdm.missing_sets.empty())
        throw std::invalid_argument("fill_hole: need an extendible partial matrix");
    if (hdm.hole_w != pdm.n)
        throw std::invalid_argument("fill_hole: hole order does not match the filler order");
    if (!verify_matrix(hdm).ok || !verify_matrix(pdm).ok)
        throw std::invalid_argument("fill_hole: inputs failed re-verification");
    const Int m = hdm.n;
    const Int scale = m / pdm.n;
    DifferenceMatrix out;
    out.n = m;
    out.flavor = MatrixFlavor::pdm;
    out.entries = hdm.entries;
    for (Int i = 0; i < 3; ++i)
        for (Int j = 0; j < pdm.cols(); ++j) out.entries[i].push_back(scale * pdm.entries[i][j]);
    for (const auto& missing : pdm.missing_sets) {
        std::vector<Int> scaled;
        for (Int x : missing) scaled.push_back(scale * x);
        std::sort(scaled.begin(), scaled.end());
        out.missing_sets.push_back(std::move(scaled));
    }
    auto cert = verify_matrix(out);
    if (!cert.ok) throw VerificationError("fill_hole: output failed verification", cert);
    return out;
}

namespace {

using Column = std::vector<Int>;

DifferenceMatrix assemble_pdm(Int n, std::vector<Column> columns,
                              std::vector<std::vector<Int>> missing) {
    DifferenceMatrix out;
    out.n = n;
    out.flavor = MatrixFlavor::pdm;
    out.entries.assign(3, std::vector<Int>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (Int i = 0; i < 3; ++i) out.entries[i][j] = columns[j][i];
    for (auto& m : missing) std::sort(m.begin(), m.end());
    out.missing_sets = std::move(missing);
    return out;
}

void remove_column_exact(std::vector<Column>& columns, const Column& target,
                         const std::string& who) {
    auto it = std::find(columns.begin(), columns.end(), target);
    if (it == columns.end())
        throw std::logic_error(who + ": column " + col_to_string(target) + " not present");
    columns.erase(it);
}

}  // namespace

DifferenceMatrix dinitz_stinson_pdm_3mod4(Int m) {
    if (!is_prime(m) || m % 4 != 3 || m <= 3)
        throw std::invalid_argument("dinitz_stinson_pdm_3mod4: m must be a prime = 3 (mod 4), m > 3");
    const CyclicGroup zm(m);
    const auto rs = quadratic_residue_sets(m);
    std::vector<char> is_nonresidue(m, 0);
    for (Int x : rs.nonresidues) is_nonresidue[x] = 1;
    auto pack0 = [&](Int x) { return crt_pack(zm.reduce(x), m, 0, 2); };
    auto pack1 = [&](Int x) { return crt_pack(zm.reduce(x), m, 1, 2); };

    Certificate last;
    for (Int c = 2; c < m; ++c) {
        if (!is_nonresidue[zm.reduce(c * c - 1)]) continue;
        std::vector<Column> columns;
        for (Int y : rs.nonresidues) {
            columns.push_back({pack0(y), pack1(c * y), pack1((c + 1) * y)});
            columns.push_back({pack1(y), pack1(-c * y), pack0(-(c - 1) * y)});
            columns.push_back({pack0(-y), pack0(-c * y), pack0(-(c + 1) * y)});
            columns.push_back({pack1(-y), pack0(c * y), pack1((c - 1) * y)});
        }
        remove_column_exact(columns, {pack0(1), pack0(c), pack0(c + 1)},
                            "dinitz_stinson_pdm_3mod4");
        remove_column_exact(columns, {pack0(4), pack0(4 * c), pack0(4 * (c + 1))},
                            "dinitz_stinson_pdm_3mod4");
        columns.push_back({pack1(0), pack1(0), pack1(0)});
        auto pdm = assemble_pdm(2 * m, std::move(columns),
                                {{pack0(0), pack0(1), pack0(4)},
                                 {pack0(0), pack0(c), pack0(4 * c)},
                                 {pack0(0), pack0(c + 1), pack0(4 * (c + 1))}});
        last = verify_matrix(pdm);
        if (last.ok) return pdm;
    }
    throw VerificationError("dinitz_stinson_pdm_3mod4: no admissible multiplier verified", last);
}

DifferenceMatrix dinitz_stinson_pdm_1mod4(Int m) {
    if (!is_prime(m) || m % 4 != 1)
        throw std::invalid_argument("dinitz_stinson_pdm_1mod4: m must be a prime = 1 (mod 4)");
    const CyclicGroup zm(m);
    const auto rs = quadratic_residue_sets(m);
    const Int w = primitive_root(m);
    const Int t = (m - 1) / 4;
    std::vector<Int> q_set;
    {
        Int x = 1;
        const Int step = w * w % m;
        for (Int i = 0; i < t; ++i) {
            q_set.push_back(x);
            x = x * step % m;
        }
    }
    auto pack0 = [&](Int x) { return crt_pack(zm.reduce(x), m, 0, 2); };
    auto pack1 = [&](Int x) { return crt_pack(zm.reduce(x), m, 1, 2); };

    Certificate last;
    for (Int c : rs.nonresidues) {
        std::vector<Column> columns;
        for (Int y : q_set) {
            for (Int sign : {1, -1}) {
                const Int z = sign * y;
                columns.push_back({pack1(z), pack1(c * z), pack0((1 + c) * z)});
                columns.push_back({pack0(c * z), pack1(z), pack1((1 + c) * z)});
                columns.push_back({pack0(c * c * z), pack0(c * z), pack0(c * (1 + c) * z)});
                columns.push_back({pack1(c * z), pack0(c * c * z), pack1(c * (c + 1) * z)});
            }
        }
        remove_column_exact(columns, {pack1(1), pack1(c), pack0(1 + c)},
                            "dinitz_stinson_pdm_1mod4");
        remove_column_exact(columns, {pack1(-1), pack1(-c), pack0(-(1 + c))},
                            "dinitz_stinson_pdm_1mod4");
        columns.push_back({pack1(0), pack1(0), pack1(0)});
        auto pdm = assemble_pdm(2 * m, std::move(columns),
                                {{pack0(0), pack1(1), pack1(-1)},
                                 {pack0(0), pack1(c), pack1(-c)},
                                 {pack0(0), pack0(c + 1), pack0(-(c + 1))}});
        last = verify_matrix(pdm);
        if (last.ok) return pdm;
    }
    throw VerificationError("dinitz_stinson_pdm_1mod4: no admissible multiplier verified", last);
}

namespace {

// Accepts a 3-row homogeneous hole matrix directly, or a 4-row matrix
// carrying an all-zero row which is then dropped.
DifferenceMatrix to_homogeneous_3row(const DifferenceMatrix& hdm, const std::string& who) {
    if (hdm.flavor == MatrixFlavor::homogeneous_hdm && hdm.rows() == 3) return hdm;
    if (is_hdm_flavor(hdm.flavor) && hdm.rows() == 4) {
        for (Int r = 0; r < 4; ++r) {
            if (std::all_of(hdm.entries[r].begin(), hdm.entries[r].end(),
                            [](Int x) { return x == 0; })) {
                DifferenceMatrix out = hdm;
                out.entries.erase(out.entries.begin() + r);
                out.flavor = MatrixFlavor::homogeneous_hdm;
                return out;
            }
        }
        throw std::invalid_argument(who + ": 4-row matrix has no all-zero row to drop");
    }
    throw std::invalid_argument(who + ": need a homogeneous 3-row hole matrix");
}

}  // namespace

DifferenceMatrix trim_hdm_to_pdm(const DifferenceMatrix& hdm,
                                 const std::vector<std::vector<Int>>& remove_cols,
                                 const std::vector<std::vector<Int>>& add_cols,
                                 std::vector<std::vector<Int>> missing) {
    auto base = to_homogeneous_3row(hdm, "trim_hdm_to_pdm");
    const Int n = base.n;
    const CyclicGroup zn(n);
    std::vector<Column> columns;
    for (Int j = 0; j < base.cols(); ++j) columns.push_back(base.column(j));
    for (const auto& raw : remove_cols) {
        if (raw.size() != 3) throw std::invalid_argument("trim_hdm_to_pdm: columns have 3 rows");
        Column target = {zn.reduce(raw[0]), zn.reduce(raw[1]), zn.reduce(raw[2])};
        remove_column_exact(columns, target, "trim_hdm_to_pdm");
    }
    for (const auto& raw : add_cols) {
        if (raw.size() != 3) throw std::invalid_argument("trim_hdm_to_pdm: columns have 3 rows");
        columns.push_back({zn.reduce(raw[0]), zn.reduce(raw[1]), zn.reduce(raw[2])});
    }
    for (auto& set : missing)
        for (auto& x : set) x = zn.reduce(x);
    auto pdm = assemble_pdm(n, std::move(columns), std::move(missing));
    auto cert = verify_matrix(pdm);
    if (!cert.ok) throw VerificationError("trim_hdm_to_pdm: output failed verification", cert);
    return pdm;
}

std::optional<DifferenceMatrix> pdm_from_hdm2_scan(const DifferenceMatrix& hdm) {
    auto base = to_homogeneous_3row(hdm, "pdm_from_hdm2_scan");
    if (base.hole_w != 2) throw std::invalid_argument("pdm_from_hdm2_scan: hole order must be 2");
    const Int n = base.n;
    const Int half = n / 2;
    auto extendible = [&](const Column& c1, const Column& c2) {
        std::vector<Int> count(n, 0);
        for (Int r = 0; r < 3; ++r) {
            const Int triple[3] = {0, c1[r], c2[r]};
            for (Int a : triple)
                for (Int b : triple) {
                    if (a == b) continue;
                    if (++count[((a - b) % n + n) % n] > 3) return false;
                }
        }
        return true;
    };
    for (Int j1 = 0; j1 < base.cols(); ++j1) {
        const auto c1 = base.column(j1);
        for (Int j2 = j1 + 1; j2 < base.cols(); ++j2) {
            const auto c2 = base.column(j2);
            if (!extendible(c1, c2)) continue;
            std::vector<std::vector<Int>> missing = {
                {0, c1[0], c2[0]}, {0, c1[1], c2[1]}, {0, c1[2], c2[2]}};
            try {
                return trim_hdm_to_pdm(base, {c1, c2}, {{half, half, half}}, std::move(missing));
            } catch (const VerificationError&) {
                continue;
            }
        }
    }
    return std::nullopt;
}

namespace {

// Backtracking for homogeneous flavors: row 0 is pinned to the sorted
// value set, remaining cells take values constrained by per-row usage and
// per-row-pair difference usage.  Cells are chosen fail-first (fewest
// feasible values, ties by position) which is what makes the larger hole
// matrices reachable.
struct HomogeneousSearcher {
    Int n, k;
    std::vector<Int> base;           // row 0 (sorted allowed values)
    std::vector<char> allowed;       // value/difference membership over Z_n
    std::vector<Int> try_order;      // value ordering
    std::vector<std::vector<Int>> cur;
    std::vector<std::vector<char>> row_used;   // k x n
    std::vector<std::vector<char>> pair_used;  // (k*k) x n, index r*k+s for r<s
    std::vector<std::pair<Int, Int>> free_cells;  // (col, row), unassigned
    std::uint64_t budget = 0, nodes = 0;
    bool completed = true;

    Int cols() const { return static_cast<Int>(base.size()); }

    bool feasible(Int row, Int col, Int v) const {
        if (row_used[row][v]) return false;
        for (Int r = 0; r < row; ++r) {
            const Int c = cur[r][col];
            if (c < 0) continue;
            const Int d = ((v - c) % n + n) % n;
            if (!allowed[d] || pair_used[r * k + row][d]) return false;
        }
        for (Int r = row + 1; r < k; ++r) {
            const Int c = cur[r][col];
            if (c < 0) continue;
            const Int d = ((c - v) % n + n) % n;
            if (!allowed[d] || pair_used[row * k + r][d]) return false;
        }
        return true;
    }

    bool place(Int row, Int col, Int v) {
        if (!feasible(row, col, v)) return false;
        row_used[row][v] = 1;
        cur[row][col] = v;
        for (Int r = 0; r < k; ++r) {
            if (r == row || cur[r][col] < 0) continue;
            const Int lo = std::min(r, row), hi = std::max(r, row);
            const Int d = ((cur[hi][col] - cur[lo][col]) % n + n) % n;
            pair_used[lo * k + hi][d] = 1;
        }
        return true;
    }

    void unplace(Int row, Int col) {
        const Int v = cur[row][col];
        for (Int r = 0; r < k; ++r) {
            if (r == row || cur[r][col] < 0) continue;
            const Int lo = std::min(r, row), hi = std::max(r, row);
            const Int d = ((cur[hi][col] - cur[lo][col]) % n + n) % n;
            pair_used[lo * k + hi][d] = 0;
        }
        cur[row][col] = -1;
        row_used[row][v] = 0;
    }

    Int candidate_count(Int row, Int col, Int cap) const {
        Int count = 0;
        for (Int v : base) {
            if (feasible(row, col, v) && ++count >= cap) break;
        }
        return count;
    }

    bool dfs(std::size_t remaining) {
        if (remaining == 0) return true;
        if (++nodes > budget) {
            completed = false;
            return false;
        }
        // Fail-first: the open cell with the fewest feasible values.
        std::size_t pick = free_cells.size();
        Int pick_count = n + 1;
        for (std::size_t i = 0; i < free_cells.size(); ++i) {
            const auto [col, row] = free_cells[i];
            if (cur[row][col] >= 0) continue;
            const Int count = candidate_count(row, col, pick_count);
            if (count == 0) return false;
            if (count < pick_count) {
                pick = i;
                pick_count = count;
                if (count == 1) break;
            }
        }
        const auto [col, row] = free_cells[pick];
        for (Int v : try_order) {
            if (!allowed[v]) continue;
            if (!place(row, col, v)) continue;
            if (dfs(remaining - 1)) return true;
            unplace(row, col);
            if (!completed) return false;
        }
        return false;
    }
};

MatrixSearchResult search_homogeneous(MatrixFlavor flavor, Int n, Int k, Int hole_w,
                                      const MatrixSearchOptions& opts) {
    HomogeneousSearcher s;
    s.n = n;
    s.k = k;
    s.budget = opts.budget;
    s.allowed.assign(n, 1);
    if (flavor == MatrixFlavor::homogeneous_hdm) {
        const Int step = n / hole_w;
        for (Int x = 0; x < n; x += step) s.allowed[x] = 0;
    }
    for (Int x = 0; x < n; ++x)
        if (s.allowed[x]) s.base.push_back(x);
    const Int c = s.cols();

    s.try_order.resize(n);
    std::iota(s.try_order.begin(), s.try_order.end(), 0);
    if (opts.seed != 0) {
        std::mt19937 rng(opts.seed);
        std::shuffle(s.try_order.begin(), s.try_order.end(), rng);
    }

    s.cur.assign(k, std::vector<Int>(std::max<Int>(c, 1), -1));
    s.row_used.assign(k, std::vector<char>(n, 0));
    s.pair_used.assign(k * k, std::vector<char>(n, 0));
    for (Int j = 0; j < c; ++j) {
        s.cur[0][j] = s.base[j];
        // Row 0 bookkeeping so that place() sees its values and differences.
    }
    for (Int j = 0; j < c; ++j) s.row_used[0][s.base[j]] = 1;

    std::vector<std::vector<char>> preassigned(k, std::vector<char>(std::max<Int>(c, 1), 0));
    MatrixSearchResult result;
    for (const auto& forced : opts.forced_columns) {
        if (static_cast<Int>(forced.size()) != k)
            throw std::invalid_argument("search_matrix: forced column arity mismatch");
        auto it = std::find(s.base.begin(), s.base.end(), forced[0]);
        if (it == s.base.end())
            throw std::invalid_argument("search_matrix: forced column head not in row 0 values");
        const Int col = static_cast<Int>(it - s.base.begin());
        for (Int row = 1; row < k; ++row) {
            const Int v = ((forced[row] % n) + n) % n;
            if (!s.allowed[v] || !s.place(row, col, v)) {
                result.completed = true;
                result.note = "forced columns conflict";
                return result;
            }
            preassigned[row][col] = 1;
        }
    }
    for (Int j = 0; j < c; ++j)
        for (Int row = 1; row < k; ++row)
            if (!preassigned[row][j]) s.free_cells.emplace_back(j, row);

    const bool hit = s.dfs(s.free_cells.size());
    result.completed = s.completed;
    result.nodes = s.nodes;
    if (hit) {
        DifferenceMatrix mat;
        mat.n = n;
        mat.flavor = flavor;
        mat.hole_w = (flavor == MatrixFlavor::homogeneous_hdm) ? hole_w : 1;
        mat.entries = s.cur;
        auto cert = verify_matrix(mat);
        if (!cert.ok)
            throw std::logic_error("search_matrix: hit failed verification: " + cert.witness);
        result.matrix = std::move(mat);
        result.completed = true;
    }
    return result;
}

// Partial-matrix search over Z_n: row 0 strictly increasing, all rows
// distinct-valued, pairwise differences at most once each.
struct PdmSearcher {
    Int n, c;
    bool require_extendible;
    std::vector<std::vector<Int>> cur;         // 3 x c
    std::vector<std::vector<char>> row_used;   // 3 x n
    std::vector<std::vector<char>> pair_used;  // 3 x n  (pairs 01, 02, 12)
    std::uint64_t budget = 0, nodes = 0;
    bool completed = true;
    std::optional<DifferenceMatrix> hit;

    static Int pair_idx(Int r, Int s) { return r + s - 1; }  // (0,1)->0 (0,2)->1 (1,2)->2

    bool diff_free(Int r, Int s, Int d) const { return !pair_used[pair_idx(r, s)][d]; }

    bool leaf() {
        std::vector<std::vector<Int>> missing(3);
        for (Int r = 0; r < 3; ++r)
            for (Int x = 0; x < n; ++x)
                if (!row_used[r][x]) missing[r].push_back(x);
        if (require_extendible) {
            std::vector<Int> count(n, 0);
            for (const auto& set : missing)
                for (Int a : set)
                    for (Int b : set) {
                        if (a == b) continue;
                        if (++count[((a - b) % n + n) % n] > 3) return false;
                    }
        }
        DifferenceMatrix mat;
        mat.n = n;
        mat.flavor = MatrixFlavor::pdm;
        mat.entries = cur;
        if (require_extendible) mat.missing_sets = missing;
        auto cert = verify_matrix(mat);
        if (!cert.ok) throw std::logic_error("pdm search: hit failed verification: " + cert.witness);
        hit = std::move(mat);
        return true;
    }

    bool dfs(Int col, Int row, Int min0) {
        if (col == c) return leaf();
        if (++nodes > budget) {
            completed = false;
            return false;
        }
        if (row == 0) {
            // Enough larger values must remain to head the later columns.
            for (Int v = min0; v <= n - (c - col); ++v) {
                if (row_used[0][v]) continue;
                row_used[0][v] = 1;
                cur[0][col] = v;
                if (dfs(col, 1, min0)) return true;
                row_used[0][v] = 0;
                if (!completed) return false;
            }
            return false;
        }
        for (Int v = 0; v < n; ++v) {
            if (row_used[row][v]) continue;
            bool ok = true;
            for (Int r = 0; r < row; ++r) {
                const Int d = ((v - cur[r][col]) % n + n) % n;
                if (!diff_free(r, row, d)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            row_used[row][v] = 1;
            for (Int r = 0; r < row; ++r)
                pair_used[pair_idx(r, row)][((v - cur[r][col]) % n + n) % n] = 1;
            cur[row][col] = v;
            const bool done = (row == 2) ? dfs(col + 1, 0, cur[0][col] + 1) : dfs(col, row + 1, min0);
            if (done) return true;
            row_used[row][v] = 0;
            for (Int r = 0; r < row; ++r)
                pair_used[pair_idx(r, row)][((v - cur[r][col]) % n + n) % n] = 0;
            if (!completed) return false;
        }
        return false;
    }
};

MatrixSearchResult search_pdm(Int n, const MatrixSearchOptions& opts) {
    PdmSearcher s;
    s.n = n;
    s.c = n - 3;
    s.require_extendible = opts.require_extendible;
    s.budget = opts.budget;
    s.cur.assign(3, std::vector<Int>(std::max<Int>(s.c, 1), -1));
    s.row_used.assign(3, std::vector<char>(n, 0));
    s.pair_used.assign(3, std::vector<char>(n, 0));
    MatrixSearchResult result;
    if (s.c < 1) {
        result.note = "order too small for a partial matrix";
        result.completed = true;
        return result;
    }
    s.dfs(0, 0, 0);
    result.completed = s.completed;
    result.nodes = s.nodes;
    result.matrix = std::move(s.hit);
    return result;
}

}  // namespace

MatrixSearchResult search_matrix(MatrixFlavor flavor, Int n, Int k, Int hole_w,
                                 const MatrixSearchOptions& opts) {
    switch (flavor) {
        case MatrixFlavor::homogeneous_cdm:
        case MatrixFlavor::cdm:
            return search_homogeneous(MatrixFlavor::homogeneous_cdm, n, k, 0, opts);
        case MatrixFlavor::homogeneous_hdm:
        case MatrixFlavor::hdm: {
            if (hole_w < 1 || n % hole_w != 0)
                throw std::invalid_argument("search_matrix: hole order must divide n");
            return search_homogeneous(MatrixFlavor::homogeneous_hdm, n, k, hole_w, opts);
        }
        case MatrixFlavor::pdm: {
            if (k != 3) throw std::invalid_argument("search_matrix: partial matrices have 3 rows");
            return search_pdm(n, opts);
        }
    }
    throw std::logic_error("search_matrix: unknown flavor");
}

}  // namespace pcdp
