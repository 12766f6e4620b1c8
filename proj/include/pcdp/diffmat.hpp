#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcdp/certificate.hpp"
#include "pcdp/modring.hpp"

namespace pcdp {

enum class MatrixFlavor { cdm, homogeneous_cdm, hdm, homogeneous_hdm, pdm };

std::string flavor_name(MatrixFlavor f);
MatrixFlavor flavor_from_name(const std::string& name);

/// A k x c matrix over Z_n.  Flavor selects the verified contract:
///   cdm              c = n, row-pair differences enumerate Z_n once each
///   homogeneous_cdm  cdm whose rows are permutations of Z_n
///   hdm              c = n - w, differences enumerate Z_n minus the hole,
///                    the unique subgroup of order w (multiples of n/w)
///   homogeneous_hdm  hdm whose rows are permutations of Z_n minus the hole
///   pdm              3 x (n-3), distinct entries per row, differences hit
///                    each element at most once; extendible when the three
///                    missing sets have difference multiplicity <= 3
struct DifferenceMatrix {
    Int n = 0;
    MatrixFlavor flavor = MatrixFlavor::cdm;
    std::vector<std::vector<Int>> entries;
    Int hole_w = 1;                               // hdm flavors only
    std::vector<std::vector<Int>> missing_sets;   // pdm only; empty = undeclared

    Int rows() const { return static_cast<Int>(entries.size()); }
    Int cols() const { return entries.empty() ? 0 : static_cast<Int>(entries.front().size()); }

    /// Hole elements (multiples of n / hole_w), for hdm flavors.
    std::vector<Int> hole() const;
    std::vector<Int> column(Int j) const;
};

Certificate verify_matrix(const DifferenceMatrix& mat);

/// Multiplication table of Z_p: a normalized (p, p, 1) difference matrix.
DifferenceMatrix mult_table_cdm(Int p);

/// Rows x, 2x, ..., kx of the multiplication table: homogeneous (p, k, 1).
DifferenceMatrix homogeneous_prime_cdm(Int p, Int k);

/// The 3 x 1 all-zero matrix over Z_1 (identity for the product).
DifferenceMatrix trivial_cdm(Int k);

/// A homogeneous hdm with an all-covering hole and no columns.
DifferenceMatrix zero_column_hdm(Int n, Int k);

/// Mixed-radix product of homogeneous matrices: (n1, k, 1) x (n2, k, 1)
/// gives a verified homogeneous (n1*n2, k, 1).
DifferenceMatrix product_cdm(const DifferenceMatrix& a, const DifferenceMatrix& b);

struct MatrixSearchResult {
    std::optional<DifferenceMatrix> matrix;
    bool completed = false;   // the whole space was exhausted within budget
    std::uint64_t nodes = 0;
    std::string note;
};

inline constexpr std::uint64_t kDefaultMatrixBudget = 200'000'000;

/// Homogeneous (n, k, 1) matrix via prime multiplication tables and the
/// product when every prime factor exceeds k; otherwise (k = 3, odd n)
/// falls back to backtracking search.  Exhaustion is a result, not an
/// error; inadmissible (n, k) throws.
MatrixSearchResult homogeneous_cdm(Int n, Int k, std::uint64_t budget = kDefaultMatrixBudget);

/// Inflation: (n, k, 1; w) hole matrix times an (m, k, 1) matrix gives a
/// verified (mn, k, 1; mw) hole matrix via the hole-aligned lift
/// entry = hdm + n * cdm.  Throws VerificationError if the result fails.
DifferenceMatrix inflate_hdm(const DifferenceMatrix& hdm, const DifferenceMatrix& cdm);

/// Filling in the hole: scales the order-w partial matrix by m/w into the
/// hole of a homogeneous (m, 3, 1; w) matrix, giving a partial matrix of
/// order m with scaled missing sets.
DifferenceMatrix fill_hole(const DifferenceMatrix& hdm, const DifferenceMatrix& pdm);

/// Two-template families over Z_m x Z_2 packed into Z_{2m}; both scan the
/// admissible multiplier c in increasing order until the verifier passes.
DifferenceMatrix dinitz_stinson_pdm_3mod4(Int m);
DifferenceMatrix dinitz_stinson_pdm_1mod4(Int m);

/// Removes the named columns, appends the given ones and declares the
/// missing sets; the result must verify as an extendible partial matrix.
DifferenceMatrix trim_hdm_to_pdm(const DifferenceMatrix& hdm,
                                 const std::vector<std::vector<Int>>& remove_cols,
                                 const std::vector<std::vector<Int>>& add_cols,
                                 std::vector<std::vector<Int>> missing);

/// Turns a homogeneous (m, 3, 1; 2) matrix into an extendible partial
/// matrix of order m by scanning column pairs to remove (adding the
/// constant m/2 column).  Generalizes the fixed recipes to matrices that
/// need not contain specific columns.
std::optional<DifferenceMatrix> pdm_from_hdm2_scan(const DifferenceMatrix& hdm);

struct MatrixSearchOptions {
    std::uint64_t budget = kDefaultMatrixBudget;
    std::uint32_t seed = 0;  // 0 keeps natural value order
    std::vector<std::vector<Int>> forced_columns;
    bool require_extendible = true;  // pdm flavor only
};

/// Deterministic backtracking search for homogeneous cdm/hdm or extendible
/// pdm flavors.  Any hit is verified before being returned.
MatrixSearchResult search_matrix(MatrixFlavor flavor, Int n, Int k, Int hole_w,
                                 const MatrixSearchOptions& opts = {});

}  // namespace pcdp
