/**
 * Cellular homology over Q for the model spaces that appear in the
 * computation of rapid-decay homology.
 *
 * Complexes are assembled from a few primitive CW complexes (circle,
 * interval, wedges, a cubical torus grid) with two operations: the product
 * complex and the relative complex obtained by deleting a subcomplex. Rapid
 * decay groups H(X, Z) are reduced homology of X/Z, which is what the
 * relative complex computes.
 */
#ifndef RDPER_STOKES_TOPOLOGY_HPP
#define RDPER_STOKES_TOPOLOGY_HPP

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rdper/dimension_table.hpp"
#include "rdper/sparse_matrix.hpp"

namespace rdper {

/**
 * A chain complex of finite-dimensional Q-vector spaces with chosen bases.
 *
 * boundary(k) maps degree k to degree k-1 and has shape dims[k-1] x dims[k];
 * boundary(0) is the empty 0 x dims[0] matrix. The constructor checks that
 * consecutive boundaries compose to zero and throws BoundaryNotNilpotent
 * otherwise.
 */
class ChainComplexQ
{
    public:
        ChainComplexQ() = default;
        ChainComplexQ(std::vector<int> dims, std::vector<SparseMatrix> boundaries);

        int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
        int dim(int k) const { return k >= 0 && k < static_cast<int>(dims_.size()) ? dims_[k] : 0; }
        const std::vector<int>& dims() const { return dims_; }
        const SparseMatrix& boundary(int k) const { return boundaries_.at(k); }

        /// Alternating sum of cell counts.
        long euler_characteristic() const;

    private:
        std::vector<int> dims_;
        std::vector<SparseMatrix> boundaries_;
};

/// dim H_k = dims[k] - rank d_k - rank d_{k+1}.
DimensionTable homology_dims(const ChainComplexQ& complex);

/// sum (-1)^k dim H_k.
long homology_euler_characteristic(const DimensionTable& homology);

/// sigma x tau with d(sigma x tau) = d(sigma) x tau + (-1)^p sigma x d(tau).
ChainComplexQ product(const ChainComplexQ& a, const ChainComplexQ& b);

/// Per-degree membership masks selecting a set of cells.
using CellMask = std::vector<std::vector<bool> >;

CellMask empty_mask(const ChainComplexQ& complex);

/// Mask of the subcomplex A x Y + X x B inside X x Y, for A given by mask_a and B by mask_b.
CellMask product_mask(const ChainComplexQ& x, const CellMask& mask_a, const ChainComplexQ& y,
                      const CellMask& mask_b);

/// The cells selected by `mask` as a complex of their own; the mask must be closed under the boundary.
ChainComplexQ subcomplex(const ChainComplexQ& complex, const CellMask& mask);

/// The relative complex C(X)/C(Z) for the subcomplex Z selected by `sub`.
ChainComplexQ relative(const ChainComplexQ& complex, const CellMask& sub);

namespace cell_model {

struct WedgeOfCircles { int m; };
struct Sphere2 {};
struct Torus2 {};
/// (S^1 x wedge of m circles) / (S^1 x basepoint).
struct WedgeBundleOverCircle { int m; };
/// (Delta intersected with the Stokes bisectors) / (boundary of Delta union D).
struct RadialSheetQuotient { int m1; int m2; int n_sectors; };

}   // namespace cell_model

using CellModelSpec = std::variant<cell_model::WedgeOfCircles, cell_model::Sphere2, cell_model::Torus2,
                                   cell_model::WedgeBundleOverCircle, cell_model::RadialSheetQuotient>;

std::string describe(const CellModelSpec& spec);

/**
 * True for quotient models whose complex computes reduced homology.
 */
bool is_quotient_model(const CellModelSpec& spec);

/**
 * Build the complex of a model space.
 *
 * RadialSheetQuotient(m1, m2, n): the torus of directions is cut into an
 * n x n grid of bisectors. K is the subcomplex of closed grid cells lying in
 * the open Stokes set (checked exactly on the linear phase), and the space is
 * modelled as (K x I^2) / (K x dI^2), the radii (r1, r2) running over
 * I^2 = [0,1]^2 and dI^2 covering the part of the polydisc boundary and of D
 * met by the sheets. Throws SpecTooCoarse if n < 4 (m1 + m2) and
 * std::invalid_argument for pole orders or wedge sizes below 1.
 */
ChainComplexQ build_complex(const CellModelSpec& spec);

/// {"dims": [...], "boundaries": [{"degree", "rows", "cols", "triplets": [[r, c, v], ...]}]}
nlohmann::json to_json(const ChainComplexQ& complex);

}   // namespace rdper

#endif
