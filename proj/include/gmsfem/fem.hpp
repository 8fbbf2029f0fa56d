#pragma once

#include "gmsfem/grid.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <Eigen/SparseCholesky>

#include <optional>
#include <vector>

namespace gmsfem {

using SpMat = Eigen::SparseMatrix<double>;

/// Q1 stiffness with a piecewise-constant coefficient (one value per fine
/// element, midpoint rule; exact for this coefficient class). Assembled over
/// the whole grid, rows/cols indexed by global node ids.
SpMat assemble_stiffness(const FineGrid& fine, const Eigen::VectorXd& coef_per_element);

/// Same, restricted to a subdomain: integrates over tau's elements only,
/// rows/cols indexed by the subdomain's local node order.
SpMat assemble_stiffness(const FineGrid& fine, const Eigen::VectorXd& coef_per_element,
                         const Subdomain& tau);

/// Q1 mass with a piecewise-constant weight per fine element.
SpMat assemble_weighted_mass(const FineGrid& fine, const Eigen::VectorXd& weight_per_element);
SpMat assemble_weighted_mass(const FineGrid& fine, const Eigen::VectorXd& weight_per_element,
                             const Subdomain& tau);

/// Load vector for a constant source; entries sum to f * |D|.
Eigen::VectorXd assemble_load(const FineGrid& fine, double f);

/// Symmetric elimination of Dirichlet dofs: constrained rows/columns are
/// replaced by the identity, their couplings moved to the right-hand side.
void apply_dirichlet(SpMat& A, Eigen::VectorXd& F, const std::vector<int>& nodes,
                     const Eigen::VectorXd& values);

/// Direct SPD solve with a residual contract: ||F - A u|| <= 1e-10 ||F||.
/// Throws SolverError with a diagnostic on factorization failure or when the
/// contract cannot be met.
Eigen::VectorXd solve_spd(const SpMat& A, const Eigen::VectorXd& F);

/// Local solver for boundary-value extensions on a subdomain: factors the
/// interior block once, then extends any boundary data. The discrete maximum
/// principle holds on these meshes, so extensions stay within the data bounds.
class HarmonicExtender {
public:
    HarmonicExtender(const FineGrid& fine, const Subdomain& tau,
                     const Eigen::VectorXd& coef_per_element);

    /// boundary_values is indexed by tau-local node; only entries at
    /// subdomain-boundary nodes are read. Returns the full local vector.
    Eigen::VectorXd extend(const Eigen::VectorXd& boundary_values) const;

private:
    std::vector<int> interior_;            // tau-local indices of interior nodes
    std::vector<int> boundary_;            // tau-local indices of boundary nodes
    SpMat coupling_;                       // interior x boundary block
    Eigen::SimplicialLDLT<SpMat> interior_solver_;
    int n_local_ = 0;
};

/// One-shot harmonic extension of boundary data into a subdomain.
Eigen::VectorXd harmonic_extension(const FineGrid& fine, const Subdomain& tau,
                                   const Eigen::VectorXd& coef_per_element,
                                   const Eigen::VectorXd& boundary_values);

} // namespace gmsfem
