#include "gmsfem/fem.hpp"
#include "gmsfem/errors.hpp"

#include <cmath>
#include <sstream>

namespace gmsfem {

namespace {

// Reference Q1 matrices on an h x h square, nodes counterclockwise.
// The stiffness is h-independent; the mass scales with the cell area.
constexpr double kStiff[4][4] = {
    {4.0 / 6, -1.0 / 6, -2.0 / 6, -1.0 / 6},
    {-1.0 / 6, 4.0 / 6, -1.0 / 6, -2.0 / 6},
    {-2.0 / 6, -1.0 / 6, 4.0 / 6, -1.0 / 6},
    {-1.0 / 6, -2.0 / 6, -1.0 / 6, 4.0 / 6},
};
constexpr double kMass[4][4] = {
    {4.0 / 36, 2.0 / 36, 1.0 / 36, 2.0 / 36},
    {2.0 / 36, 4.0 / 36, 2.0 / 36, 1.0 / 36},
    {1.0 / 36, 2.0 / 36, 4.0 / 36, 2.0 / 36},
    {2.0 / 36, 1.0 / 36, 2.0 / 36, 4.0 / 36},
};

template <typename NodeMap>
SpMat assemble(const FineGrid& fine, const Eigen::VectorXd& per_element,
               const std::vector<int>& elements, int n_dofs, NodeMap map,
               const double (*ref)[4], double scale_area, const char* what) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(elements.size() * 16);
    const double area = fine.h * fine.h;
    for (int e : elements) {
        const double c = per_element[e];
        if (!(c > 0.0) || !std::isfinite(c))
            throw DomainError(std::string(what) + ": nonpositive or non-finite value " +
                              std::to_string(c) + " on element " + std::to_string(e));
        const double factor = scale_area > 0 ? c * area : c;
        const auto& conn = fine.elements[e];
        int loc[4];
        for (int a = 0; a < 4; ++a) loc[a] = map(conn[a]);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                trips.emplace_back(loc[a], loc[b], factor * ref[a][b]);
    }
    SpMat A(n_dofs, n_dofs);
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

std::vector<int> all_elements(const FineGrid& fine) {
    std::vector<int> e(fine.num_elements());
    for (int i = 0; i < fine.num_elements(); ++i) e[i] = i;
    return e;
}

} // namespace

SpMat assemble_stiffness(const FineGrid& fine, const Eigen::VectorXd& coef) {
    return assemble(fine, coef, all_elements(fine), fine.num_nodes(),
                    [](int g) { return g; }, kStiff, 0.0, "assemble_stiffness");
}

SpMat assemble_stiffness(const FineGrid& fine, const Eigen::VectorXd& coef, const Subdomain& tau) {
    return assemble(fine, coef, tau.elements, tau.num_nodes(),
                    [&tau](int g) { return tau.local(g); }, kStiff, 0.0, "assemble_stiffness");
}

SpMat assemble_weighted_mass(const FineGrid& fine, const Eigen::VectorXd& weight) {
    return assemble(fine, weight, all_elements(fine), fine.num_nodes(),
                    [](int g) { return g; }, kMass, 1.0, "assemble_weighted_mass");
}

SpMat assemble_weighted_mass(const FineGrid& fine, const Eigen::VectorXd& weight,
                             const Subdomain& tau) {
    return assemble(fine, weight, tau.elements, tau.num_nodes(),
                    [&tau](int g) { return tau.local(g); }, kMass, 1.0, "assemble_weighted_mass");
}

Eigen::VectorXd assemble_load(const FineGrid& fine, double f) {
    if (!std::isfinite(f)) throw DomainError("assemble_load: non-finite source");
    Eigen::VectorXd F = Eigen::VectorXd::Zero(fine.num_nodes());
    const double contrib = f * fine.h * fine.h / 4.0;
    for (const auto& conn : fine.elements)
        for (int n : conn) F[n] += contrib;
    return F;
}

void apply_dirichlet(SpMat& A, Eigen::VectorXd& F, const std::vector<int>& nodes,
                     const Eigen::VectorXd& values) {
    if (static_cast<Eigen::Index>(nodes.size()) != values.size())
        throw DomainError("apply_dirichlet: node/value count mismatch");
    std::vector<char> fixed(A.rows(), 0);
    Eigen::VectorXd val = Eigen::VectorXd::Zero(A.rows());
    for (size_t k = 0; k < nodes.size(); ++k) {
        fixed[nodes[k]] = 1;
        val[nodes[k]] = values[k];
    }
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(A.nonZeros());
    for (int col = 0; col < A.outerSize(); ++col) {
        for (SpMat::InnerIterator it(A, col); it; ++it) {
            const int r = static_cast<int>(it.row()), c = col;
            if (fixed[r]) continue;
            if (fixed[c]) {
                F[r] -= it.value() * val[c];
                continue;
            }
            trips.emplace_back(r, c, it.value());
        }
    }
    for (size_t k = 0; k < nodes.size(); ++k) {
        trips.emplace_back(nodes[k], nodes[k], 1.0);
        F[nodes[k]] = values[k];
    }
    SpMat out(A.rows(), A.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    A.swap(out);
}

Eigen::VectorXd solve_spd(const SpMat& A, const Eigen::VectorXd& F) {
    Eigen::SimplicialLDLT<SpMat> solver(A);
    if (solver.info() != Eigen::Success)
        throw SolverError("solve_spd: factorization failed (matrix not SPD?)");
    Eigen::VectorXd u = solver.solve(F);
    const double fnorm = F.norm();
    if (fnorm == 0.0) return Eigen::VectorXd::Zero(F.size());
    double rel = (F - A * u).norm() / fnorm;
    for (int it = 0; it < 2 && rel > 1e-12; ++it) {
        u += solver.solve(F - A * u);
        rel = (F - A * u).norm() / fnorm;
    }
    if (!(rel <= 1e-10)) {
        std::ostringstream msg;
        msg << "solve_spd: residual contract violated, relative residual " << rel;
        throw SolverError(msg.str());
    }
    return u;
}

HarmonicExtender::HarmonicExtender(const FineGrid& fine, const Subdomain& tau,
                                   const Eigen::VectorXd& coef)
    : n_local_(tau.num_nodes()) {
    for (int l = 0; l < tau.num_nodes(); ++l)
        (tau.on_subdomain_boundary[l] ? boundary_ : interior_).push_back(l);

    SpMat A = assemble_stiffness(fine, coef, tau);

    std::vector<int> pos(n_local_, -1);   // local -> interior slot or boundary slot
    for (size_t k = 0; k < interior_.size(); ++k) pos[interior_[k]] = static_cast<int>(k);
    std::vector<int> bpos(n_local_, -1);
    for (size_t k = 0; k < boundary_.size(); ++k) bpos[boundary_[k]] = static_cast<int>(k);

    std::vector<Eigen::Triplet<double>> aii, aib;
    for (int col = 0; col < A.outerSize(); ++col) {
        for (SpMat::InnerIterator it(A, col); it; ++it) {
            const int r = static_cast<int>(it.row());
            if (pos[r] < 0) continue;   // boundary row
            if (pos[col] >= 0)
                aii.emplace_back(pos[r], pos[col], it.value());
            else
                aib.emplace_back(pos[r], bpos[col], it.value());
        }
    }
    SpMat Aii(interior_.size(), interior_.size());
    Aii.setFromTriplets(aii.begin(), aii.end());
    coupling_.resize(interior_.size(), boundary_.size());
    coupling_.setFromTriplets(aib.begin(), aib.end());
    interior_solver_.compute(Aii);
    if (interior_solver_.info() != Eigen::Success)
        throw SolverError("HarmonicExtender: interior factorization failed");
}

Eigen::VectorXd HarmonicExtender::extend(const Eigen::VectorXd& boundary_values) const {
    if (boundary_values.size() != n_local_)
        throw DomainError("HarmonicExtender::extend: expected one value per local node");
    Eigen::VectorXd g(boundary_.size());
    for (size_t k = 0; k < boundary_.size(); ++k) g[k] = boundary_values[boundary_[k]];
    Eigen::VectorXd out = boundary_values;
    if (!interior_.empty()) {
        Eigen::VectorXd rhs = -(coupling_ * g);
        Eigen::VectorXd ui = interior_solver_.solve(rhs);
        for (size_t k = 0; k < interior_.size(); ++k) out[interior_[k]] = ui[k];
    }
    return out;
}

Eigen::VectorXd harmonic_extension(const FineGrid& fine, const Subdomain& tau,
                                   const Eigen::VectorXd& coef,
                                   const Eigen::VectorXd& boundary_values) {
    return HarmonicExtender(fine, tau, coef).extend(boundary_values);
}

} // namespace gmsfem
