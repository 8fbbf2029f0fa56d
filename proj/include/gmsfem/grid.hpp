#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace gmsfem {

/// Uniform Cartesian Q1 mesh of the unit square with nx cells per side.
/// Nodes are numbered row-major bottom-to-top: node(i,j) = j*(nx+1)+i.
/// Elements likewise: elem(i,j) = j*nx+i, corner nodes stored counterclockwise.
struct FineGrid {
    int nx = 0;
    double h = 0.0;
    std::vector<std::array<double, 2>> nodes;        // (x, y) per node
    std::vector<std::array<int, 4>> elements;        // CCW node ids per cell
    std::vector<char> boundary_node;                 // 1 if node lies on the domain boundary

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_elements() const { return static_cast<int>(elements.size()); }
    int node_id(int i, int j) const { return j * (nx + 1) + i; }
    int elem_id(int i, int j) const { return j * nx + i; }
};

/// One coarse skeleton edge: the shared face between two coarse elements, or a
/// boundary face. Composed of nx/m fine segments listed in ascending order.
struct CoarseEdge {
    bool horizontal = false;      // true: edge parallel to x, normal = +-y
    int k_minus = -1;             // coarse element on the negative-normal side
    int k_plus = -1;              // coarse element on the positive side, -1 on the boundary
    std::array<double, 2> normal{0.0, 0.0};   // unit normal, from k_minus outward
    struct Segment {
        int node_a = 0, node_b = 0;   // fine node ids, ordered along the edge
        int elem_minus = -1;          // adjacent fine element inside k_minus
        int elem_plus = -1;           // adjacent fine element inside k_plus, -1 on boundary
    };
    std::vector<Segment> segments;

    bool on_boundary() const { return k_plus < 0; }
};

/// Coarse partition into m x m square elements aligned with the fine grid.
/// Coarse node i owns the neighborhood omega_i = union of coarse elements
/// whose closure contains x_i.
struct CoarseGrid {
    int m = 0;
    double H = 0.0;
    std::vector<std::array<double, 2>> nodes;             // coarse vertex positions
    std::vector<std::vector<int>> elements;               // fine element ids per coarse element
    std::vector<std::vector<int>> neighborhoods;          // coarse element ids per coarse node
    std::vector<CoarseEdge> edges;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_elements() const { return static_cast<int>(elements.size()); }
    int node_id(int ci, int cj) const { return cj * (m + 1) + ci; }
    int elem_id(int ci, int cj) const { return cj * m + ci; }
};

/// A coarse element K or a coarse neighborhood omega_i, flattened to fine
/// indices. Node order is ascending (lexicographic in (y, x)), matching global
/// node ids; the same fine node always maps to the same local slot.
struct Subdomain {
    std::vector<int> nodes;               // global fine node ids, sorted ascending
    std::vector<int> elements;            // global fine element ids, sorted ascending
    std::vector<char> on_subdomain_boundary;   // per local node: lies on the geometric boundary of tau
    std::vector<char> on_domain_boundary;      // per local node: lies on the domain boundary
    std::vector<int> local_of_global;          // global node id -> local index, -1 outside

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int local(int global_node) const { return local_of_global[global_node]; }
};

/// Build matched fine and coarse grids. Requires m | nx and nx >= 2m.
std::pair<FineGrid, CoarseGrid> build_grids(int nx, int m);

/// Coarse elements whose closure contains coarse node i.
const std::vector<int>& neighborhood(const CoarseGrid& coarse, int coarse_node);

/// Flatten a coarse element to fine indices.
Subdomain subdomain_of_element(const FineGrid& fine, const CoarseGrid& coarse, int coarse_elem);

/// Flatten a coarse neighborhood to fine indices.
Subdomain subdomain_of_neighborhood(const FineGrid& fine, const CoarseGrid& coarse, int coarse_node);

} // namespace gmsfem
