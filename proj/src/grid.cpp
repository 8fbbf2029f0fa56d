#include "gmsfem/grid.hpp"
#include "gmsfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gmsfem {

namespace {

FineGrid build_fine(int nx) {
    FineGrid g;
    g.nx = nx;
    g.h = 1.0 / nx;
    const int nn = nx + 1;
    g.nodes.resize(static_cast<size_t>(nn) * nn);
    g.boundary_node.assign(g.nodes.size(), 0);
    for (int j = 0; j < nn; ++j) {
        for (int i = 0; i < nn; ++i) {
            const int id = j * nn + i;
            g.nodes[id] = {i * g.h, j * g.h};
            if (i == 0 || j == 0 || i == nx || j == nx) g.boundary_node[id] = 1;
        }
    }
    g.elements.resize(static_cast<size_t>(nx) * nx);
    for (int j = 0; j < nx; ++j) {
        for (int i = 0; i < nx; ++i) {
            g.elements[j * nx + i] = {g.node_id(i, j), g.node_id(i + 1, j),
                                      g.node_id(i + 1, j + 1), g.node_id(i, j + 1)};
        }
    }
    return g;
}

CoarseGrid build_coarse(const FineGrid& fine, int m) {
    CoarseGrid c;
    c.m = m;
    c.H = 1.0 / m;
    const int nk = fine.nx / m;   // fine cells per coarse cell side

    c.nodes.resize(static_cast<size_t>(m + 1) * (m + 1));
    for (int cj = 0; cj <= m; ++cj)
        for (int ci = 0; ci <= m; ++ci)
            c.nodes[c.node_id(ci, cj)] = {ci * c.H, cj * c.H};

    c.elements.resize(static_cast<size_t>(m) * m);
    for (int cj = 0; cj < m; ++cj) {
        for (int ci = 0; ci < m; ++ci) {
            auto& cell = c.elements[c.elem_id(ci, cj)];
            cell.reserve(static_cast<size_t>(nk) * nk);
            for (int j = 0; j < nk; ++j)
                for (int i = 0; i < nk; ++i)
                    cell.push_back(fine.elem_id(ci * nk + i, cj * nk + j));
        }
    }

    c.neighborhoods.resize(c.nodes.size());
    for (int cj = 0; cj <= m; ++cj) {
        for (int ci = 0; ci <= m; ++ci) {
            auto& nb = c.neighborhoods[c.node_id(ci, cj)];
            for (int dj = -1; dj <= 0; ++dj) {
                for (int di = -1; di <= 0; ++di) {
                    const int ei = ci + di, ej = cj + dj;
                    if (ei >= 0 && ei < m && ej >= 0 && ej < m)
                        nb.push_back(c.elem_id(ei, ej));
                }
            }
            std::sort(nb.begin(), nb.end());
        }
    }

    // Vertical edges (normal +-x), then horizontal (normal +-y); each edge is
    // the full coarse face, tiled by nk fine segments bottom-to-top or
    // left-to-right.
    for (int ci = 0; ci <= m; ++ci) {
        for (int cj = 0; cj < m; ++cj) {
            CoarseEdge e;
            e.horizontal = false;
            const bool left_exists = ci > 0, right_exists = ci < m;
            if (left_exists) {
                e.k_minus = c.elem_id(ci - 1, cj);
                e.k_plus = right_exists ? c.elem_id(ci, cj) : -1;
                e.normal = {1.0, 0.0};
            } else {   // domain left boundary: inside element on the right
                e.k_minus = c.elem_id(ci, cj);
                e.k_plus = -1;
                e.normal = {-1.0, 0.0};
            }
            const int fi = ci * nk;   // fine column of the edge line
            for (int s = 0; s < nk; ++s) {
                const int fj = cj * nk + s;
                CoarseEdge::Segment seg;
                seg.node_a = fine.node_id(fi, fj);
                seg.node_b = fine.node_id(fi, fj + 1);
                const int el_left = (fi > 0) ? fine.elem_id(fi - 1, fj) : -1;
                const int el_right = (fi < fine.nx) ? fine.elem_id(fi, fj) : -1;
                if (e.normal[0] > 0) { seg.elem_minus = el_left; seg.elem_plus = el_right; }
                else { seg.elem_minus = el_right; seg.elem_plus = el_left; }
                if (e.on_boundary()) seg.elem_plus = -1;
                e.segments.push_back(seg);
            }
            c.edges.push_back(std::move(e));
        }
    }
    for (int cj = 0; cj <= m; ++cj) {
        for (int ci = 0; ci < m; ++ci) {
            CoarseEdge e;
            e.horizontal = true;
            const bool below_exists = cj > 0, above_exists = cj < m;
            if (below_exists) {
                e.k_minus = c.elem_id(ci, cj - 1);
                e.k_plus = above_exists ? c.elem_id(ci, cj) : -1;
                e.normal = {0.0, 1.0};
            } else {
                e.k_minus = c.elem_id(ci, cj);
                e.k_plus = -1;
                e.normal = {0.0, -1.0};
            }
            const int fj = cj * nk;
            for (int s = 0; s < nk; ++s) {
                const int fi = ci * nk + s;
                CoarseEdge::Segment seg;
                seg.node_a = fine.node_id(fi, fj);
                seg.node_b = fine.node_id(fi + 1, fj);
                const int el_below = (fj > 0) ? fine.elem_id(fi, fj - 1) : -1;
                const int el_above = (fj < fine.nx) ? fine.elem_id(fi, fj) : -1;
                if (e.normal[1] > 0) { seg.elem_minus = el_below; seg.elem_plus = el_above; }
                else { seg.elem_minus = el_above; seg.elem_plus = el_below; }
                if (e.on_boundary()) seg.elem_plus = -1;
                e.segments.push_back(seg);
            }
            c.edges.push_back(std::move(e));
        }
    }
    return c;
}

Subdomain flatten(const FineGrid& fine, const std::vector<int>& elems) {
    Subdomain s;
    s.elements = elems;
    std::sort(s.elements.begin(), s.elements.end());

    std::set<int> node_set;
    for (int e : s.elements)
        for (int n : fine.elements[e]) node_set.insert(n);
    s.nodes.assign(node_set.begin(), node_set.end());

    s.local_of_global.assign(fine.num_nodes(), -1);
    for (int l = 0; l < s.num_nodes(); ++l) s.local_of_global[s.nodes[l]] = l;

    // A node is interior to tau iff all 4 surrounding fine cells belong to tau.
    std::vector<char> in_tau(fine.num_elements(), 0);
    for (int e : s.elements) in_tau[e] = 1;
    const int nx = fine.nx;
    s.on_subdomain_boundary.assign(s.nodes.size(), 0);
    s.on_domain_boundary.assign(s.nodes.size(), 0);
    for (int l = 0; l < s.num_nodes(); ++l) {
        const int g = s.nodes[l];
        const int i = g % (nx + 1), j = g / (nx + 1);
        int surrounded = 1;
        for (int dj = -1; dj <= 0 && surrounded; ++dj) {
            for (int di = -1; di <= 0; ++di) {
                const int ei = i + di, ej = j + dj;
                if (ei < 0 || ei >= nx || ej < 0 || ej >= nx || !in_tau[fine.elem_id(ei, ej)]) {
                    surrounded = 0;
                    break;
                }
            }
        }
        s.on_subdomain_boundary[l] = surrounded ? 0 : 1;
        s.on_domain_boundary[l] = fine.boundary_node[g];
    }
    return s;
}

} // namespace

std::pair<FineGrid, CoarseGrid> build_grids(int nx, int m) {
    if (nx <= 0 || m <= 0)
        throw InvalidConfigError("build_grids: nx and m must be positive");
    if (nx % m != 0)
        throw InvalidConfigError("build_grids: coarse cells per side m=" + std::to_string(m) +
                                 " does not divide fine cells nx=" + std::to_string(nx));
    if (nx < 2 * m)
        throw InvalidConfigError("build_grids: need nx >= 2m (got nx=" + std::to_string(nx) +
                                 ", m=" + std::to_string(m) + ")");
    FineGrid fine = build_fine(nx);
    CoarseGrid coarse = build_coarse(fine, m);
    return {std::move(fine), std::move(coarse)};
}

const std::vector<int>& neighborhood(const CoarseGrid& coarse, int coarse_node) {
    return coarse.neighborhoods.at(coarse_node);
}

Subdomain subdomain_of_element(const FineGrid& fine, const CoarseGrid& coarse, int coarse_elem) {
    return flatten(fine, coarse.elements.at(coarse_elem));
}

Subdomain subdomain_of_neighborhood(const FineGrid& fine, const CoarseGrid& coarse, int coarse_node) {
    std::vector<int> elems;
    for (int k : coarse.neighborhoods.at(coarse_node))
        elems.insert(elems.end(), coarse.elements[k].begin(), coarse.elements[k].end());
    return flatten(fine, elems);
}

} // namespace gmsfem
