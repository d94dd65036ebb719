#pragma once

#include <optional>
#include <vector>

#include "cgl/graph.hpp"

namespace cgl {

// Vertex-by-edge 0/1 matrix; a loop contributes 2 in its column.
Eigen::MatrixXi unsigned_incidence(const Graph& g);

struct BipartiteInfo {
    int omega0 = 0;                       // number of bipartite components
    int component_count = 0;
    std::vector<int> component;           // component label per vertex
    std::vector<int> color;               // 0/1 per vertex; meaningful on bipartite components
    std::vector<char> component_bipartite;
};

BipartiteInfo bipartite_components(const Graph& g);

// rank(B) by exact rational elimination.
int incidence_rank_exact(const Graph& g);

/// Conformal moduli space of a loopless graph, identified with ker(B) in
/// log-weight space.
struct ModuliDescription {
    int dimension = 0;
    int omega0 = 0;
    int incidence_rank = 0;
    // m x dimension; columns orthonormal, obtained from the exact RREF null
    // space by Gram-Schmidt in pivot order, each signed so its first nonzero
    // entry is positive.
    Matrix kernel_basis;
    // The same null space before orthonormalization (one free column each).
    Matrix rational_basis;
};

ModuliDescription moduli_description(const Graph& g);

// w~(e) = w(e) exp(u(i) + u(j)).
WeightFunction apply_conformal_factor(const Graph& g, const WeightFunction& w, const ConformalFactor& u);

struct CanonicalRepresentative {
    WeightFunction weight;   // product of incident weights is 1 at every vertex
    ConformalFactor factor;  // minimum-norm u with apply_conformal_factor(w, u) == weight
};

CanonicalRepresentative canonical_representative(const Graph& g, const WeightFunction& w);

// max over vertices of |sum_{e ~ v} ln w(e)|.
double vertex_log_residual(const Graph& g, const WeightFunction& w);

// A factor u with apply_conformal_factor(w1, u) == w2 (relative per-edge
// tolerance `tol`), or nullopt when the weights lie in different classes.
std::optional<ConformalFactor> same_conformal_class(const Graph& g, const WeightFunction& w1,
                                                    const WeightFunction& w2, double tol = 1e-9);

// Coordinates of the projection of ln w onto ker(B) in the kernel basis.
Vector moduli_coordinates(const ModuliDescription& desc, const WeightFunction& w);
Vector moduli_coordinates(const Graph& g, const WeightFunction& w);

}  // namespace cgl
