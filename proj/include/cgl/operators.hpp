#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgl/graph.hpp"

namespace cgl {

struct Orientation {
    int tail = 0;  // e^-
    int head = 0;  // e^+
};

// Default orientation of an edge: head is the larger vertex index.
Orientation default_orientation(const Edge& e);

/// Edge subset F with an optional orientation per member.
class EdgeSubset {
public:
    EdgeSubset() = default;
    explicit EdgeSubset(int edge_count) : member_(static_cast<std::size_t>(edge_count), 0), orientation_(static_cast<std::size_t>(edge_count)) {}

    static EdgeSubset none(int edge_count) { return EdgeSubset(edge_count); }
    static EdgeSubset all(const Graph& g);
    static EdgeSubset of(const Graph& g, const std::vector<int>& edges);

    // Members without an explicit orientation get the default one.
    EdgeSubset& orient_defaults(const Graph& g);
    EdgeSubset& set_orientation(const Graph& g, int e, Orientation o);

    int edge_count() const { return static_cast<int>(member_.size()); }
    bool contains(int e) const { return member_.at(static_cast<std::size_t>(e)) != 0; }
    void insert(int e) { member_.at(static_cast<std::size_t>(e)) = 1; }
    void erase(int e) { member_.at(static_cast<std::size_t>(e)) = 0; }
    const std::optional<Orientation>& orientation(int e) const { return orientation_.at(static_cast<std::size_t>(e)); }
    std::vector<int> members() const;

    // Symmetric difference with `other` (orientations of `other` win).
    EdgeSubset symmetric_difference(const EdgeSubset& other) const;

private:
    std::vector<char> member_;
    std::vector<std::optional<Orientation>> orientation_;
};

enum class OperatorFamily {
    adjacency_plain,
    adjacency_generalized,
    vertex_laplacian,
    random_walk,
    ps_edge,
    signed_incidence,
    edge_laplacian,
    edge_laplacian_omitted,
    lambda_minor,
    schrodinger,
    skew_adjacency,
};

std::string family_name(OperatorFamily f);
OperatorFamily family_from_name(const std::string& name);

struct OperatorSpec {
    OperatorFamily family = OperatorFamily::adjacency_generalized;
    EdgeSubset F;
    std::vector<int> J;  // omitted edge indices (0-based)
    int i1 = 0;          // omitted row of Delta_J, 0-based within the kept edges
    int i2 = 0;          // omitted column of Delta_J
    Vector potential;    // per vertex, schrodinger only
    bool strict = false; // ps_edge: error instead of 0 when (e_i^+, e_j^+) is not an edge
};

// [A_w]_{ij} = w(i,j); a loop puts its weight on the diagonal.
Matrix adjacency(const Graph& g, const WeightFunction& w);
Matrix generalized_adjacency(const Graph& g, const WeightFunction& w, const EdgeSubset& F);
// Oriented adjacency: +w at (tail, head) and -w at (head, tail) for e in F,
// symmetric w elsewhere. Skew-symmetric when F = E.
Matrix skew_adjacency(const Graph& g, const WeightFunction& w, const EdgeSubset& F);
Matrix degree_matrix(const Graph& g, const WeightFunction& w);
Matrix vertex_laplacian(const Graph& g, const WeightFunction& w);
Matrix random_walk_matrix(const Graph& g, const WeightFunction& w);

// |E| x |E| matrix with entry w(e_i^+, e_j^+) when e_i, e_j in F and e_j^- = e_i^+.
// Every edge is oriented; members of F use their own orientation and the
// remaining edges the default one.
Matrix ps_edge_matrix(const Graph& g, const WeightFunction& w, const EdgeSubset& F, bool strict = false);

// n x m matrix M(F,w): +-sqrt(w) at head/tail for e in F, +sqrt(w) at both
// endpoints otherwise.
Matrix signed_incidence(const Graph& g, const WeightFunction& w, const EdgeSubset& F);
Matrix edge_laplacian(const Graph& g, const WeightFunction& w, const EdgeSubset& F);
Matrix edge_laplacian_omitted(const Graph& g, const WeightFunction& w, const EdgeSubset& F, const std::vector<int>& J);
Matrix lambda_minor(const Graph& g, const WeightFunction& w, const EdgeSubset& F, const std::vector<int>& J, int i1,
                    int i2);

Matrix schrodinger_operator(const Graph& g, const WeightFunction& w, const Vector& potential);
// Potential P~ with P~_ii + deg_w~(i) = e^{2u(i)} (P_ii + deg_w(i)).
Vector transform_schrodinger_potential(const Graph& g, const WeightFunction& w, const Vector& potential,
                                       const ConformalFactor& u);

// Edge indices kept after removing J, in increasing order.
std::vector<int> kept_edges(int edge_count, const std::vector<int>& J);

Matrix build_operator(const OperatorSpec& spec, const Graph& g, const WeightFunction& w);

// Whether the family acts on Hom(V,R) (true) or Hom(E,R) (false) on the right.
bool acts_on_vertices(OperatorFamily f);

/// Positive diagonals with S_{w~} = diag(left) S_w diag(right).
struct CovarianceLaw {
    Vector left;
    Vector right;
};

// The transformation law of the family under the conformal factor u. For
// random walks the left diagonal also depends on w. The vertex Laplacian has
// no such law and raises DataError.
CovarianceLaw covariance_law(const OperatorSpec& spec, const Graph& g, const WeightFunction& w,
                             const ConformalFactor& u);

// diag(e^u) on both sides: the law adjacency-type vertex operators obey.
CovarianceLaw vertex_candidate_law(const ConformalFactor& u);

// Per-edge e^{(u(a)+u(b))/2} for edge (a,b), restricted to `edges`.
Vector edge_half_factor(const Graph& g, const ConformalFactor& u, const std::vector<int>& edges);

// Max-entry residual of S_{w~} - D_left S_w D_right with w~ = apply(w,u).
// For schrodinger, the potential of S_{w~} is the transformed one.
double check_covariance(const OperatorSpec& spec, const Graph& g, const WeightFunction& w, const ConformalFactor& u);
double check_covariance(const OperatorSpec& spec, const Graph& g, const WeightFunction& w, const ConformalFactor& u,
                        const CovarianceLaw& law);

// Spec adjusted for the conformally changed weight (transforms the potential).
OperatorSpec transformed_spec(const OperatorSpec& spec, const Graph& g, const WeightFunction& w,
                              const ConformalFactor& u);

double max_abs(const Matrix& m);

}  // namespace cgl
