#pragma once

#include <string>
#include <vector>

#include "cgl/graph.hpp"
#include "cgl/operators.hpp"
#include "cgl/spectral.hpp"

namespace cgl {

struct NodalDomain {
    std::vector<int> elements;  // sorted vertex (or edge) indices
    int sign = 0;               // +1 or -1
    friend bool operator==(const NodalDomain&, const NodalDomain&) = default;
};

// Nodal set and strong nodal domains of a vertex function.
//
// A value counts as zero when |H(v)| <= zero_tol * max|H|; `threshold`
// records the absolute cut so borderline classifications can be audited.
// For edge functions (`edge_domain`), sign changes are taken between edges
// sharing a vertex, i.e. over the line graph. That reading is our own
// extension and is reported as such.
struct NodalData {
    std::vector<int> sign_change;    // edges of G (or adjacent edge pairs, see pairs)
    std::vector<std::pair<int, int>> sign_change_pairs;  // edge-domain only
    std::vector<int> zero_elements;  // vertices (or edges) where H vanishes
    std::vector<NodalDomain> domains;
    double zero_tol = 0.0;
    double threshold = 0.0;
    bool edge_domain = false;

    // Structural equality; tolerances are ignored.
    bool same_structure(const NodalData& other) const;
};

NodalData nodal_data(const Graph& g, const VertexFunction& h, double zero_tol = kDefaultZeroTol);
NodalData edge_nodal_data(const Graph& g, const EdgeFunction& f, double zero_tol = kDefaultZeroTol);

// Nodal set flattened to sorted element ids: edge e as e and vertex v as m + v.
// For edge functions a sign-change pair (i,j) is i*m + j and a zero edge e is
// m*m + e.
std::vector<int> nodal_set_ids(const Graph& g, const NodalData& nd);

// Psi_H(e) = H(a) H(b) w(e).
EdgeFunction psi_map(const Graph& g, const WeightFunction& w, const VertexFunction& h);

struct PsiResult {
    EdgeFunction psi;
    double kernel_residual = 0.0;  // ||A(F,w) H|| / (||A|| ||H||)
    bool in_kernel = false;
};

PsiResult psi_map_checked(const Graph& g, const WeightFunction& w, const EdgeSubset& F, const VertexFunction& h,
                          double tol = 1e-8);

// Indices where every basis column vanishes (|f_i(y)| <= zero_tol * max|f|).
std::vector<int> common_zero_set(const Matrix& basis, double zero_tol = kDefaultZeroTol);

// Point of RP^{m-1}: unit vector whose first non-negligible coordinate is positive.
class ProjectivePoint {
public:
    explicit ProjectivePoint(const Vector& homogeneous);

    const Vector& coordinates() const { return coords_; }
    int dimension() const { return static_cast<int>(coords_.size()) - 1; }

private:
    Vector coords_;
};

// Angle between the lines spanned by the two representatives.
double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b);
bool projective_equal(const ProjectivePoint& a, const ProjectivePoint& b, double tol = 1e-8);

// (f_1(y) : ... : f_m(y)); DataError when y lies in the common zero set.
ProjectivePoint phi_map(const Matrix& basis, int y, double zero_tol = kDefaultZeroTol);

struct InvarianceCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;  // measured residual or mismatch count
    std::string detail;
};

struct NodalInvarianceReport {
    int kernel_dimension = 0;
    bool edge_domain_extension = false;
    std::vector<InvarianceCheck> checks;

    bool all_passed() const;
};

// Verifies that nodal sets, strong nodal domains, pairwise nodal-set and
// complement intersections, common zero sets, Phi and (for adjacency
// families) Psi are preserved when ker S_w is transported to ker S_{w~}.
// DataError "kernel is zero" when S_w has trivial kernel.
NodalInvarianceReport nodal_invariance_report(const OperatorSpec& spec, const Graph& g, const WeightFunction& w,
                                              const ConformalFactor& u, double zero_tol = kDefaultZeroTol);

}  // namespace cgl
