#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgl/graph.hpp"
#include "cgl/moduli.hpp"
#include "cgl/operators.hpp"
#include "cgl/spectral.hpp"

namespace cgl {

// How grid parameters become a point of the moduli space.
//  canonical: parameters are coordinates in the orthonormal kernel basis.
//  edge: parameters are the canonical weights of the listed edges; the other
//        canonical weights follow from the normalization.
struct ModuliChart {
    enum class Kind { canonical, edge };

    Kind kind = Kind::canonical;
    std::vector<int> edges;
    std::vector<std::string> labels;

    static ModuliChart canonical() { return {}; }
    static ModuliChart edge_chart(std::vector<int> edges, std::vector<std::string> labels);

    std::string describe(const Graph& g) const;
};

// exp(sum_i coords_i K_i) for the orthonormal kernel basis K.
WeightFunction canonical_weight_from_coordinates(const Graph& g, const Vector& coords);
WeightFunction canonical_weight_from_coordinates(const ModuliDescription& desc, const Vector& coords);

// Points lo + (hi - lo)(k + 1)/steps for k = 0..steps-1, i.e. (lo, hi].
struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    int steps = 1;

    double at(int k) const { return lo + (hi - lo) * (k + 1) / steps; }
    double step() const { return (hi - lo) / steps; }
};

class ModuliGrid {
public:
    ModuliGrid(const Graph& g, ModuliChart chart, std::vector<GridAxis> axes);

    int dimension() const { return static_cast<int>(axes_.size()); }
    const std::vector<GridAxis>& axes() const { return axes_; }
    const ModuliChart& chart() const { return chart_; }
    const ModuliDescription& description() const { return desc_; }
    long long point_count() const;

    // Axis 0 varies fastest.
    std::vector<int> multi_index(long long linear) const;
    long long linear_index(const std::vector<int>& idx) const;
    Vector parameters(long long linear) const;

    WeightFunction weight(const Vector& params) const;

private:
    ModuliDescription desc_;
    ModuliChart chart_;
    std::vector<GridAxis> axes_;
    Matrix chart_inverse_;  // edge charts: K_S^{-1}
};

struct GridPointResult {
    SignatureTriple signature;
    int rank = 0;
    int zero_multiplicity = 0;
    int component = -1;  // -1 on flagged points
    bool flagged = false;
};

struct DiscriminantPoint {
    Vector params;
    SignatureTriple signature;
    int zero_multiplicity = 0;
    double smallest_abs_eigenvalue = 0.0;
};

struct ComponentInfo {
    int label = 0;
    long long size = 0;
    std::vector<SignatureTriple> signatures;  // distinct values seen
};

struct RegionReport {
    int dimension = 0;
    double zero_tol = kDefaultZeroTol;
    int generic_multiplicity = 0;
    std::vector<GridPointResult> points;
    std::vector<DiscriminantPoint> discriminant;
    std::vector<ComponentInfo> components;
    int origin_component = -1;  // component of grid point (0, ..., 0)
    bool signature_constant_on_components = true;
    long long flagged_points = 0;
};

// Evaluates A(F, .) over the grid. Neighbours whose signatures differ after
// discarding the generic kernel are separated by the discriminant; the crossing
// is located by bisection along the segment and recorded.
RegionReport scan_moduli(const Graph& g, const EdgeSubset& F, const ModuliGrid& grid,
                         double zero_tol = kDefaultZeroTol);

// Kernel vector of A(empty, w(a,b)) on G_{5,2} in the (a,b) edge chart,
// scaled so that H(v_4) = -1. Throws DataError off the discriminant.
VertexFunction g52_kernel_vector(double a, double b, double tol = 1e-8);

// (ab)^4 - a^3 - b^3.
double g52_discriminant(double a, double b);

// The unique b > 0 on the discriminant for the given a.
double g52_discriminant_root(double a);

struct G52Calibration {
    double a = 0.0, b = 0.0;
    VertexFunction printed;        // (a^2/b^2, a^5 - a/b, -a^2, -1, 1)
    VertexFunction derived;        // g52_kernel_vector(a, b)
    double printed_residual = 0.0; // ||A H|| / (||A|| ||H||)
    double derived_residual = 0.0;
    double best_permuted_printed_residual = 0.0;  // over all relabelings of the vertices
};

G52Calibration g52_calibration(double a, double b);

struct PsiSample {
    double a = 0.0, b = 0.0, psi = 0.0, residual = 0.0;
};

// Sweeps a over [a_lo, a_hi], solves for b on the discriminant (bracketed,
// warm started from the previous point) and evaluates Psi_H(edge).
std::vector<PsiSample> psi_profile_along_discriminant(int edge, int n_points, double a_lo = 0.7,
                                                      double a_hi = 5.0);

}  // namespace cgl
