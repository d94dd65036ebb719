#pragma once

#include <map>
#include <vector>

#include "cgl/characters.hpp"
#include "cgl/graph.hpp"
#include "cgl/nodal.hpp"
#include "cgl/operators.hpp"

namespace cgl {

inline constexpr int kMaxPermanentSize = 20;
inline constexpr int kMaxImmanantSize = 10;
inline constexpr int kMaxSymbolicSize = 8;
inline constexpr int kMaxEnumerationVertices = 12;

double determinant(const Matrix& m);

// Ryser inclusion-exclusion with Gray-code updates, O(2^n n).
double permanent(const Matrix& m);

// Skew-symmetric input of even order; Parlett-Reid style elimination with
// pivoting. Odd order or a non-skew matrix raise DataError.
double pfaffian(const Matrix& a);

// sum_sigma chi(sigma) prod_i M_{i,sigma(i)}, skipping zero entries.
double immanant(const Matrix& m, const CharacterSpec& chi);

struct ScalingCheck {
    double transformed = 0.0;  // P_chi(F, w~)
    double predicted = 0.0;    // det(D_u)^2 P_chi(F, w)
    double residual = 0.0;
    double tolerance = 0.0;    // 1e-9 (1 + |P_chi(F,w)| det(D_u)^2)
    bool passed = false;
};

ScalingCheck immanant_transformation_check(const Graph& g, const WeightFunction& w, const ConformalFactor& u,
                                           const EdgeSubset& F, const CharacterSpec& chi);

// pf(A_skew(E, w~)) against det(D_u) pf(A_skew(E, w)).
ScalingCheck pfaffian_transformation_check(const Graph& g, const WeightFunction& w, const ConformalFactor& u);

// Polynomial in the edge weights: exponent vector -> coefficient.
class MultivariatePolynomial {
public:
    using Exponents = std::vector<int>;

    explicit MultivariatePolynomial(int variables = 0) : variables_(variables) {}

    int variables() const { return variables_; }
    const std::map<Exponents, double>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& exponents, double coeff);
    double evaluate(const Vector& x) const;
    // Coefficients in canonical (lexicographic) term order.
    Vector coefficient_vector() const;
    // c_alpha x^alpha per term, same order.
    Vector evaluated_terms(const Vector& x) const;

private:
    int variables_;
    std::map<Exponents, double> terms_;
};

MultivariatePolynomial symbolic_immanant(const Graph& g, const EdgeSubset& F, const CharacterSpec& chi);

// Coefficient vector of the symbolic polynomial as a point of RP^d.
ProjectivePoint projective_coefficients(const MultivariatePolynomial& p);

// (c_alpha w^alpha)_alpha as a point of RP^d. Every monomial of P_chi scales by
// det(D_u)^2 under a conformal change, so this point is a conformal invariant.
ProjectivePoint projective_evaluated_terms(const MultivariatePolynomial& p, const WeightFunction& w);

// Spanning trees as sorted edge-index lists (backtracking; |V| <= 12).
std::vector<std::vector<int>> spanning_trees(const Graph& g);

// det(M_i(E,w) M_i(E,w)^T) with vertex i omitted; 0 for disconnected graphs.
double tree_polynomial_determinant(const Graph& g, const WeightFunction& w, int omitted_vertex = 0);
double tree_polynomial_enumerated(const Graph& g, const WeightFunction& w);
inline double tree_polynomial(const Graph& g, const WeightFunction& w) { return tree_polynomial_determinant(g, w, 0); }
MultivariatePolynomial tree_polynomial_symbolic(const Graph& g);

// det of M(E,w) M(E,w)^T with the root rows and columns removed.
double forest_polynomial(const Graph& g, const WeightFunction& w, const std::vector<int>& roots);
// Sum over spanning forests in which every tree contains exactly one root.
double forest_polynomial_enumerated(const Graph& g, const WeightFunction& w, const std::vector<int>& roots);

struct ZeroSetResult {
    double value = 0.0;  // P_chi(F, w)
    double scale = 0.0;  // chi(id) * perm(|A(F,w)|), expanded
    bool member = false;
};

ZeroSetResult zero_set_membership(const Graph& g, const WeightFunction& w, const EdgeSubset& F,
                                  const CharacterSpec& chi, double tol = 1e-10);

}  // namespace cgl
