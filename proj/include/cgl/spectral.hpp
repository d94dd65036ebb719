#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cgl/graph.hpp"
#include "cgl/operators.hpp"

namespace cgl {

// Relative zero threshold: |lambda| <= zero_tol * max(1, spectral radius).
inline constexpr double kDefaultZeroTol = 1e-8;

struct SignatureTriple {
    int n_plus = 0;
    int n_zero = 0;
    int n_minus = 0;

    int dimension() const { return n_plus + n_zero + n_minus; }
    std::string to_string() const;
    friend auto operator<=>(const SignatureTriple&, const SignatureTriple&) = default;
};

// Nondecreasing eigenvalues of a symmetric matrix. Throws DataError when the
// symmetry residual exceeds sym_tol * max(1, max|S|).
Vector symmetric_eigenvalues(const Matrix& s, double sym_tol = 1e-10);

double zero_threshold(const Vector& eigenvalues, double zero_tol);

SignatureTriple signature_of(const Vector& eigenvalues, double zero_tol = kDefaultZeroTol);
SignatureTriple signature(const Matrix& s, double zero_tol = kDefaultZeroTol);

// -1, 0 or +1 following the trichotomy on the smallest eigenvalue.
int sign_lambda1(const Matrix& s, double zero_tol = kDefaultZeroTol);

enum class KernelSide { two_sided, left, right };

struct KernelBasis {
    Matrix vectors;  // orthonormal columns
    KernelSide side = KernelSide::right;
    double zero_tol = kDefaultZeroTol;

    int dimension() const { return static_cast<int>(vectors.cols()); }
};

// Null space of a symmetric matrix from its eigenvectors; matches the n_zero
// count of signature() at the same tolerance.
KernelBasis kernel_basis(const Matrix& s, double zero_tol = kDefaultZeroTol);

// {V : M V = 0} and {U : U M = 0} (U returned as columns) from a full SVD;
// singular values <= zero_tol * max(1, sigma_max) count as zero.
KernelBasis right_kernel(const Matrix& m, double zero_tol = kDefaultZeroTol);
KernelBasis left_kernel(const Matrix& m, double zero_tol = kDefaultZeroTol);

int numerical_rank(const Matrix& m, double zero_tol = kDefaultZeroTol);

// Largest principal angle (radians) between the column spans of a and b;
// pi/2 when the dimensions differ.
double max_principal_angle(const Matrix& a, const Matrix& b);

// Maps vectors of ker S_{from_w} to ker S_{to_w} through diag(right)^{-1},
// the right diagonal of the transformation law from from_w to to_w.
// Throws DataError when the weights are not conformally equivalent.
Matrix kernel_transport(const OperatorSpec& spec, const Graph& g, const WeightFunction& from_w,
                        const WeightFunction& to_w, const Matrix& kernel_vectors);

struct WeightSampler {
    double log_lo = -2.0;
    double log_hi = 2.0;
};

enum class RankScope { fixed_subset, all_subsets };

struct RankStatistics {
    int observed_max_rank = 0;
    int observed_min_rank = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    double zero_tol = kDefaultZeroTol;
    std::map<SignatureTriple, int> signature_tallies;
};

// Ranks and signatures of A(F,w) over seeded log-uniform weights. With
// RankScope::all_subsets each sample also draws a uniformly random F. Samples
// are evaluated in parallel; sample k uses its own stream derived from
// (seed, k), so results do not depend on scheduling.
RankStatistics rank_statistics(const Graph& g, const EdgeSubset& F, const WeightSampler& sampler, int n_samples,
                               std::uint64_t seed, double zero_tol = kDefaultZeroTol,
                               RankScope scope = RankScope::fixed_subset);

// max(N+, N-) of the unweighted adjacency matrix; lower bound on bp(G).
int biclique_bound(const Graph& g);

}  // namespace cgl
