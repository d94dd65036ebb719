#include "cgl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cgl/error.hpp"
#include "cgl/moduli.hpp"
#include "cgl/random.hpp"
#include "parallel.hpp"

namespace cgl {

std::string SignatureTriple::to_string() const {
    return "(" + std::to_string(n_plus) + "," + std::to_string(n_zero) + "," + std::to_string(n_minus) + ")";
}

namespace {

void require_symmetric(const Matrix& s, double sym_tol, const char* ctx) {
    if (s.rows() != s.cols()) throw DataError(ctx, "matrix is not square");
    double scale = std::max(1.0, max_abs(s));
    if (max_abs(s - s.transpose()) > sym_tol * scale) throw DataError(ctx, "matrix is not symmetric");
}

}  // namespace

Vector symmetric_eigenvalues(const Matrix& s, double sym_tol) {
    require_symmetric(s, sym_tol, "symmetric_eigenvalues");
    if (s.rows() == 0) return Vector();
    Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric_eigenvalues", "eigen solver did not converge");
    return es.eigenvalues();  // ascending
}

double zero_threshold(const Vector& eigenvalues, double zero_tol) {
    double radius = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    return zero_tol * std::max(1.0, radius);
}

SignatureTriple signature_of(const Vector& eigenvalues, double zero_tol) {
    const double thr = zero_threshold(eigenvalues, zero_tol);
    SignatureTriple t;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (std::abs(eigenvalues[i]) <= thr) ++t.n_zero;
        else if (eigenvalues[i] > 0) ++t.n_plus;
        else ++t.n_minus;
    }
    return t;
}

SignatureTriple signature(const Matrix& s, double zero_tol) { return signature_of(symmetric_eigenvalues(s), zero_tol); }

int sign_lambda1(const Matrix& s, double zero_tol) {
    Vector ev = symmetric_eigenvalues(s);
    if (ev.size() == 0) return 0;
    const double thr = zero_threshold(ev, zero_tol);
    if (std::abs(ev[0]) <= thr) return 0;
    return ev[0] < 0 ? -1 : 1;
}

KernelBasis kernel_basis(const Matrix& s, double zero_tol) {
    require_symmetric(s, 1e-10, "kernel_basis");
    KernelBasis kb;
    kb.side = KernelSide::two_sided;
    kb.zero_tol = zero_tol;
    if (s.rows() == 0) return kb;
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    if (es.info() != Eigen::Success) throw NumericalError("kernel_basis", "eigen solver did not converge");
    const double thr = zero_threshold(es.eigenvalues(), zero_tol);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        if (std::abs(es.eigenvalues()[i]) <= thr) cols.push_back(i);
    kb.vectors.resize(s.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) kb.vectors.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(cols[k]);
    return kb;
}

namespace {

int rank_from_singular(const Vector& sv, double zero_tol) {
    double smax = sv.size() ? sv[0] : 0.0;
    double thr = zero_tol * std::max(1.0, smax);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > thr) ++r;
    return r;
}

}  // namespace

int numerical_rank(const Matrix& m, double zero_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return rank_from_singular(svd.singularValues(), zero_tol);
}

KernelBasis right_kernel(const Matrix& m, double zero_tol) {
    KernelBasis kb;
    kb.side = KernelSide::right;
    kb.zero_tol = zero_tol;
    if (m.cols() == 0) return kb;
    if (m.rows() == 0) {
        kb.vectors = Matrix::Identity(m.cols(), m.cols());
        return kb;
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    int r = rank_from_singular(svd.singularValues(), zero_tol);
    kb.vectors = svd.matrixV().rightCols(m.cols() - r);
    return kb;
}

KernelBasis left_kernel(const Matrix& m, double zero_tol) {
    KernelBasis kb = right_kernel(m.transpose(), zero_tol);
    kb.side = KernelSide::left;
    return kb;
}

double max_principal_angle(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols() || a.rows() != b.rows()) return std::numbers::pi / 2;
    if (a.cols() == 0) return 0.0;
    Matrix qa = Eigen::HouseholderQR<Matrix>(a).householderQ() * Matrix::Identity(a.rows(), a.cols());
    Matrix qb = Eigen::HouseholderQR<Matrix>(b).householderQ() * Matrix::Identity(b.rows(), b.cols());
    // sin(theta_max) = ||(I - Qa Qa^T) Qb||_2 for spans of equal dimension.
    Matrix resid = qb - qa * (qa.transpose() * qb);
    Eigen::JacobiSVD<Matrix> svd(resid);
    return std::asin(std::clamp(svd.singularValues()[0], 0.0, 1.0));
}

Matrix kernel_transport(const OperatorSpec& spec, const Graph& g, const WeightFunction& from_w,
                        const WeightFunction& to_w, const Matrix& kernel_vectors) {
    auto u = same_conformal_class(g, from_w, to_w);
    if (!u) throw DataError("kernel_transport", "weights are not conformally equivalent");
    CovarianceLaw law = covariance_law(spec, g, from_w, *u);
    if (law.right.size() != kernel_vectors.rows())
        throw DataError("kernel_transport", "kernel vectors have the wrong length");
    return law.right.cwiseInverse().asDiagonal() * kernel_vectors;
}

RankStatistics rank_statistics(const Graph& g, const EdgeSubset& F, const WeightSampler& sampler, int n_samples,
                               std::uint64_t seed, double zero_tol, RankScope scope) {
    if (n_samples < 1) throw DataError("rank_statistics", "n_samples must be at least 1");
    std::vector<SignatureTriple> sigs(static_cast<std::size_t>(n_samples));
    detail::parallel_for(n_samples, [&](int k) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
        WeightFunction w = random_weights(g.edge_count(), sampler, rng);
        EdgeSubset subset = F;
        if (scope == RankScope::all_subsets) {
            subset = EdgeSubset::none(g.edge_count());
            for (int e = 0; e < g.edge_count(); ++e)
                if (rng() & 1ULL) subset.insert(e);
            subset.orient_defaults(g);
        }
        sigs[static_cast<std::size_t>(k)] = signature(generalized_adjacency(g, w, subset), zero_tol);
    });

    RankStatistics st;
    st.samples = n_samples;
    st.seed = seed;
    st.zero_tol = zero_tol;
    st.observed_max_rank = 0;
    st.observed_min_rank = g.vertex_count();
    for (const auto& s : sigs) {
        int rank = s.n_plus + s.n_minus;
        st.observed_max_rank = std::max(st.observed_max_rank, rank);
        st.observed_min_rank = std::min(st.observed_min_rank, rank);
        ++st.signature_tallies[s];
    }
    return st;
}

int biclique_bound(const Graph& g) {
    SignatureTriple s = signature(adjacency(g, WeightFunction::unit(g.edge_count())));
    return std::max(s.n_plus, s.n_minus);
}

}  // namespace cgl
