#include "cgl/moduli.hpp"

#include <cmath>

#include "cgl/error.hpp"
#include "cgl/exact.hpp"

namespace cgl {

Eigen::MatrixXi unsigned_incidence(const Graph& g) {
    Eigen::MatrixXi b = Eigen::MatrixXi::Zero(g.vertex_count(), g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        b(ed.u, e) += 1;
        b(ed.v, e) += 1;
    }
    return b;
}

BipartiteInfo bipartite_components(const Graph& g) {
    const int n = g.vertex_count();
    BipartiteInfo info;
    info.component.assign(static_cast<std::size_t>(n), -1);
    info.color.assign(static_cast<std::size_t>(n), 0);
    for (int start = 0; start < n; ++start) {
        if (info.component[static_cast<std::size_t>(start)] >= 0) continue;
        const int label = info.component_count++;
        bool bipartite = true;
        std::vector<int> stack{start};
        info.component[static_cast<std::size_t>(start)] = label;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e : g.incident_edges(v)) {
                int x = g.edge(e).other(v);
                if (x == v) {
                    bipartite = false;  // a loop is an odd cycle
                    continue;
                }
                auto xs = static_cast<std::size_t>(x);
                auto vs = static_cast<std::size_t>(v);
                if (info.component[xs] < 0) {
                    info.component[xs] = label;
                    info.color[xs] = 1 - info.color[vs];
                    stack.push_back(x);
                } else if (info.color[xs] == info.color[vs]) {
                    bipartite = false;
                }
            }
        }
        info.component_bipartite.push_back(bipartite ? 1 : 0);
        if (bipartite) ++info.omega0;
    }
    return info;
}

int incidence_rank_exact(const Graph& g) { return exact::rank(unsigned_incidence(g)); }

ModuliDescription moduli_description(const Graph& g) {
    g.require_loopless("moduli");
    const int m = g.edge_count();
    ModuliDescription desc;
    desc.omega0 = bipartite_components(g).omega0;

    auto null = exact::null_space(unsigned_incidence(g));
    desc.incidence_rank = m - static_cast<int>(null.size());
    desc.dimension = static_cast<int>(null.size());

    desc.rational_basis.resize(m, desc.dimension);
    for (int k = 0; k < desc.dimension; ++k)
        for (int e = 0; e < m; ++e)
            desc.rational_basis(e, k) = static_cast<double>(null[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)]);

    // Modified Gram-Schmidt, two passes for stability.
    desc.kernel_basis = desc.rational_basis;
    for (int k = 0; k < desc.dimension; ++k) {
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < k; ++j) {
                double proj = desc.kernel_basis.col(j).dot(desc.kernel_basis.col(k));
                desc.kernel_basis.col(k) -= proj * desc.kernel_basis.col(j);
            }
        desc.kernel_basis.col(k).normalize();
        for (int e = 0; e < m; ++e) {
            if (std::abs(desc.kernel_basis(e, k)) > 1e-12) {
                if (desc.kernel_basis(e, k) < 0) desc.kernel_basis.col(k) *= -1.0;
                break;
            }
        }
    }
    return desc;
}

WeightFunction apply_conformal_factor(const Graph& g, const WeightFunction& w, const ConformalFactor& u) {
    w.check_graph(g, "apply_conformal_factor");
    u.check_graph(g, "apply_conformal_factor");
    Vector out(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        out[e] = w[e] * std::exp(u[ed.u] + u[ed.v]);
    }
    return WeightFunction(std::move(out));
}

namespace {

// Minimum-norm least-squares solution of B^T u = rhs using the known exact
// rank of B to truncate the SVD.
Vector min_norm_vertex_solve(const Graph& g, const Vector& rhs, int rank) {
    Matrix bt = unsigned_incidence(g).cast<double>().transpose();
    Eigen::JacobiSVD<Matrix> svd(bt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    Vector coeff = svd.matrixU().transpose() * rhs;
    for (int i = 0; i < coeff.size(); ++i) coeff[i] = (i < rank && s[i] > 0) ? coeff[i] / s[i] : 0.0;
    return svd.matrixV() * coeff;
}

}  // namespace

CanonicalRepresentative canonical_representative(const Graph& g, const WeightFunction& w) {
    g.require_loopless("canonical_representative");
    w.check_graph(g, "canonical_representative");
    const int rank = incidence_rank_exact(g);
    // B B^T u = -B ln w has the same minimum-norm solution as B^T u = -ln w.
    Vector u = min_norm_vertex_solve(g, -w.log(), rank);
    ConformalFactor factor(u);
    return {apply_conformal_factor(g, w, factor), factor};
}

double vertex_log_residual(const Graph& g, const WeightFunction& w) {
    Vector s = unsigned_incidence(g).cast<double>() * w.log();
    return s.size() ? s.cwiseAbs().maxCoeff() : 0.0;
}

std::optional<ConformalFactor> same_conformal_class(const Graph& g, const WeightFunction& w1,
                                                    const WeightFunction& w2, double tol) {
    g.require_loopless("same_conformal_class");
    w1.check_graph(g, "same_conformal_class");
    w2.check_graph(g, "same_conformal_class");
    Vector diff = w2.log() - w1.log();
    Vector u = min_norm_vertex_solve(g, diff, incidence_rank_exact(g));
    ConformalFactor factor(u);
    WeightFunction mapped = apply_conformal_factor(g, w1, factor);
    for (int e = 0; e < g.edge_count(); ++e)
        if (std::abs(mapped[e] - w2[e]) > tol * w2[e]) return std::nullopt;
    return factor;
}

Vector moduli_coordinates(const ModuliDescription& desc, const WeightFunction& w) {
    if (w.size() != desc.kernel_basis.rows())
        throw DataError("moduli_coordinates", "weight length does not match the moduli description");
    return desc.kernel_basis.transpose() * w.log();
}

Vector moduli_coordinates(const Graph& g, const WeightFunction& w) {
    return moduli_coordinates(moduli_description(g), w);
}

}  // namespace cgl
