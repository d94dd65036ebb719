#include "cgl/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numbers>

#include "cgl/error.hpp"
#include "cgl/moduli.hpp"

namespace cgl {

namespace {

std::vector<int> classify(const Vector& h, double zero_tol, double& threshold) {
    double scale = h.size() ? h.cwiseAbs().maxCoeff() : 0.0;
    threshold = zero_tol * scale;
    std::vector<int> s(static_cast<std::size_t>(h.size()));
    for (Eigen::Index i = 0; i < h.size(); ++i)
        s[static_cast<std::size_t>(i)] = (scale == 0.0 || std::abs(h[i]) <= threshold) ? 0 : (h[i] > 0 ? 1 : -1);
    return s;
}

// Components of same-sign nonzero elements under the adjacency `nbrs`.
std::vector<NodalDomain> domains_of(const std::vector<int>& sign, const std::vector<std::vector<int>>& nbrs) {
    std::vector<NodalDomain> out;
    std::vector<char> seen(sign.size(), 0);
    for (std::size_t s = 0; s < sign.size(); ++s) {
        if (seen[s] || sign[s] == 0) continue;
        NodalDomain d;
        d.sign = sign[s];
        std::vector<int> stack{static_cast<int>(s)};
        seen[s] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            d.elements.push_back(x);
            for (int y : nbrs[static_cast<std::size_t>(x)]) {
                auto ys = static_cast<std::size_t>(y);
                if (!seen[ys] && sign[ys] == d.sign) {
                    seen[ys] = 1;
                    stack.push_back(y);
                }
            }
        }
        std::sort(d.elements.begin(), d.elements.end());
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace

bool NodalData::same_structure(const NodalData& o) const {
    return edge_domain == o.edge_domain && sign_change == o.sign_change && sign_change_pairs == o.sign_change_pairs &&
           zero_elements == o.zero_elements && domains == o.domains;
}

NodalData nodal_data(const Graph& g, const VertexFunction& h, double zero_tol) {
    if (h.size() != g.vertex_count()) throw DataError("nodal_data", "function length does not match vertex count");
    NodalData nd;
    nd.zero_tol = zero_tol;
    std::vector<int> sign = classify(h, zero_tol, nd.threshold);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (sign[static_cast<std::size_t>(v)] == 0) nd.zero_elements.push_back(v);
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (sign[static_cast<std::size_t>(ed.u)] * sign[static_cast<std::size_t>(ed.v)] < 0) nd.sign_change.push_back(e);
    }
    std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) nbrs[static_cast<std::size_t>(v)] = g.neighbors(v);
    nd.domains = domains_of(sign, nbrs);
    return nd;
}

NodalData edge_nodal_data(const Graph& g, const EdgeFunction& f, double zero_tol) {
    if (f.size() != g.edge_count()) throw DataError("edge_nodal_data", "function length does not match edge count");
    NodalData nd;
    nd.edge_domain = true;
    nd.zero_tol = zero_tol;
    std::vector<int> sign = classify(f, zero_tol, nd.threshold);
    const int m = g.edge_count();
    std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Edge& a = g.edge(i);
            const Edge& b = g.edge(j);
            bool adjacent = a.touches(b.u) || a.touches(b.v);
            if (!adjacent) continue;
            nbrs[static_cast<std::size_t>(i)].push_back(j);
            nbrs[static_cast<std::size_t>(j)].push_back(i);
            if (sign[static_cast<std::size_t>(i)] * sign[static_cast<std::size_t>(j)] < 0) nd.sign_change_pairs.push_back({i, j});
        }
        if (sign[static_cast<std::size_t>(i)] == 0) nd.zero_elements.push_back(i);
    }
    nd.domains = domains_of(sign, nbrs);
    return nd;
}

std::vector<int> nodal_set_ids(const Graph& g, const NodalData& nd) {
    const int m = g.edge_count();
    std::vector<int> ids;
    if (nd.edge_domain) {
        for (auto [i, j] : nd.sign_change_pairs) ids.push_back(i * m + j);
        for (int e : nd.zero_elements) ids.push_back(m * m + e);
    } else {
        ids = nd.sign_change;
        for (int v : nd.zero_elements) ids.push_back(m + v);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

EdgeFunction psi_map(const Graph& g, const WeightFunction& w, const VertexFunction& h) {
    w.check_graph(g, "psi_map");
    if (h.size() != g.vertex_count()) throw DataError("psi_map", "function length does not match vertex count");
    EdgeFunction psi(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) psi[e] = h[g.edge(e).u] * h[g.edge(e).v] * w[e];
    return psi;
}

PsiResult psi_map_checked(const Graph& g, const WeightFunction& w, const EdgeSubset& F, const VertexFunction& h,
                          double tol) {
    PsiResult r;
    r.psi = psi_map(g, w, h);
    Matrix a = generalized_adjacency(g, w, F);
    double denom = std::max(1e-300, a.norm() * h.norm());
    r.kernel_residual = (a * h).norm() / denom;
    r.in_kernel = r.kernel_residual <= tol;
    return r;
}

std::vector<int> common_zero_set(const Matrix& basis, double zero_tol) {
    std::vector<int> out;
    double thr = zero_tol * (basis.size() ? basis.cwiseAbs().maxCoeff() : 0.0);
    for (Eigen::Index y = 0; y < basis.rows(); ++y)
        if (basis.cols() == 0 || basis.row(y).cwiseAbs().maxCoeff() <= thr) out.push_back(static_cast<int>(y));
    return out;
}

ProjectivePoint::ProjectivePoint(const Vector& homogeneous) {
    double norm = homogeneous.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DataError("projective point", "zero vector");
    coords_ = homogeneous / norm;
    double cut = 1e-12 * coords_.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < coords_.size(); ++i) {
        if (std::abs(coords_[i]) > cut) {
            if (coords_[i] < 0) coords_ = -coords_;
            break;
        }
    }
}

double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
    if (a.coordinates().size() != b.coordinates().size()) return std::numbers::pi / 2;
    double d = std::min((a.coordinates() - b.coordinates()).norm(), (a.coordinates() + b.coordinates()).norm());
    return 2.0 * std::asin(std::min(1.0, d / 2.0));
}

bool projective_equal(const ProjectivePoint& a, const ProjectivePoint& b, double tol) {
    return projective_distance(a, b) <= tol;
}

ProjectivePoint phi_map(const Matrix& basis, int y, double zero_tol) {
    if (y < 0 || y >= basis.rows()) throw DataError("phi_map", "element index out of range");
    auto zeros = common_zero_set(basis, zero_tol);
    if (std::binary_search(zeros.begin(), zeros.end(), y)) throw DataError("phi_map", "undefined at common zero");
    return ProjectivePoint(basis.row(y).transpose());
}

bool NodalInvarianceReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const InvarianceCheck& c) { return c.passed; });
}

namespace {

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> complement(const std::vector<int>& a, int universe) {
    std::vector<int> out;
    for (int i = 0, k = 0; i < universe; ++i) {
        while (k < static_cast<int>(a.size()) && a[static_cast<std::size_t>(k)] < i) ++k;
        if (k < static_cast<int>(a.size()) && a[static_cast<std::size_t>(k)] == i) continue;
        out.push_back(i);
    }
    return out;
}

}  // namespace

NodalInvarianceReport nodal_invariance_report(const OperatorSpec& spec, const Graph& g, const WeightFunction& w,
                                              const ConformalFactor& u, double zero_tol) {
    NodalInvarianceReport rep;
    const bool on_vertices = acts_on_vertices(spec.family);
    rep.edge_domain_extension = !on_vertices;

    Matrix s = build_operator(spec, g, w);
    Matrix kernel = right_kernel(s, zero_tol).vectors;
    rep.kernel_dimension = static_cast<int>(kernel.cols());
    if (kernel.cols() == 0) throw DataError("nodal_invariance_report", "kernel is zero");

    WeightFunction wt = apply_conformal_factor(g, w, u);
    Matrix st = build_operator(transformed_spec(spec, g, w, u), g, wt);
    Matrix moved = kernel_transport(spec, g, w, wt, kernel);
    Matrix kernel_t = right_kernel(st, zero_tol).vectors;

    auto add = [&](std::string name, bool ok, double value, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, value, std::move(detail)});
    };

    add("kernel_dimension", kernel_t.cols() == kernel.cols(), static_cast<double>(kernel_t.cols() - kernel.cols()),
        std::to_string(kernel.cols()) + " vs " + std::to_string(kernel_t.cols()));

    double scale = std::max(1.0, max_abs(st));
    double resid = 0.0;
    for (Eigen::Index k = 0; k < moved.cols(); ++k)
        resid = std::max(resid, (st * moved.col(k)).norm() / (scale * moved.col(k).norm()));
    add("transport_lands_in_kernel", resid <= 1e-8, resid);
    double angle = max_principal_angle(moved, kernel_t);
    add("transport_spans_kernel", angle <= 1e-8, angle);

    auto nodal = [&](const Vector& h) { return on_vertices ? nodal_data(g, h, zero_tol) : edge_nodal_data(g, h, zero_tol); };
    const int m = g.edge_count();
    const int universe = on_vertices ? m + g.vertex_count() : m * m + m;

    int nodal_mismatch = 0, domain_mismatch = 0;
    std::vector<std::vector<int>> sets, sets_t;
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
        NodalData a = nodal(kernel.col(k));
        NodalData b = nodal(moved.col(k));
        if (nodal_set_ids(g, a) != nodal_set_ids(g, b)) ++nodal_mismatch;
        if (a.domains != b.domains) ++domain_mismatch;
        sets.push_back(nodal_set_ids(g, a));
        sets_t.push_back(nodal_set_ids(g, b));
    }
    add("nodal_sets", nodal_mismatch == 0, nodal_mismatch);
    add("strong_nodal_domains", domain_mismatch == 0, domain_mismatch);

    if (kernel.cols() >= 2) {
        int inter_mismatch = 0, comp_mismatch = 0;
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                if (intersect(sets[i], sets[j]) != intersect(sets_t[i], sets_t[j])) ++inter_mismatch;
                if (intersect(complement(sets[i], universe), complement(sets[j], universe)) !=
                    intersect(complement(sets_t[i], universe), complement(sets_t[j], universe)))
                    ++comp_mismatch;
            }
        add("nodal_set_intersections", inter_mismatch == 0, inter_mismatch);
        add("complement_intersections", comp_mismatch == 0, comp_mismatch);
    }

    // Basis independence: X from the transported basis and from an
    // independently computed basis of ker S_{w~}.
    auto zeros = common_zero_set(kernel, zero_tol);
    auto zeros_moved = common_zero_set(moved, zero_tol);
    auto zeros_t = common_zero_set(kernel_t, zero_tol);
    add("common_zero_set", zeros == zeros_moved && zeros == zeros_t, 0.0);

    double phi_dist = 0.0;
    for (Eigen::Index y = 0; y < kernel.rows(); ++y) {
        if (std::binary_search(zeros.begin(), zeros.end(), static_cast<int>(y))) continue;
        phi_dist = std::max(phi_dist, projective_distance(phi_map(kernel, static_cast<int>(y), zero_tol),
                                                          phi_map(moved, static_cast<int>(y), zero_tol)));
    }
    add("phi_map", phi_dist <= 1e-8, phi_dist);

    if (spec.family == OperatorFamily::adjacency_generalized || spec.family == OperatorFamily::adjacency_plain) {
        double worst = 0.0;
        for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
            EdgeFunction p = psi_map(g, w, kernel.col(k));
            EdgeFunction pt = psi_map(g, wt, moved.col(k));
            double denom = p.size() ? p.cwiseAbs().maxCoeff() : 0.0;
            double diff = p.size() ? (p - pt).cwiseAbs().maxCoeff() : 0.0;
            worst = std::max(worst, denom > 0 ? diff / denom : diff);
        }
        add("psi_map", worst <= 1e-10, worst);
    }
    return rep;
}

}  // namespace cgl
