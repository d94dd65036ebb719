#include "cgl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cgl/error.hpp"
#include "cgl/moduli.hpp"

namespace cgl {

Orientation default_orientation(const Edge& e) { return {std::min(e.u, e.v), std::max(e.u, e.v)}; }

EdgeSubset EdgeSubset::all(const Graph& g) {
    EdgeSubset s(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) s.insert(e);
    return s.orient_defaults(g);
}

EdgeSubset EdgeSubset::of(const Graph& g, const std::vector<int>& edges) {
    EdgeSubset s(g.edge_count());
    for (int e : edges) {
        if (e < 0 || e >= g.edge_count()) throw DataError("edge subset", "edge index " + std::to_string(e) + " out of range");
        s.insert(e);
    }
    return s.orient_defaults(g);
}

EdgeSubset& EdgeSubset::orient_defaults(const Graph& g) {
    for (int e = 0; e < edge_count(); ++e)
        if (contains(e) && !orientation(e)) orientation_[static_cast<std::size_t>(e)] = default_orientation(g.edge(e));
    return *this;
}

EdgeSubset& EdgeSubset::set_orientation(const Graph& g, int e, Orientation o) {
    const Edge& ed = g.edge(e);
    bool matches = (o.tail == ed.u && o.head == ed.v) || (o.tail == ed.v && o.head == ed.u);
    if (!matches) throw DataError("orientation", "orientation of edge " + std::to_string(e) + " does not match its endpoints");
    orientation_.at(static_cast<std::size_t>(e)) = o;
    return *this;
}

std::vector<int> EdgeSubset::members() const {
    std::vector<int> out;
    for (int e = 0; e < edge_count(); ++e)
        if (contains(e)) out.push_back(e);
    return out;
}

EdgeSubset EdgeSubset::symmetric_difference(const EdgeSubset& other) const {
    EdgeSubset out = *this;
    for (int e = 0; e < edge_count(); ++e) {
        if (!other.contains(e)) continue;
        if (out.contains(e)) {
            out.erase(e);
        } else {
            out.insert(e);
            if (other.orientation(e)) out.orientation_[static_cast<std::size_t>(e)] = other.orientation(e);
        }
    }
    return out;
}

std::string family_name(OperatorFamily f) {
    switch (f) {
        case OperatorFamily::adjacency_plain: return "adjacency_plain";
        case OperatorFamily::adjacency_generalized: return "adjacency_generalized";
        case OperatorFamily::vertex_laplacian: return "vertex_laplacian";
        case OperatorFamily::random_walk: return "random_walk";
        case OperatorFamily::ps_edge: return "ps_edge";
        case OperatorFamily::signed_incidence: return "signed_incidence";
        case OperatorFamily::edge_laplacian: return "edge_laplacian";
        case OperatorFamily::edge_laplacian_omitted: return "edge_laplacian_omitted";
        case OperatorFamily::lambda_minor: return "lambda_minor";
        case OperatorFamily::schrodinger: return "schrodinger";
        case OperatorFamily::skew_adjacency: return "skew_adjacency";
    }
    return "unknown";
}

OperatorFamily family_from_name(const std::string& name) {
    static const OperatorFamily all[] = {
        OperatorFamily::adjacency_plain,  OperatorFamily::adjacency_generalized, OperatorFamily::vertex_laplacian,
        OperatorFamily::random_walk,      OperatorFamily::ps_edge,               OperatorFamily::signed_incidence,
        OperatorFamily::edge_laplacian,   OperatorFamily::edge_laplacian_omitted, OperatorFamily::lambda_minor,
        OperatorFamily::schrodinger,      OperatorFamily::skew_adjacency};
    for (auto f : all)
        if (family_name(f) == name) return f;
    if (name == "adjacency") return OperatorFamily::adjacency_generalized;
    throw UsageError("operator family", "unknown family '" + name + "'");
}

namespace {

void check_subset(const Graph& g, const EdgeSubset& F, const char* ctx) {
    if (F.edge_count() != g.edge_count()) throw DataError(ctx, "edge subset size does not match edge count");
}

Orientation member_orientation(const EdgeSubset& F, int e, const char* ctx) {
    const auto& o = F.orientation(e);
    if (!o) throw DataError(ctx, "missing orientation for edge " + std::to_string(e) + " in F");
    return *o;
}

}  // namespace

Matrix adjacency(const Graph& g, const WeightFunction& w) {
    return generalized_adjacency(g, w, EdgeSubset::none(g.edge_count()));
}

Matrix generalized_adjacency(const Graph& g, const WeightFunction& w, const EdgeSubset& F) {
    w.check_graph(g, "generalized_adjacency");
    check_subset(g, F, "generalized_adjacency");
    Matrix a = Matrix::Zero(g.vertex_count(), g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        double x = F.contains(e) ? -w[e] : w[e];
        a(ed.u, ed.v) = x;
        a(ed.v, ed.u) = x;
    }
    return a;
}

Matrix skew_adjacency(const Graph& g, const WeightFunction& w, const EdgeSubset& F) {
    w.check_graph(g, "skew_adjacency");
    check_subset(g, F, "skew_adjacency");
    Matrix a = Matrix::Zero(g.vertex_count(), g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (F.contains(e)) {
            if (ed.is_loop()) throw DataError("skew_adjacency", "a loop cannot be oriented antisymmetrically");
            Orientation o = member_orientation(F, e, "skew_adjacency");
            a(o.tail, o.head) = w[e];
            a(o.head, o.tail) = -w[e];
        } else {
            a(ed.u, ed.v) = w[e];
            a(ed.v, ed.u) = w[e];
        }
    }
    return a;
}

Matrix degree_matrix(const Graph& g, const WeightFunction& w) {
    Matrix a = adjacency(g, w);
    return a.rowwise().sum().asDiagonal();
}

Matrix vertex_laplacian(const Graph& g, const WeightFunction& w) {
    g.require_loopless("vertex_laplacian");
    Matrix a = adjacency(g, w);
    Matrix d = a.rowwise().sum().asDiagonal();
    return d - a;
}

Matrix random_walk_matrix(const Graph& g, const WeightFunction& w) {
    g.require_loopless("random_walk_matrix");
    Matrix a = adjacency(g, w);
    Vector deg = a.rowwise().sum();
    for (int i = 0; i < g.vertex_count(); ++i)
        if (!(deg[i] > 0)) throw DataError("random_walk_matrix", "zero degree at vertex " + std::to_string(i));
    return deg.cwiseInverse().asDiagonal() * a;
}

Matrix ps_edge_matrix(const Graph& g, const WeightFunction& w, const EdgeSubset& F, bool strict) {
    w.check_graph(g, "ps_edge_matrix");
    check_subset(g, F, "ps_edge_matrix");
    const int m = g.edge_count();
    std::vector<Orientation> orient(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e)
        orient[static_cast<std::size_t>(e)] = F.contains(e) ? member_orientation(F, e, "ps_edge_matrix") : default_orientation(g.edge(e));

    Matrix a0 = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        if (!F.contains(i)) continue;
        const Orientation& oi = orient[static_cast<std::size_t>(i)];
        for (int j = 0; j < m; ++j) {
            if (!F.contains(j)) continue;
            const Orientation& oj = orient[static_cast<std::size_t>(j)];
            if (oj.tail != oi.head) continue;
            auto idx = g.edge_index(oi.head, oj.head);
            if (idx) {
                a0(i, j) = w[*idx];
            } else if (strict) {
                throw DataError("ps_edge_matrix", "pair (" + std::to_string(oi.head) + "," + std::to_string(oj.head) +
                                                      ") is not an edge");
            }
        }
    }
    return a0;
}

Matrix signed_incidence(const Graph& g, const WeightFunction& w, const EdgeSubset& F) {
    g.require_loopless("signed_incidence");
    w.check_graph(g, "signed_incidence");
    check_subset(g, F, "signed_incidence");
    Matrix mm = Matrix::Zero(g.vertex_count(), g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const double s = std::sqrt(w[e]);
        if (F.contains(e)) {
            Orientation o = member_orientation(F, e, "signed_incidence");
            mm(o.head, e) = s;
            mm(o.tail, e) = -s;
        } else {
            mm(g.edge(e).u, e) = s;
            mm(g.edge(e).v, e) = s;
        }
    }
    return mm;
}

Matrix edge_laplacian(const Graph& g, const WeightFunction& w, const EdgeSubset& F) {
    Matrix mm = signed_incidence(g, w, F);
    return mm.transpose() * mm;
}

std::vector<int> kept_edges(int edge_count, const std::vector<int>& J) {
    std::set<int> omit;
    for (int j : J) {
        if (j < 0 || j >= edge_count) throw DataError("omitted edges", "index " + std::to_string(j) + " out of range");
        omit.insert(j);
    }
    std::vector<int> kept;
    for (int e = 0; e < edge_count; ++e)
        if (!omit.count(e)) kept.push_back(e);
    return kept;
}

Matrix edge_laplacian_omitted(const Graph& g, const WeightFunction& w, const EdgeSubset& F, const std::vector<int>& J) {
    std::vector<int> kept = kept_edges(g.edge_count(), J);
    Matrix mm = signed_incidence(g, w, F);
    Matrix mj(mm.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t k = 0; k < kept.size(); ++k) mj.col(static_cast<Eigen::Index>(k)) = mm.col(kept[k]);
    return mj.transpose() * mj;
}

namespace {

Matrix drop_row_col(const Matrix& m, int row, int col) {
    Matrix out(m.rows() - 1, m.cols() - 1);
    for (Eigen::Index r = 0, orow = 0; r < m.rows(); ++r) {
        if (r == row) continue;
        for (Eigen::Index c = 0, ocol = 0; c < m.cols(); ++c) {
            if (c == col) continue;
            out(orow, ocol++) = m(r, c);
        }
        ++orow;
    }
    return out;
}

Vector drop_entry(const Vector& v, int idx) {
    Vector out(v.size() - 1);
    for (Eigen::Index i = 0, o = 0; i < v.size(); ++i)
        if (i != idx) out[o++] = v[i];
    return out;
}

void check_lambda_indices(int size, int i1, int i2) {
    if (i1 < 0 || i1 >= size || i2 < 0 || i2 >= size)
        throw DataError("lambda_minor", "omitted indices (" + std::to_string(i1) + "," + std::to_string(i2) +
                                            ") out of range [0," + std::to_string(size) + ")");
}

}  // namespace

Matrix lambda_minor(const Graph& g, const WeightFunction& w, const EdgeSubset& F, const std::vector<int>& J, int i1,
                    int i2) {
    Matrix dj = edge_laplacian_omitted(g, w, F, J);
    check_lambda_indices(static_cast<int>(dj.rows()), i1, i2);
    return drop_row_col(dj, i1, i2);
}

Matrix schrodinger_operator(const Graph& g, const WeightFunction& w, const Vector& potential) {
    if (potential.size() != g.vertex_count())
        throw DataError("schrodinger_operator", "potential length does not match vertex count");
    Matrix s = vertex_laplacian(g, w);
    s.diagonal() += potential;
    return s;
}

Vector transform_schrodinger_potential(const Graph& g, const WeightFunction& w, const Vector& potential,
                                       const ConformalFactor& u) {
    if (potential.size() != g.vertex_count())
        throw DataError("transform_schrodinger_potential", "potential length does not match vertex count");
    WeightFunction wt = apply_conformal_factor(g, w, u);
    Vector deg = adjacency(g, w).rowwise().sum();
    Vector deg_t = adjacency(g, wt).rowwise().sum();
    Vector out(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) out[i] = std::exp(2.0 * u[i]) * (potential[i] + deg[i]) - deg_t[i];
    return out;
}

Matrix build_operator(const OperatorSpec& spec, const Graph& g, const WeightFunction& w) {
    switch (spec.family) {
        case OperatorFamily::adjacency_plain: return adjacency(g, w);
        case OperatorFamily::adjacency_generalized: return generalized_adjacency(g, w, spec.F);
        case OperatorFamily::vertex_laplacian: return vertex_laplacian(g, w);
        case OperatorFamily::random_walk: return random_walk_matrix(g, w);
        case OperatorFamily::ps_edge: return ps_edge_matrix(g, w, spec.F, spec.strict);
        case OperatorFamily::signed_incidence: return signed_incidence(g, w, spec.F);
        case OperatorFamily::edge_laplacian: return edge_laplacian(g, w, spec.F);
        case OperatorFamily::edge_laplacian_omitted: return edge_laplacian_omitted(g, w, spec.F, spec.J);
        case OperatorFamily::lambda_minor: return lambda_minor(g, w, spec.F, spec.J, spec.i1, spec.i2);
        case OperatorFamily::schrodinger: return schrodinger_operator(g, w, spec.potential);
        case OperatorFamily::skew_adjacency: return skew_adjacency(g, w, spec.F);
    }
    throw UsageError("build_operator", "unsupported family");
}

bool acts_on_vertices(OperatorFamily f) {
    switch (f) {
        case OperatorFamily::adjacency_plain:
        case OperatorFamily::adjacency_generalized:
        case OperatorFamily::vertex_laplacian:
        case OperatorFamily::random_walk:
        case OperatorFamily::schrodinger:
        case OperatorFamily::skew_adjacency: return true;
        default: return false;
    }
}

Vector edge_half_factor(const Graph& g, const ConformalFactor& u, const std::vector<int>& edges) {
    Vector d(static_cast<Eigen::Index>(edges.size()));
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge& ed = g.edge(edges[k]);
        d[static_cast<Eigen::Index>(k)] = std::exp(0.5 * (u[ed.u] + u[ed.v]));
    }
    return d;
}

CovarianceLaw vertex_candidate_law(const ConformalFactor& u) {
    Vector d = u.values().array().exp().matrix();
    return {d, d};
}

CovarianceLaw covariance_law(const OperatorSpec& spec, const Graph& g, const WeightFunction& w,
                             const ConformalFactor& u) {
    u.check_graph(g, "covariance_law");
    const int m = g.edge_count();
    std::vector<int> all_edges(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) all_edges[static_cast<std::size_t>(e)] = e;

    switch (spec.family) {
        case OperatorFamily::adjacency_plain:
        case OperatorFamily::adjacency_generalized:
        case OperatorFamily::schrodinger:
        case OperatorFamily::skew_adjacency: return vertex_candidate_law(u);
        case OperatorFamily::random_walk: {
            WeightFunction wt = apply_conformal_factor(g, w, u);
            Vector deg = adjacency(g, w).rowwise().sum();
            Vector deg_t = adjacency(g, wt).rowwise().sum();
            Vector eu = u.values().array().exp().matrix();
            Vector left = eu.cwiseProduct(deg).cwiseQuotient(deg_t);
            return {left, eu};
        }
        case OperatorFamily::ps_edge: {
            Vector right(m);
            for (int e = 0; e < m; ++e) right[e] = std::exp(u[g.edge(e).u] + u[g.edge(e).v]);
            return {Vector::Ones(m), right};
        }
        case OperatorFamily::signed_incidence:
            return {Vector::Ones(g.vertex_count()), edge_half_factor(g, u, all_edges)};
        case OperatorFamily::edge_laplacian: {
            Vector d = edge_half_factor(g, u, all_edges);
            return {d, d};
        }
        case OperatorFamily::edge_laplacian_omitted: {
            Vector d = edge_half_factor(g, u, kept_edges(m, spec.J));
            return {d, d};
        }
        case OperatorFamily::lambda_minor: {
            Vector d = edge_half_factor(g, u, kept_edges(m, spec.J));
            check_lambda_indices(static_cast<int>(d.size()), spec.i1, spec.i2);
            return {drop_entry(d, spec.i1), drop_entry(d, spec.i2)};
        }
        case OperatorFamily::vertex_laplacian: break;
    }
    throw DataError("covariance_law", "family " + family_name(spec.family) + " has no conformal transformation law");
}

OperatorSpec transformed_spec(const OperatorSpec& spec, const Graph& g, const WeightFunction& w,
                              const ConformalFactor& u) {
    OperatorSpec out = spec;
    if (spec.family == OperatorFamily::schrodinger)
        out.potential = transform_schrodinger_potential(g, w, spec.potential, u);
    return out;
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double check_covariance(const OperatorSpec& spec, const Graph& g, const WeightFunction& w, const ConformalFactor& u,
                        const CovarianceLaw& law) {
    WeightFunction wt = apply_conformal_factor(g, w, u);
    Matrix s = build_operator(spec, g, w);
    Matrix st = build_operator(transformed_spec(spec, g, w, u), g, wt);
    if (law.left.size() != s.rows() || law.right.size() != s.cols())
        throw DataError("check_covariance", "law dimensions do not match the operator");
    Matrix predicted = law.left.asDiagonal() * s * law.right.asDiagonal();
    return max_abs(st - predicted);
}

double check_covariance(const OperatorSpec& spec, const Graph& g, const WeightFunction& w, const ConformalFactor& u) {
    return check_covariance(spec, g, w, u, covariance_law(spec, g, w, u));
}

}  // namespace cgl
