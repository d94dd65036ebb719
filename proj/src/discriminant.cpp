#include "cgl/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include <Eigen/LU>
#include <boost/math/tools/toms748_solve.hpp>

#include "cgl/error.hpp"
#include "cgl/named_graphs.hpp"
#include "cgl/nodal.hpp"
#include "parallel.hpp"

namespace cgl {

ModuliChart ModuliChart::edge_chart(std::vector<int> edges, std::vector<std::string> labels) {
    if (labels.size() != edges.size()) throw DataError("moduli chart", "one label per chart edge is required");
    ModuliChart c;
    c.kind = Kind::edge;
    c.edges = std::move(edges);
    c.labels = std::move(labels);
    return c;
}

std::string ModuliChart::describe(const Graph& g) const {
    if (kind == Kind::canonical) return "canonical kernel coordinates";
    std::ostringstream os;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = g.edge(edges[i]);
        if (i) os << ", ";
        os << labels[i] << " = w(v" << e.u + 1 << ",v" << e.v + 1 << ")";
    }
    return os.str();
}

WeightFunction canonical_weight_from_coordinates(const ModuliDescription& desc, const Vector& coords) {
    if (coords.size() != desc.dimension)
        throw DataError("canonical_weight_from_coordinates",
                        "expected " + std::to_string(desc.dimension) + " coordinates, got " + std::to_string(coords.size()));
    if (desc.dimension == 0) return WeightFunction::unit(static_cast<int>(desc.kernel_basis.rows()));
    return WeightFunction::from_log(desc.kernel_basis * coords);
}

WeightFunction canonical_weight_from_coordinates(const Graph& g, const Vector& coords) {
    return canonical_weight_from_coordinates(moduli_description(g), coords);
}

ModuliGrid::ModuliGrid(const Graph& g, ModuliChart chart, std::vector<GridAxis> axes)
    : desc_(moduli_description(g)), chart_(std::move(chart)), axes_(std::move(axes)) {
    if (desc_.dimension > 3)
        throw DataError("moduli grid", "moduli dimension " + std::to_string(desc_.dimension) + " is outside 0..3");
    if (static_cast<int>(axes_.size()) != desc_.dimension)
        throw DataError("moduli grid", "expected " + std::to_string(desc_.dimension) + " axes, got " +
                                           std::to_string(axes_.size()));
    for (const GridAxis& a : axes_) {
        if (a.steps < 1) throw DataError("moduli grid", "axis resolution must be positive");
        if (!(a.hi > a.lo)) throw DataError("moduli grid", "axis range is empty");
        if (chart_.kind == ModuliChart::Kind::edge && !(a.lo >= 0.0))
            throw DataError("moduli grid", "edge-chart axes must lie in (0, inf)");
    }
    if (chart_.kind == ModuliChart::Kind::edge) {
        const int d = desc_.dimension;
        if (static_cast<int>(chart_.edges.size()) != d)
            throw DataError("moduli grid", "edge chart needs exactly " + std::to_string(d) + " edges");
        Matrix ks(d, d);
        for (int i = 0; i < d; ++i) {
            const int e = chart_.edges[static_cast<std::size_t>(i)];
            if (e < 0 || e >= g.edge_count()) throw DataError("moduli grid", "chart edge out of range");
            ks.row(i) = desc_.kernel_basis.row(e);
        }
        Eigen::FullPivLU<Matrix> lu(ks);
        if (lu.rank() < d) throw DataError("moduli grid", "chart edges do not determine the canonical weight");
        chart_inverse_ = lu.inverse();
    }
}

long long ModuliGrid::point_count() const {
    long long n = 1;
    for (const GridAxis& a : axes_) n *= a.steps;
    return n;
}

std::vector<int> ModuliGrid::multi_index(long long linear) const {
    std::vector<int> idx(axes_.size());
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        idx[i] = static_cast<int>(linear % axes_[i].steps);
        linear /= axes_[i].steps;
    }
    return idx;
}

long long ModuliGrid::linear_index(const std::vector<int>& idx) const {
    long long linear = 0;
    for (std::size_t i = axes_.size(); i-- > 0;) linear = linear * axes_[i].steps + idx[i];
    return linear;
}

Vector ModuliGrid::parameters(long long linear) const {
    std::vector<int> idx = multi_index(linear);
    Vector p(dimension());
    for (int i = 0; i < dimension(); ++i) p[i] = axes_[static_cast<std::size_t>(i)].at(idx[static_cast<std::size_t>(i)]);
    return p;
}

WeightFunction ModuliGrid::weight(const Vector& params) const {
    if (params.size() != dimension()) throw DataError("moduli grid", "parameter vector has wrong length");
    if (chart_.kind == ModuliChart::Kind::canonical) return canonical_weight_from_coordinates(desc_, params);
    for (Eigen::Index i = 0; i < params.size(); ++i)
        if (!(params[i] > 0.0)) throw DataError("moduli grid", "edge-chart parameters must be positive");
    Vector coords = chart_inverse_ * params.array().log().matrix();
    return canonical_weight_from_coordinates(desc_, coords);
}

namespace {

struct Evaluated {
    Vector eigenvalues;
    SignatureTriple signature;
};

Evaluated evaluate(const Graph& g, const EdgeSubset& F, const ModuliGrid& grid, const Vector& params, double zero_tol) {
    Evaluated ev;
    ev.eigenvalues = symmetric_eigenvalues(generalized_adjacency(g, grid.weight(params), F));
    ev.signature = signature_of(ev.eigenvalues, zero_tol);
    return ev;
}

// Parity of negative eigenvalues once the `generic` smallest |lambda| are set
// aside: the sign of the determinant restricted to the nongeneric part.
int reduced_parity(const Vector& eigenvalues, int generic) {
    std::vector<double> v(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
    std::sort(v.begin(), v.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    int neg = 0;
    for (std::size_t i = static_cast<std::size_t>(generic); i < v.size(); ++i) neg += v[i] < 0;
    return neg & 1;
}

}  // namespace

RegionReport scan_moduli(const Graph& g, const EdgeSubset& F, const ModuliGrid& grid, double zero_tol) {
    if (!(zero_tol > 0)) throw UsageError("scan_moduli", "zero tolerance must be positive");
    RegionReport rep;
    rep.dimension = grid.dimension();
    rep.zero_tol = zero_tol;
    const long long n = grid.point_count();
    const int nv = g.vertex_count();

    std::vector<Evaluated> evals(static_cast<std::size_t>(n));
    detail::parallel_for(static_cast<int>(n), [&](int i) {
        evals[static_cast<std::size_t>(i)] = evaluate(g, F, grid, grid.parameters(i), zero_tol);
    });

    rep.generic_multiplicity = nv;
    for (const Evaluated& e : evals) rep.generic_multiplicity = std::min(rep.generic_multiplicity, e.signature.n_zero);
    const int generic = rep.generic_multiplicity;

    rep.points.resize(static_cast<std::size_t>(n));
    std::vector<int> parity(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        GridPointResult& p = rep.points[static_cast<std::size_t>(i)];
        const Evaluated& e = evals[static_cast<std::size_t>(i)];
        p.signature = e.signature;
        p.zero_multiplicity = e.signature.n_zero;
        p.rank = nv - e.signature.n_zero;
        p.flagged = e.signature.n_zero > generic;
        rep.flagged_points += p.flagged;
        parity[static_cast<std::size_t>(i)] = reduced_parity(e.eigenvalues, generic);
    }

    // Crossings between unflagged neighbours along each axis.
    std::vector<std::pair<long long, long long>> crossings;
    for (long long i = 0; i < n; ++i) {
        if (rep.points[static_cast<std::size_t>(i)].flagged) continue;
        std::vector<int> idx = grid.multi_index(i);
        for (int ax = 0; ax < grid.dimension(); ++ax) {
            if (idx[static_cast<std::size_t>(ax)] + 1 >= grid.axes()[static_cast<std::size_t>(ax)].steps) continue;
            std::vector<int> nb = idx;
            ++nb[static_cast<std::size_t>(ax)];
            long long j = grid.linear_index(nb);
            if (rep.points[static_cast<std::size_t>(j)].flagged) continue;
            if (parity[static_cast<std::size_t>(i)] != parity[static_cast<std::size_t>(j)]) crossings.emplace_back(i, j);
        }
    }

    rep.discriminant.resize(crossings.size());
    detail::parallel_for(static_cast<int>(crossings.size()), [&](int k) {
        auto [i, j] = crossings[static_cast<std::size_t>(k)];
        const Vector p0 = grid.parameters(i), p1 = grid.parameters(j);
        const int par0 = parity[static_cast<std::size_t>(i)];
        double t0 = 0.0, t1 = 1.0;
        for (int it = 0; it < 60 && t1 - t0 > 1e-15; ++it) {
            const double tm = 0.5 * (t0 + t1);
            const Evaluated e = evaluate(g, F, grid, p0 + tm * (p1 - p0), zero_tol);
            if (reduced_parity(e.eigenvalues, generic) == par0) t0 = tm;
            else t1 = tm;
        }
        DiscriminantPoint& d = rep.discriminant[static_cast<std::size_t>(k)];
        d.params = p0 + 0.5 * (t0 + t1) * (p1 - p0);
        const Evaluated e = evaluate(g, F, grid, d.params, zero_tol);
        d.signature = e.signature;
        d.zero_multiplicity = e.signature.n_zero;
        d.smallest_abs_eigenvalue = e.eigenvalues.size() ? e.eigenvalues.cwiseAbs().minCoeff() : 0.0;
    });

    // Flood fill; neighbours join unless a crossing separates them.
    int label = 0;
    for (long long s = 0; s < n; ++s) {
        GridPointResult& start = rep.points[static_cast<std::size_t>(s)];
        if (start.flagged || start.component >= 0) continue;
        ComponentInfo info;
        info.label = label;
        std::deque<long long> queue{s};
        start.component = label;
        while (!queue.empty()) {
            long long i = queue.front();
            queue.pop_front();
            const GridPointResult& p = rep.points[static_cast<std::size_t>(i)];
            ++info.size;
            if (std::find(info.signatures.begin(), info.signatures.end(), p.signature) == info.signatures.end())
                info.signatures.push_back(p.signature);
            std::vector<int> idx = grid.multi_index(i);
            for (int ax = 0; ax < grid.dimension(); ++ax) {
                for (int step : {-1, 1}) {
                    std::vector<int> nb = idx;
                    nb[static_cast<std::size_t>(ax)] += step;
                    if (nb[static_cast<std::size_t>(ax)] < 0 ||
                        nb[static_cast<std::size_t>(ax)] >= grid.axes()[static_cast<std::size_t>(ax)].steps)
                        continue;
                    long long j = grid.linear_index(nb);
                    GridPointResult& q = rep.points[static_cast<std::size_t>(j)];
                    if (q.flagged || q.component >= 0) continue;
                    if (parity[static_cast<std::size_t>(i)] != parity[static_cast<std::size_t>(j)]) continue;
                    q.component = label;
                    queue.push_back(j);
                }
            }
        }
        std::sort(info.signatures.begin(), info.signatures.end());
        if (info.signatures.size() != 1) rep.signature_constant_on_components = false;
        rep.components.push_back(std::move(info));
        ++label;
    }
    rep.origin_component = rep.points.empty() ? -1 : rep.points.front().component;
    return rep;
}

double g52_discriminant(double a, double b) { return std::pow(a * b, 4) - a * a * a - b * b * b; }

VertexFunction g52_kernel_vector(double a, double b, double tol) {
    if (!(a > 0.0) || !(b > 0.0)) throw DataError("g52_kernel_vector", "a and b must be positive");
    if (std::abs(g52_discriminant(a, b)) > tol * std::max(1.0, a * a * a + b * b * b))
        throw DataError("g52_kernel_vector", "point is not on the discriminant");
    VertexFunction h(5);
    h << 1.0 / (b * b), a * (a * std::pow(b, 4) - 1.0) / (b * b * b), -a * a / (b * b), -1.0,
        (std::pow(a, 4) * b - 1.0) / (a * b);
    return h;
}

namespace {

// f(b) = a^4 b^4 - b^3 - a^3 is negative at 0, decreasing and then increasing,
// so it has exactly one positive root.
double solve_root(double a, double lo, double hi) {
    auto f = [a](double b) { return g52_discriminant(a, b); };
    int guard = 0;
    while (f(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 200) throw NumericalError("discriminant continuation", "no root in bracket");
    }
    while (lo > 0.0 && f(lo) > 0.0) {
        hi = lo;
        lo *= 0.5;
        if (++guard > 400) throw NumericalError("discriminant continuation", "no root in bracket");
    }
    if (lo > 0.0 && f(lo) > 0.0) lo = 0.0;
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    if (iters >= 200) throw NumericalError("discriminant continuation", "root finder did not converge");
    return 0.5 * (r.first + r.second);
}

double kernel_residual(const Matrix& a, const VertexFunction& h) { return (a * h).norm() / (a.norm() * h.norm()); }

}  // namespace

double g52_discriminant_root(double a) {
    if (!(a > 0.0)) throw DataError("g52_discriminant_root", "a must be positive");
    return solve_root(a, 0.0, 1.0);
}

G52Calibration g52_calibration(double a, double b) {
    G52Calibration c;
    c.a = a;
    c.b = b;
    ModuliGrid chart(g52_graph(), g52_chart(), {GridAxis{0.0, 1.0, 1}, GridAxis{0.0, 1.0, 1}});
    Matrix A = adjacency(g52_graph(), chart.weight(Vector{{a, b}}));
    c.printed.resize(5);
    c.printed << a * a / (b * b), std::pow(a, 5) - a / b, -a * a, -1.0, 1.0;
    c.derived = g52_kernel_vector(a, b, 1e-6);
    c.printed_residual = kernel_residual(A, c.printed);
    c.derived_residual = kernel_residual(A, c.derived);
    std::vector<int> perm{0, 1, 2, 3, 4};
    c.best_permuted_printed_residual = c.printed_residual;
    do {
        VertexFunction h(5);
        for (int i = 0; i < 5; ++i) h[perm[static_cast<std::size_t>(i)]] = c.printed[i];
        c.best_permuted_printed_residual = std::min(c.best_permuted_printed_residual, kernel_residual(A, h));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return c;
}

std::vector<PsiSample> psi_profile_along_discriminant(int edge, int n_points, double a_lo, double a_hi) {
    const Graph g = g52_graph();
    if (edge < 0 || edge >= g.edge_count()) throw DataError("psi_profile", "edge index out of range");
    if (n_points < 2) throw DataError("psi_profile", "at least two points are required");
    if (!(a_lo > 0.0) || !(a_hi > a_lo)) throw DataError("psi_profile", "invalid range for a");
    ModuliGrid chart(g, g52_chart(), {GridAxis{0.0, 1.0, 1}, GridAxis{0.0, 1.0, 1}});
    std::vector<PsiSample> out;
    double b_prev = 1.0;
    for (int k = 0; k < n_points; ++k) {
        PsiSample s;
        s.a = a_lo + (a_hi - a_lo) * k / (n_points - 1);
        s.b = solve_root(s.a, 0.5 * b_prev, 2.0 * b_prev);
        b_prev = s.b;
        WeightFunction w = chart.weight(Vector{{s.a, s.b}});
        VertexFunction h = g52_kernel_vector(s.a, s.b, 1e-9);
        s.psi = psi_map(g, w, h)[edge];
        s.residual = (adjacency(g, w) * h).norm() / h.norm();
        out.push_back(s);
    }
    return out;
}

}  // namespace cgl
