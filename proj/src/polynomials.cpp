#include "cgl/polynomials.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <Eigen/LU>

#include "cgl/error.hpp"
#include "cgl/moduli.hpp"

namespace cgl {

namespace {

void require_square(const Matrix& m, const char* ctx) {
    if (m.rows() != m.cols()) throw DataError(ctx, "matrix is not square");
}

std::map<Partition, double> character_table(const CharacterSpec& chi, int n) {
    validate_character(chi, n);
    std::map<Partition, double> t;
    for (const Partition& mu : partitions_of(n)) t[mu] = character_value(chi, mu);
    return t;
}

double identity_value(const CharacterSpec& chi, int n) {
    if (n == 0) return 1.0;
    return character_value(chi, Partition(static_cast<std::size_t>(n), 1));
}

// Visits every permutation sigma with all M(i, sigma(i)) structurally nonzero.
template <class Nonzero, class Leaf>
void for_each_permutation(int n, Nonzero nonzero, Leaf leaf) {
    std::vector<int> perm(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::function<void(int)> rec = [&](int row) {
        if (row == n) {
            leaf(perm);
            return;
        }
        for (int c = 0; c < n; ++c) {
            if (used[static_cast<std::size_t>(c)] || !nonzero(row, c)) continue;
            used[static_cast<std::size_t>(c)] = 1;
            perm[static_cast<std::size_t>(row)] = c;
            rec(row + 1);
            used[static_cast<std::size_t>(c)] = 0;
        }
    };
    rec(0);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) const {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    }
};

struct WeightedPair {
    int u, v, index;
};

// Spanning trees of a multigraph on n vertices, loops ignored. Union by
// reassignment without path compression so that undo is a single write.
void enumerate_spanning_trees(int n, const std::vector<WeightedPair>& edges,
                              const std::function<void(const std::vector<int>&)>& visit) {
    if (n <= 1) {
        visit({});
        return;
    }
    UnionFind uf(n);
    std::vector<int> chosen;
    const int m = static_cast<int>(edges.size());
    std::function<void(int)> rec = [&](int k) {
        if (static_cast<int>(chosen.size()) == n - 1) {
            visit(chosen);
            return;
        }
        if (m - k < n - 1 - static_cast<int>(chosen.size())) return;
        const WeightedPair& e = edges[static_cast<std::size_t>(k)];
        int a = uf.find(e.u), b = uf.find(e.v);
        if (a != b) {
            uf.parent[static_cast<std::size_t>(a)] = b;
            chosen.push_back(e.index);
            rec(k + 1);
            chosen.pop_back();
            uf.parent[static_cast<std::size_t>(a)] = a;
        }
        rec(k + 1);
    };
    rec(0);
}

std::vector<WeightedPair> loopless_pairs(const Graph& g) {
    std::vector<WeightedPair> out;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!g.edge(e).is_loop()) out.push_back({g.edge(e).u, g.edge(e).v, e});
    return out;
}

// M(E,w) with default orientations; loop columns vanish.
Matrix oriented_incidence(const Graph& g, const WeightFunction& w) {
    w.check_graph(g, "incidence");
    Matrix mm = Matrix::Zero(g.vertex_count(), g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop()) continue;
        Orientation o = default_orientation(ed);
        mm(o.head, e) = std::sqrt(w[e]);
        mm(o.tail, e) = -std::sqrt(w[e]);
    }
    return mm;
}

Matrix drop_vertices(const Matrix& lap, const std::vector<char>& drop) {
    std::vector<int> keep;
    for (int i = 0; i < lap.rows(); ++i)
        if (!drop[static_cast<std::size_t>(i)]) keep.push_back(i);
    const auto k = static_cast<Eigen::Index>(keep.size());
    Matrix out(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c) out(r, c) = lap(keep[static_cast<std::size_t>(r)], keep[static_cast<std::size_t>(c)]);
    return out;
}

ScalingCheck make_check(double transformed, double predicted, double base_scaled) {
    ScalingCheck c;
    c.transformed = transformed;
    c.predicted = predicted;
    c.residual = std::abs(transformed - predicted);
    c.tolerance = 1e-9 * (1.0 + base_scaled);
    c.passed = c.residual <= c.tolerance;
    return c;
}

}  // namespace

double determinant(const Matrix& m) {
    require_square(m, "determinant");
    if (m.rows() == 0) return 1.0;
    return m.partialPivLu().determinant();
}

double permanent(const Matrix& m) {
    require_square(m, "permanent");
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 1.0;
    if (n > kMaxPermanentSize)
        throw DataError("permanent", "dimension " + std::to_string(n) + " exceeds " + std::to_string(kMaxPermanentSize));
    // perm = (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} m_ij
    Vector rowsum = Vector::Zero(n);
    double total = 0.0;
    unsigned long long gray = 0;
    for (unsigned long long k = 1; k < (1ULL << n); ++k) {
        unsigned long long next = k ^ (k >> 1);
        unsigned long long diff = next ^ gray;
        int j = __builtin_ctzll(diff);
        if (next & diff)
            rowsum += m.col(j);
        else
            rowsum -= m.col(j);
        gray = next;
        double prod = rowsum.prod();
        total += (__builtin_popcountll(gray) & 1) ? -prod : prod;
    }
    return (n & 1) ? -total : total;
}

double pfaffian(const Matrix& input) {
    require_square(input, "pfaffian");
    const int n = static_cast<int>(input.rows());
    if (n % 2 != 0) throw DataError("pfaffian", "odd dimension " + std::to_string(n));
    const double scale = std::max(1.0, max_abs(input));
    if (max_abs(input + input.transpose()) > 1e-10 * scale) throw DataError("pfaffian", "matrix is not skew-symmetric");
    if (n == 0) return 1.0;

    Matrix a = input;
    double pf = 1.0;
    for (int k = 0; k < n - 1; k += 2) {
        Eigen::Index rel;
        a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&rel);
        const int kp = k + 1 + static_cast<int>(rel);
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            pf = -pf;
        }
        if (a(k + 1, k) == 0.0) return 0.0;
        pf *= a(k, k + 1);
        if (k + 2 < n) {
            const int r = n - k - 2;
            Vector tau = a.row(k).tail(r).transpose() / a(k, k + 1);
            Vector col = a.col(k + 1).tail(r);
            a.bottomRightCorner(r, r) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

double immanant(const Matrix& m, const CharacterSpec& chi) {
    require_square(m, "immanant");
    const int n = static_cast<int>(m.rows());
    if (n > kMaxImmanantSize)
        throw DataError("immanant", "dimension " + std::to_string(n) + " exceeds " + std::to_string(kMaxImmanantSize));
    auto table = character_table(chi, n);
    if (n == 0) return table.begin()->second;
    double total = 0.0;
    for_each_permutation(
        n, [&](int r, int c) { return m(r, c) != 0.0; },
        [&](const std::vector<int>& perm) {
            double prod = table.at(cycle_type(perm));
            if (prod == 0.0) return;
            for (int i = 0; i < n; ++i) prod *= m(i, perm[static_cast<std::size_t>(i)]);
            total += prod;
        });
    return total;
}

ScalingCheck immanant_transformation_check(const Graph& g, const WeightFunction& w, const ConformalFactor& u,
                                           const EdgeSubset& F, const CharacterSpec& chi) {
    u.check_graph(g, "immanant_transformation_check");
    WeightFunction wt = apply_conformal_factor(g, w, u);
    const double base = immanant(generalized_adjacency(g, w, F), chi);
    const double transformed = immanant(generalized_adjacency(g, wt, F), chi);
    const double det2 = std::exp(2.0 * u.values().sum());
    return make_check(transformed, det2 * base, std::abs(base) * det2);
}

ScalingCheck pfaffian_transformation_check(const Graph& g, const WeightFunction& w, const ConformalFactor& u) {
    u.check_graph(g, "pfaffian_transformation_check");
    EdgeSubset all = EdgeSubset::all(g);
    WeightFunction wt = apply_conformal_factor(g, w, u);
    const double base = pfaffian(skew_adjacency(g, w, all));
    const double transformed = pfaffian(skew_adjacency(g, wt, all));
    const double det = std::exp(u.values().sum());
    return make_check(transformed, det * base, std::abs(base) * det);
}

void MultivariatePolynomial::add_term(const Exponents& exponents, double coeff) {
    if (static_cast<int>(exponents.size()) != variables_)
        throw DataError("polynomial", "exponent vector has wrong length");
    if (coeff == 0.0) return;
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        terms_.emplace(exponents, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
}

double MultivariatePolynomial::evaluate(const Vector& x) const {
    return evaluated_terms(x).sum();
}

Vector MultivariatePolynomial::coefficient_vector() const {
    Vector c(static_cast<Eigen::Index>(terms_.size()));
    Eigen::Index k = 0;
    for (const auto& [e, coeff] : terms_) c[k++] = coeff;
    return c;
}

Vector MultivariatePolynomial::evaluated_terms(const Vector& x) const {
    if (x.size() != variables_) throw DataError("polynomial", "point has wrong number of variables");
    Vector out(static_cast<Eigen::Index>(terms_.size()));
    Eigen::Index k = 0;
    for (const auto& [e, coeff] : terms_) {
        double t = coeff;
        for (int i = 0; i < variables_; ++i)
            if (e[static_cast<std::size_t>(i)] != 0) t *= std::pow(x[i], e[static_cast<std::size_t>(i)]);
        out[k++] = t;
    }
    return out;
}

MultivariatePolynomial symbolic_immanant(const Graph& g, const EdgeSubset& F, const CharacterSpec& chi) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    if (n > kMaxSymbolicSize)
        throw DataError("symbolic_immanant", "dimension " + std::to_string(n) + " exceeds " + std::to_string(kMaxSymbolicSize));
    if (F.edge_count() != m) throw DataError("symbolic_immanant", "edge subset size does not match edge count");
    auto table = character_table(chi, n);

    // Entry (r,c) of A(F,w) is sign * w(edge).
    std::vector<int> edge_at(static_cast<std::size_t>(n * n), -1);
    for (int e = 0; e < m; ++e) {
        const Edge& ed = g.edge(e);
        edge_at[static_cast<std::size_t>(ed.u * n + ed.v)] = e;
        edge_at[static_cast<std::size_t>(ed.v * n + ed.u)] = e;
    }
    MultivariatePolynomial p(m);
    std::vector<int> exps(static_cast<std::size_t>(m));
    for_each_permutation(
        n, [&](int r, int c) { return edge_at[static_cast<std::size_t>(r * n + c)] >= 0; },
        [&](const std::vector<int>& perm) {
            double coeff = table.at(cycle_type(perm));
            if (coeff == 0.0) return;
            std::fill(exps.begin(), exps.end(), 0);
            for (int i = 0; i < n; ++i) {
                int e = edge_at[static_cast<std::size_t>(i * n + perm[static_cast<std::size_t>(i)])];
                ++exps[static_cast<std::size_t>(e)];
                if (F.contains(e)) coeff = -coeff;
            }
            p.add_term(exps, coeff);
        });
    return p;
}

ProjectivePoint projective_coefficients(const MultivariatePolynomial& p) {
    return ProjectivePoint(p.coefficient_vector());
}

ProjectivePoint projective_evaluated_terms(const MultivariatePolynomial& p, const WeightFunction& w) {
    return ProjectivePoint(p.evaluated_terms(w.values()));
}

std::vector<std::vector<int>> spanning_trees(const Graph& g) {
    if (g.vertex_count() > kMaxEnumerationVertices)
        throw DataError("spanning_trees", "more than " + std::to_string(kMaxEnumerationVertices) + " vertices");
    std::vector<std::vector<int>> out;
    enumerate_spanning_trees(g.vertex_count(), loopless_pairs(g), [&](const std::vector<int>& t) { out.push_back(t); });
    return out;
}

double tree_polynomial_determinant(const Graph& g, const WeightFunction& w, int omitted_vertex) {
    if (omitted_vertex < 0 || omitted_vertex >= g.vertex_count())
        throw DataError("tree_polynomial", "omitted vertex " + std::to_string(omitted_vertex) + " out of range");
    w.check_graph(g, "tree_polynomial");
    if (!g.is_connected()) return 0.0;
    Matrix mm = oriented_incidence(g, w);
    std::vector<char> drop(static_cast<std::size_t>(g.vertex_count()), 0);
    drop[static_cast<std::size_t>(omitted_vertex)] = 1;
    return determinant(drop_vertices(mm * mm.transpose(), drop));
}

double tree_polynomial_enumerated(const Graph& g, const WeightFunction& w) {
    w.check_graph(g, "tree_polynomial");
    if (g.vertex_count() > kMaxEnumerationVertices)
        throw DataError("tree_polynomial", "more than " + std::to_string(kMaxEnumerationVertices) + " vertices");
    double total = 0.0;
    enumerate_spanning_trees(g.vertex_count(), loopless_pairs(g), [&](const std::vector<int>& t) {
        double prod = 1.0;
        for (int e : t) prod *= w[e];
        total += prod;
    });
    return total;
}

MultivariatePolynomial tree_polynomial_symbolic(const Graph& g) {
    if (g.vertex_count() > kMaxEnumerationVertices)
        throw DataError("tree_polynomial", "more than " + std::to_string(kMaxEnumerationVertices) + " vertices");
    MultivariatePolynomial p(g.edge_count());
    enumerate_spanning_trees(g.vertex_count(), loopless_pairs(g), [&](const std::vector<int>& t) {
        std::vector<int> exps(static_cast<std::size_t>(g.edge_count()), 0);
        for (int e : t) exps[static_cast<std::size_t>(e)] = 1;
        p.add_term(exps, 1.0);
    });
    return p;
}

namespace {

std::vector<char> root_mask(const Graph& g, const std::vector<int>& roots) {
    if (roots.empty()) throw DataError("forest_polynomial", "root set is empty");
    std::vector<char> mask(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int r : roots) {
        if (r < 0 || r >= g.vertex_count()) throw DataError("forest_polynomial", "root " + std::to_string(r) + " out of range");
        mask[static_cast<std::size_t>(r)] = 1;
    }
    return mask;
}

}  // namespace

double forest_polynomial(const Graph& g, const WeightFunction& w, const std::vector<int>& roots) {
    std::vector<char> mask = root_mask(g, roots);
    Matrix mm = oriented_incidence(g, w);
    return determinant(drop_vertices(mm * mm.transpose(), mask));
}

double forest_polynomial_enumerated(const Graph& g, const WeightFunction& w, const std::vector<int>& roots) {
    w.check_graph(g, "forest_polynomial");
    std::vector<char> mask = root_mask(g, roots);
    if (g.vertex_count() > kMaxEnumerationVertices)
        throw DataError("forest_polynomial", "more than " + std::to_string(kMaxEnumerationVertices) + " vertices");
    // Rooted forests are the spanning trees of G with all roots merged.
    std::vector<int> label(static_cast<std::size_t>(g.vertex_count()));
    int next = 1;
    for (int v = 0; v < g.vertex_count(); ++v) label[static_cast<std::size_t>(v)] = mask[static_cast<std::size_t>(v)] ? 0 : next++;
    std::vector<WeightedPair> pairs;
    for (int e = 0; e < g.edge_count(); ++e) {
        int a = label[static_cast<std::size_t>(g.edge(e).u)], b = label[static_cast<std::size_t>(g.edge(e).v)];
        if (a != b) pairs.push_back({a, b, e});
    }
    double total = 0.0;
    enumerate_spanning_trees(next, pairs, [&](const std::vector<int>& t) {
        double prod = 1.0;
        for (int e : t) prod *= w[e];
        total += prod;
    });
    return total;
}

ZeroSetResult zero_set_membership(const Graph& g, const WeightFunction& w, const EdgeSubset& F,
                                  const CharacterSpec& chi, double tol) {
    Matrix a = generalized_adjacency(g, w, F);
    ZeroSetResult r;
    r.value = immanant(a, chi);
    double id = std::abs(identity_value(chi, g.vertex_count()));
    // Expanded permanent of |A|: a sum of nonnegative terms, exactly 0 when A
    // has no nonzero diagonal.
    r.scale = (id > 0.0 ? id : 1.0) * immanant(a.cwiseAbs(), CharacterSpec::trivial());
    r.member = std::abs(r.value) <= tol * r.scale;
    return r;
}

}  // namespace cgl
