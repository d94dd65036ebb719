#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cgl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Real-valued function on vertices (Hom(V,R)) or on edges (Hom(E,R)).
using VertexFunction = Eigen::VectorXd;
using EdgeFunction = Eigen::VectorXd;

struct Edge {
    int u = 0;
    int v = 0;

    bool is_loop() const { return u == v; }
    bool touches(int x) const { return u == x || v == x; }
    int other(int x) const { return x == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite simple graph with a fixed vertex and edge enumeration.
///
/// Vertices are 0..n-1 and edges keep the order they were given in, which
/// defines the edge indices used by every weight and operator. Loops are only
/// accepted when `loops_allowed` is set (adjacency-type operators).
class Graph {
public:
    Graph() = default;
    Graph(int vertex_count, std::vector<Edge> edges, bool loops_allowed = false);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool loops_allowed() const { return loops_allowed_; }
    bool has_loops() const;

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

    std::optional<int> edge_index(int a, int b) const;
    const std::vector<int>& incident_edges(int v) const { return incident_.at(static_cast<std::size_t>(v)); }
    std::vector<int> neighbors(int v) const;

    // Unweighted degree, a loop counted twice.
    int degree(int v) const;

    bool is_connected() const;

    // Throws DataError if the graph carries loops; `context` names the caller.
    void require_loopless(const char* context) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    bool loops_allowed_ = false;
    std::vector<std::vector<int>> incident_;
};

/// Strictly positive weight per edge; a point of W(G).
class WeightFunction {
public:
    WeightFunction() = default;
    explicit WeightFunction(Vector values);

    static WeightFunction unit(int edge_count);
    static WeightFunction from_log(const Vector& log_values);

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int e) const { return values_[e]; }
    const Vector& values() const { return values_; }
    Vector log() const { return values_.array().log().matrix(); }

    void check_graph(const Graph& g, const char* context) const;

private:
    Vector values_;
};

/// Conformal factor u in Hom(V,R).
class ConformalFactor {
public:
    ConformalFactor() = default;
    explicit ConformalFactor(Vector values);

    static ConformalFactor zero(int vertex_count) { return ConformalFactor(Vector::Zero(vertex_count)); }

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int v) const { return values_[v]; }
    const Vector& values() const { return values_; }

    void check_graph(const Graph& g, const char* context) const;

private:
    Vector values_;
};

}  // namespace cgl
