#include "cgl/graph.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "cgl/error.hpp"

namespace cgl {

Graph::Graph(int vertex_count, std::vector<Edge> edges, bool loops_allowed)
    : n_(vertex_count), edges_(std::move(edges)), loops_allowed_(loops_allowed) {
    if (n_ <= 0) throw DataError("graph", "vertex count must be positive");
    std::set<std::pair<int, int>> seen;
    incident_.assign(static_cast<std::size_t>(n_), {});
    for (int e = 0; e < edge_count(); ++e) {
        const Edge& ed = edges_[static_cast<std::size_t>(e)];
        if (ed.u < 0 || ed.u >= n_ || ed.v < 0 || ed.v >= n_)
            throw DataError("graph", "edge " + std::to_string(e) + " has an endpoint out of range");
        if (ed.is_loop() && !loops_allowed_)
            throw DataError("graph", "edge " + std::to_string(e) + " is a loop but loops are not allowed");
        auto key = std::minmax(ed.u, ed.v);
        if (!seen.insert(key).second)
            throw DataError("graph", "duplicate edge (" + std::to_string(ed.u) + "," + std::to_string(ed.v) + ")");
        incident_[static_cast<std::size_t>(ed.u)].push_back(e);
        if (!ed.is_loop()) incident_[static_cast<std::size_t>(ed.v)].push_back(e);
    }
}

bool Graph::has_loops() const {
    for (const auto& e : edges_)
        if (e.is_loop()) return true;
    return false;
}

std::optional<int> Graph::edge_index(int a, int b) const {
    if (a < 0 || a >= n_) return std::nullopt;
    for (int e : incident_edges(a)) {
        const Edge& ed = edges_[static_cast<std::size_t>(e)];
        if ((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)) return e;
    }
    return std::nullopt;
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    for (int e : incident_edges(v)) out.push_back(edge(e).other(v));
    return out;
}

int Graph::degree(int v) const {
    int d = 0;
    for (int e : incident_edges(v)) d += edge(e).is_loop() ? 2 : 1;
    return d;
}

bool Graph::is_connected() const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : incident_edges(v)) {
            int x = edge(e).other(v);
            if (!seen[static_cast<std::size_t>(x)]) {
                seen[static_cast<std::size_t>(x)] = 1;
                ++count;
                stack.push_back(x);
            }
        }
    }
    return count == n_;
}

void Graph::require_loopless(const char* context) const {
    if (has_loops()) throw DataError(context, "loops are only supported by adjacency-type operators");
}

WeightFunction::WeightFunction(Vector values) : values_(std::move(values)) {
    for (Eigen::Index i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]) || values_[i] <= 0.0)
            throw DataError("weights", "weight " + std::to_string(i) + " must be finite and strictly positive");
}

WeightFunction WeightFunction::unit(int edge_count) { return WeightFunction(Vector::Ones(edge_count)); }

WeightFunction WeightFunction::from_log(const Vector& log_values) {
    return WeightFunction(log_values.array().exp().matrix());
}

void WeightFunction::check_graph(const Graph& g, const char* context) const {
    if (size() != g.edge_count())
        throw DataError(context, "weight count " + std::to_string(size()) + " does not match edge count " +
                                     std::to_string(g.edge_count()));
}

ConformalFactor::ConformalFactor(Vector values) : values_(std::move(values)) {
    for (Eigen::Index i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            throw DataError("conformal factor", "entry " + std::to_string(i) + " is not finite");
}

void ConformalFactor::check_graph(const Graph& g, const char* context) const {
    if (size() != g.vertex_count())
        throw DataError(context, "factor length " + std::to_string(size()) + " does not match vertex count " +
                                     std::to_string(g.vertex_count()));
}

}  // namespace cgl
