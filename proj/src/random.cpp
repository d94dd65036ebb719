#include "cgl/random.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace cgl {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

int uniform_int(Rng& rng, int lo, int hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng() % span);
}

WeightFunction random_weights(int edge_count, const WeightSampler& sampler, Rng& rng) {
    Vector lw(edge_count);
    for (int e = 0; e < edge_count; ++e) lw[e] = uniform(rng, sampler.log_lo, sampler.log_hi);
    return WeightFunction::from_log(lw);
}

ConformalFactor random_factor(int vertex_count, double amplitude, Rng& rng) {
    Vector u(vertex_count);
    for (int v = 0; v < vertex_count; ++v) u[v] = uniform(rng, -amplitude, amplitude);
    return ConformalFactor(u);
}

namespace {

Graph finish(int n, std::set<std::pair<int, int>> pairs) {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back({a, b});
    return Graph(n, std::move(edges));
}

}  // namespace

Graph random_connected_graph(int n, double p, Rng& rng) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(uniform_int(rng, 0, i))]);
    std::set<std::pair<int, int>> pairs;
    for (int i = 1; i < n; ++i) {
        int a = order[static_cast<std::size_t>(i)];
        int b = order[static_cast<std::size_t>(uniform_int(rng, 0, i - 1))];
        pairs.insert(std::minmax(a, b));
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (uniform01(rng) < p) pairs.insert({a, b});
    return finish(n, std::move(pairs));
}

Graph random_connected_bipartite(int a, int b, double p, Rng& rng) {
    // Grow a spanning tree that alternates sides, then add cross pairs.
    const int n = a + b;
    std::set<std::pair<int, int>> pairs;
    std::vector<int> left{0}, right;
    std::vector<int> pending_left, pending_right;
    for (int i = 1; i < a; ++i) pending_left.push_back(i);
    for (int j = a; j < n; ++j) pending_right.push_back(j);
    while (!pending_left.empty() || !pending_right.empty()) {
        bool take_right = pending_left.empty() || (!pending_right.empty() && (right.empty() || uniform01(rng) < 0.5));
        if (take_right) {
            int v = pending_right.back();
            pending_right.pop_back();
            int u = left[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(left.size()) - 1))];
            pairs.insert(std::minmax(u, v));
            right.push_back(v);
        } else {
            int v = pending_left.back();
            pending_left.pop_back();
            int u = right[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(right.size()) - 1))];
            pairs.insert(std::minmax(u, v));
            left.push_back(v);
        }
    }
    for (int i = 0; i < a; ++i)
        for (int j = a; j < n; ++j)
            if (uniform01(rng) < p) pairs.insert({i, j});
    return finish(n, std::move(pairs));
}

}  // namespace cgl
