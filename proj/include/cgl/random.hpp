#pragma once

#include <cstdint>
#include <random>

#include "cgl/graph.hpp"
#include "cgl/spectral.hpp"

namespace cgl {

inline constexpr std::uint64_t kDefaultSeed = 20140705;

using Rng = std::mt19937_64;

// splitmix64 finalizer; independent per-index streams from one seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Uniform on [0,1) from the top 53 bits; identical on every platform.
double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

WeightFunction random_weights(int edge_count, const WeightSampler& sampler, Rng& rng);
ConformalFactor random_factor(int vertex_count, double amplitude, Rng& rng);

// Random spanning tree plus each remaining pair independently with
// probability p; always connected.
Graph random_connected_graph(int n, double p, Rng& rng);

// Connected bipartite graph with parts {0..a-1} and {a..a+b-1}.
Graph random_connected_bipartite(int a, int b, double p, Rng& rng);

}  // namespace cgl
