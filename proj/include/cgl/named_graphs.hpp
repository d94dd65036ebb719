#pragma once

#include <string>
#include <vector>

#include "cgl/discriminant.hpp"
#include "cgl/graph.hpp"

namespace cgl {

Graph cycle_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);
Graph complete_graph(int n);
Graph complete_bipartite_graph(int a, int b);
Graph petersen_graph();

// C_5 with chords (v1,v3), (v1,v4); edges (0,1),(1,2),(2,3),(3,4),(4,0),(0,2),(0,3).
Graph g52_graph();
// a = w(v1,v2), b = w(v1,v5) on canonical weights.
ModuliChart g52_chart();

// C_6 with chords (v1,v5), (v2,v4), (v3,v6), in that order after the cycle.
Graph g63_graph();
// x = w(v1,v5), y = w(v3,v4), z = w(v2,v3) on canonical weights.
ModuliChart g63_chart();
// The subset F = {(v1,v2)}.
std::vector<int> g63_subset();

struct NamedGraph {
    std::string name;
    Graph graph;
    ModuliChart chart;
    std::vector<int> default_F;
};

// "c[6]", "path[4]", "star[3]", "complete[4]", "complete_bipartite[2,3]",
// "g52", "g63", "petersen".
NamedGraph builtin_graph(const std::string& spec);
std::vector<std::string> builtin_names();

}  // namespace cgl
