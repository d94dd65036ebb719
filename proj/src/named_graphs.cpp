#include "cgl/named_graphs.hpp"

#include <regex>

#include "cgl/error.hpp"

namespace cgl {

namespace {

void require_at_least(int value, int min, const char* ctx) {
    if (value < min) throw DataError(ctx, "size must be at least " + std::to_string(min));
}

}  // namespace

Graph cycle_graph(int n) {
    require_at_least(n, 3, "cycle_graph");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return Graph(n, e);
}

Graph path_graph(int n) {
    require_at_least(n, 1, "path_graph");
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Graph(n, e);
}

Graph star_graph(int leaves) {
    require_at_least(leaves, 1, "star_graph");
    std::vector<Edge> e;
    for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
    return Graph(leaves + 1, e);
}

Graph complete_graph(int n) {
    require_at_least(n, 1, "complete_graph");
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return Graph(n, e);
}

Graph complete_bipartite_graph(int a, int b) {
    require_at_least(a, 1, "complete_bipartite_graph");
    require_at_least(b, 1, "complete_bipartite_graph");
    std::vector<Edge> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.push_back({i, a + j});
    return Graph(a + b, e);
}

Graph petersen_graph() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5});
    for (int i = 0; i < 5; ++i) e.push_back({i, i + 5});
    for (int i = 0; i < 5; ++i) e.push_back({5 + i, 5 + (i + 2) % 5});
    return Graph(10, e);
}

Graph g52_graph() {
    return Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {0, 3}});
}

ModuliChart g52_chart() { return ModuliChart::edge_chart({0, 4}, {"a", "b"}); }

Graph g63_graph() {
    return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 4}, {1, 3}, {2, 5}});
}

ModuliChart g63_chart() { return ModuliChart::edge_chart({6, 2, 1}, {"x", "y", "z"}); }

std::vector<int> g63_subset() { return {0}; }

NamedGraph builtin_graph(const std::string& spec) {
    static const std::regex one(R"((c|cycle|path|star|complete)\[(\d+)\])");
    static const std::regex two(R"((complete_bipartite|k)\[(\d+),(\d+)\])");
    std::smatch m;
    if (spec == "g52") return {spec, g52_graph(), g52_chart(), {}};
    if (spec == "g63") return {spec, g63_graph(), g63_chart(), g63_subset()};
    if (spec == "petersen") return {spec, petersen_graph(), ModuliChart::canonical(), {}};
    if (std::regex_match(spec, m, one)) {
        const std::string kind = m[1];
        const int n = std::stoi(m[2]);
        if (kind == "c" || kind == "cycle") return {spec, cycle_graph(n), ModuliChart::canonical(), {}};
        if (kind == "path") return {spec, path_graph(n), ModuliChart::canonical(), {}};
        if (kind == "star") return {spec, star_graph(n), ModuliChart::canonical(), {}};
        return {spec, complete_graph(n), ModuliChart::canonical(), {}};
    }
    if (std::regex_match(spec, m, two))
        return {spec, complete_bipartite_graph(std::stoi(m[2]), std::stoi(m[3])), ModuliChart::canonical(), {}};
    throw UsageError("builtin graph", "unknown name '" + spec + "'");
}

std::vector<std::string> builtin_names() {
    return {"c[n]", "path[n]", "star[k]", "complete[n]", "complete_bipartite[a,b]", "g52", "g63", "petersen"};
}

}  // namespace cgl
