#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgl/discriminant.hpp"
#include "cgl/graph.hpp"
#include "cgl/nodal.hpp"
#include "cgl/operators.hpp"
#include "cgl/polynomials.hpp"
#include "cgl/spectral.hpp"

namespace cgl::io {

using Json = nlohmann::ordered_json;

struct GraphFile {
    Graph graph;
    std::optional<WeightFunction> weights;
};

// {"vertices": n, "loops_allowed": bool, "edges": [[i,j],...], "weights": [...]}
GraphFile parse_graph(const Json& j);
GraphFile read_graph_file(const std::string& path);
Json graph_to_json(const Graph& g, const WeightFunction* w = nullptr);

// Either a bare array or an object with a "weights" array.
WeightFunction parse_weights(const Json& j, const Graph& g);
WeightFunction read_weights_file(const std::string& path, const Graph& g);

// {"family", "F", "J", "i1", "i2", "orientation": [[tail,head],...], "potential"}
// Orientations are listed in the order of F; missing ones default to
// (smaller, larger) endpoint.
OperatorSpec parse_operator_spec(const Json& j, const Graph& g);
Json operator_spec_to_json(const OperatorSpec& spec);

Json read_json_file(const std::string& path);

Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m);
Json signature_to_json(const SignatureTriple& s);
Json polynomial_to_json(const MultivariatePolynomial& p);
Json nodal_to_json(const Graph& g, const NodalData& nd, const EdgeFunction* psi = nullptr);

// Shortest round-trip decimal form.
std::string format_double(double x);

std::string scan_grid_csv(const ModuliGrid& grid, const RegionReport& rep);
std::string discriminant_csv(const ModuliGrid& grid, const RegionReport& rep);
std::string psi_profile_csv(const std::vector<PsiSample>& samples);

}  // namespace cgl::io
