#include "cgl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cgl/error.hpp"

namespace cgl::io {

namespace {

const Json& require(const Json& j, const char* key, const char* ctx) {
    if (!j.is_object() || !j.contains(key)) throw DataError(ctx, std::string("missing field '") + key + "'");
    return j.at(key);
}

int as_int(const Json& j, const char* ctx) {
    if (!j.is_number_integer()) throw DataError(ctx, "expected an integer, got " + j.dump());
    return j.get<int>();
}

std::vector<int> int_list(const Json& j, const char* ctx) {
    if (!j.is_array()) throw DataError(ctx, "expected an array");
    std::vector<int> out;
    for (const Json& x : j) out.push_back(as_int(x, ctx));
    return out;
}

Vector number_list(const Json& j, const char* ctx) {
    if (!j.is_array()) throw DataError(ctx, "expected an array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw DataError(ctx, "expected a number, got " + j[i].dump());
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError(path, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path, e.what());
    }
}

GraphFile parse_graph(const Json& j) {
    const char* ctx = "graph file";
    const int n = as_int(require(j, "vertices", ctx), ctx);
    bool loops = false;
    if (j.contains("loops_allowed")) {
        if (!j["loops_allowed"].is_boolean()) throw DataError(ctx, "'loops_allowed' must be a boolean");
        loops = j["loops_allowed"].get<bool>();
    }
    const Json& je = require(j, "edges", ctx);
    if (!je.is_array()) throw DataError(ctx, "'edges' must be an array");
    std::vector<Edge> edges;
    for (const Json& e : je) {
        if (!e.is_array() || e.size() != 2) throw DataError(ctx, "each edge must be a pair [i, j]");
        edges.push_back({as_int(e[0], ctx), as_int(e[1], ctx)});
    }
    GraphFile gf{Graph(n, std::move(edges), loops), std::nullopt};
    if (j.contains("weights")) gf.weights = parse_weights(j["weights"], gf.graph);
    return gf;
}

GraphFile read_graph_file(const std::string& path) {
    Json j = read_json_file(path);
    try {
        return parse_graph(j);
    } catch (const Error& e) {
        throw DataError(path, e.what());
    }
}

Json graph_to_json(const Graph& g, const WeightFunction* w) {
    Json j;
    j["vertices"] = g.vertex_count();
    j["loops_allowed"] = g.loops_allowed();
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    j["edges"] = edges;
    if (w) j["weights"] = vector_to_json(w->values());
    return j;
}

WeightFunction parse_weights(const Json& j, const Graph& g) {
    const Json& arr = j.is_object() ? require(j, "weights", "weights") : j;
    WeightFunction w(number_list(arr, "weights"));
    w.check_graph(g, "weights");
    return w;
}

WeightFunction read_weights_file(const std::string& path, const Graph& g) {
    Json j = read_json_file(path);
    try {
        return parse_weights(j, g);
    } catch (const Error& e) {
        throw DataError(path, e.what());
    }
}

OperatorSpec parse_operator_spec(const Json& j, const Graph& g) {
    const char* ctx = "operator config";
    if (!j.is_object()) throw DataError(ctx, "expected an object");
    OperatorSpec spec;
    if (j.contains("family")) {
        if (!j["family"].is_string()) throw DataError(ctx, "'family' must be a string");
        spec.family = family_from_name(j["family"].get<std::string>());
    }
    std::vector<int> f = j.contains("F") ? int_list(j["F"], ctx) : std::vector<int>{};
    spec.F = EdgeSubset::of(g, f);
    if (j.contains("orientation")) {
        const Json& o = j["orientation"];
        if (!o.is_array() || o.size() > f.size()) throw DataError(ctx, "'orientation' must list at most one pair per F edge");
        for (std::size_t k = 0; k < o.size(); ++k) {
            if (!o[k].is_array() || o[k].size() != 2) throw DataError(ctx, "each orientation must be [tail, head]");
            spec.F.set_orientation(g, f[k], {as_int(o[k][0], ctx), as_int(o[k][1], ctx)});
        }
    }
    if (j.contains("J")) spec.J = int_list(j["J"], ctx);
    if (j.contains("i1")) spec.i1 = as_int(j["i1"], ctx);
    if (j.contains("i2")) spec.i2 = as_int(j["i2"], ctx);
    if (j.contains("potential")) spec.potential = number_list(j["potential"], ctx);
    if (j.contains("strict")) spec.strict = j["strict"].get<bool>();
    return spec;
}

Json operator_spec_to_json(const OperatorSpec& spec) {
    Json j;
    j["family"] = family_name(spec.family);
    Json f = Json::array(), o = Json::array();
    for (int e : spec.F.members()) {
        f.push_back(e);
        if (spec.F.orientation(e)) o.push_back({spec.F.orientation(e)->tail, spec.F.orientation(e)->head});
    }
    j["F"] = f;
    j["orientation"] = o;
    j["J"] = spec.J;
    j["i1"] = spec.i1;
    j["i2"] = spec.i2;
    if (spec.potential.size()) j["potential"] = vector_to_json(spec.potential);
    return j;
}

Json vector_to_json(const Vector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Json matrix_to_json(const Matrix& m) {
    Json a = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vector_to_json(m.row(r).transpose()));
    return a;
}

Json signature_to_json(const SignatureTriple& s) { return Json::array({s.n_plus, s.n_zero, s.n_minus}); }

Json polynomial_to_json(const MultivariatePolynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"exponents", e}, {"coeff", c}});
    return Json{{"variables", p.variables()}, {"terms", terms}};
}

Json nodal_to_json(const Graph& g, const NodalData& nd, const EdgeFunction* psi) {
    Json j;
    if (nd.edge_domain) {
        Json pairs = Json::array();
        for (auto [a, b] : nd.sign_change_pairs) pairs.push_back({a, b});
        j["sign_change_edge_pairs"] = pairs;
        j["zero_edges"] = nd.zero_elements;
    } else {
        j["sign_change_edges"] = nd.sign_change;
        j["zero_vertices"] = nd.zero_elements;
    }
    Json domains = Json::array();
    for (const NodalDomain& d : nd.domains)
        domains.push_back({{nd.edge_domain ? "edges" : "vertices", d.elements}, {"sign", d.sign}});
    j["domains"] = domains;
    j["zero_tol"] = nd.zero_tol;
    if (psi) j["psi"] = vector_to_json(*psi);
    (void)g;
    return j;
}

std::string format_double(double x) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

std::string scan_grid_csv(const ModuliGrid& grid, const RegionReport& rep) {
    std::ostringstream os;
    const ModuliChart& c = grid.chart();
    for (int i = 0; i < grid.dimension(); ++i)
        os << (c.kind == ModuliChart::Kind::edge ? c.labels[static_cast<std::size_t>(i)] : "c" + std::to_string(i + 1)) << ',';
    os << "n_plus,n_zero,n_minus,zero_mult,component\n";
    for (long long k = 0; k < grid.point_count(); ++k) {
        Vector p = grid.parameters(k);
        for (Eigen::Index i = 0; i < p.size(); ++i) os << format_double(p[i]) << ',';
        const GridPointResult& r = rep.points[static_cast<std::size_t>(k)];
        os << r.signature.n_plus << ',' << r.signature.n_zero << ',' << r.signature.n_minus << ',' << r.zero_multiplicity
           << ',' << r.component << '\n';
    }
    return os.str();
}

std::string discriminant_csv(const ModuliGrid& grid, const RegionReport& rep) {
    std::ostringstream os;
    const ModuliChart& c = grid.chart();
    for (int i = 0; i < grid.dimension(); ++i)
        os << (c.kind == ModuliChart::Kind::edge ? c.labels[static_cast<std::size_t>(i)] : "c" + std::to_string(i + 1)) << ',';
    os << "n_plus,n_zero,n_minus,min_abs_eigenvalue\n";
    for (const DiscriminantPoint& d : rep.discriminant) {
        for (Eigen::Index i = 0; i < d.params.size(); ++i) os << format_double(d.params[i]) << ',';
        os << d.signature.n_plus << ',' << d.signature.n_zero << ',' << d.signature.n_minus << ','
           << format_double(d.smallest_abs_eigenvalue) << '\n';
    }
    return os.str();
}

std::string psi_profile_csv(const std::vector<PsiSample>& samples) {
    std::ostringstream os;
    os << "a,b,a_plus_b,psi,residual\n";
    for (const PsiSample& s : samples)
        os << format_double(s.a) << ',' << format_double(s.b) << ',' << format_double(s.a + s.b) << ','
           << format_double(s.psi) << ',' << format_double(s.residual) << '\n';
    return os.str();
}

}  // namespace cgl::io
