// cgl: conformal invariants of weighted graphs from the command line.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "cgl/discriminant.hpp"
#include "cgl/error.hpp"
#include "cgl/invariance.hpp"
#include "cgl/io.hpp"
#include "cgl/moduli.hpp"
#include "cgl/named_graphs.hpp"
#include "cgl/nodal.hpp"
#include "cgl/polynomials.hpp"
#include "cgl/random.hpp"
#include "cgl/spectral.hpp"
#include "cgl/version.hpp"

using namespace cgl;
using io::Json;

namespace {

struct Options {
    std::string graph_path, builtin, weights_path, config_path;
    std::string F, J;
    std::string family = "adjacency";
    std::string chi = "sign";
    std::string grid;
    std::string out;
    std::string format;
    std::string disc_out;
    std::string a_range = "0.7:5";
    std::uint64_t seed = kDefaultSeed;
    double tol = kDefaultZeroTol;
    int samples = -1;
    int i1 = 0, i2 = 0;
    int edge = 0;
    int points = 200;
};

struct Loaded {
    std::string name;
    Graph graph;
    WeightFunction w;
    ModuliChart chart;
    std::vector<int> F;
};

std::vector<int> parse_index_list(const std::string& text, const Graph& g, const char* what) {
    std::vector<int> out;
    if (text == "E" || text == "all") {
        for (int e = 0; e < g.edge_count(); ++e) out.push_back(e);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(what, "'" + item + "' is not an edge index");
        }
    }
    return out;
}

std::pair<double, double> parse_range(const std::string& text, const char* what) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError(what, "expected lo:hi");
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError(what, "expected lo:hi, got '" + text + "'");
    }
}

std::vector<GridAxis> parse_grid(const std::string& text, int dim, const ModuliChart& chart) {
    std::vector<GridAxis> axes;
    if (text.empty()) {
        const bool edge = chart.kind == ModuliChart::Kind::edge;
        const int steps = dim >= 3 ? 60 : 400;
        for (int i = 0; i < dim; ++i) axes.push_back(edge ? GridAxis{0.05, 5.0, steps} : GridAxis{-2.0, 2.0, steps});
        return axes;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::vector<std::string> parts;
        std::stringstream is(item);
        std::string p;
        while (std::getline(is, p, ':')) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("--grid", "each axis must be lo:hi:steps");
        try {
            axes.push_back({std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2])});
        } catch (const std::exception&) {
            throw UsageError("--grid", "cannot parse '" + item + "'");
        }
    }
    if (axes.size() == 1 && dim > 1) axes.resize(static_cast<std::size_t>(dim), axes.front());
    return axes;
}

Loaded load(const Options& o) {
    if (o.graph_path.empty() == o.builtin.empty()) throw UsageError("input", "give exactly one of --graph or --builtin");
    Loaded l;
    std::optional<WeightFunction> file_w;
    if (!o.builtin.empty()) {
        NamedGraph ng = builtin_graph(o.builtin);
        l.name = ng.name;
        l.graph = ng.graph;
        l.chart = ng.chart;
        l.F = ng.default_F;
    } else {
        io::GraphFile gf = io::read_graph_file(o.graph_path);
        l.name = o.graph_path;
        l.graph = gf.graph;
        file_w = gf.weights;
    }
    if (!o.F.empty()) l.F = parse_index_list(o.F, l.graph, "--F");
    if (!o.weights_path.empty()) l.w = io::read_weights_file(o.weights_path, l.graph);
    else if (file_w) l.w = *file_w;
    else l.w = WeightFunction::unit(l.graph.edge_count());
    return l;
}

OperatorSpec operator_spec(const Options& o, const Loaded& l) {
    if (!o.config_path.empty()) {
        OperatorSpec s = io::parse_operator_spec(io::read_json_file(o.config_path), l.graph);
        if (s.family == OperatorFamily::schrodinger && s.potential.size() == 0)
            s.potential = Vector::Zero(l.graph.vertex_count());
        return s;
    }
    OperatorSpec s;
    s.family = family_from_name(o.family);
    s.F = EdgeSubset::of(l.graph, l.F);
    if (!o.J.empty()) s.J = parse_index_list(o.J, l.graph, "--J");
    s.i1 = o.i1;
    s.i2 = o.i2;
    if (s.family == OperatorFamily::schrodinger) s.potential = Vector::Zero(l.graph.vertex_count());
    return s;
}

Json kernel_columns(const Matrix& k) {
    Json a = Json::array();
    for (Eigen::Index c = 0; c < k.cols(); ++c) a.push_back(io::vector_to_json(k.col(c)));
    return a;
}

bool is_symmetric(const Matrix& s) {
    return s.rows() == s.cols() && max_abs(s - s.transpose()) <= 1e-10 * std::max(1.0, max_abs(s));
}

Json cmd_moduli(const Loaded& l) {
    ModuliDescription d = moduli_description(l.graph);
    Json r;
    r["vertices"] = l.graph.vertex_count();
    r["edges"] = l.graph.edge_count();
    r["omega0"] = d.omega0;
    r["incidence_rank"] = d.incidence_rank;
    r["dimension"] = d.dimension;
    r["kernel_basis"] = kernel_columns(d.kernel_basis);
    r["rational_basis"] = kernel_columns(d.rational_basis);
    return r;
}

Json cmd_canonical(const Loaded& l) {
    CanonicalRepresentative c = canonical_representative(l.graph, l.w);
    Json r;
    r["weights"] = io::vector_to_json(l.w.values());
    r["canonical"] = io::vector_to_json(c.weight.values());
    r["factor"] = io::vector_to_json(c.factor.values());
    r["vertex_log_residual"] = vertex_log_residual(l.graph, c.weight);
    r["moduli_coordinates"] = io::vector_to_json(moduli_coordinates(l.graph, l.w));
    return r;
}

Json cmd_operator(const Options& o, const Loaded& l) {
    OperatorSpec s = operator_spec(o, l);
    Matrix m = build_operator(s, l.graph, l.w);
    Json r;
    r["operator"] = io::operator_spec_to_json(s);
    r["rows"] = m.rows();
    r["cols"] = m.cols();
    r["matrix"] = io::matrix_to_json(m);
    return r;
}

Json cmd_signature(const Options& o, const Loaded& l) {
    OperatorSpec s = operator_spec(o, l);
    Matrix m = build_operator(s, l.graph, l.w);
    Vector ev = symmetric_eigenvalues(m);
    SignatureTriple sig = signature_of(ev, o.tol);
    BipartiteInfo bi = bipartite_components(l.graph);
    Json r;
    r["operator"] = io::operator_spec_to_json(s);
    r["eigenvalues"] = io::vector_to_json(ev);
    r["signature"] = io::signature_to_json(sig);
    r["kernel_dim"] = sig.n_zero;
    r["sign_lambda1"] = sign_lambda1(m, o.tol);
    r["bipartite"] = bi.omega0 == bi.component_count;
    r["symmetric_signature"] = sig.n_plus == sig.n_minus;
    r["zero_tol"] = o.tol;
    r["seed"] = o.seed;
    if (o.samples > 0) {
        if (s.family != OperatorFamily::adjacency_generalized)
            throw UsageError("--samples", "rank sampling is defined for the adjacency family");
        RankStatistics st = rank_statistics(l.graph, s.F, WeightSampler{}, o.samples, o.seed, o.tol);
        Json tallies = Json::array();
        for (const auto& [t, n] : st.signature_tallies) tallies.push_back({{"signature", io::signature_to_json(t)}, {"count", n}});
        r["sampling"] = {{"samples", st.samples},
                         {"observed_max_rank", st.observed_max_rank},
                         {"observed_min_rank", st.observed_min_rank},
                         {"signatures", tallies}};
    }
    return r;
}

Json cmd_kernel(const Options& o, const Loaded& l) {
    OperatorSpec s = operator_spec(o, l);
    Matrix m = build_operator(s, l.graph, l.w);
    Json r;
    r["operator"] = io::operator_spec_to_json(s);
    r["zero_tol"] = o.tol;
    if (is_symmetric(m)) {
        KernelBasis k = kernel_basis(m, o.tol);
        r["side"] = "two_sided";
        r["kernel_dim"] = k.dimension();
        r["vectors"] = kernel_columns(k.vectors);
    } else {
        KernelBasis right = right_kernel(m, o.tol), left = left_kernel(m, o.tol);
        r["side"] = "left_right";
        r["right_kernel_dim"] = right.dimension();
        r["right_vectors"] = kernel_columns(right.vectors);
        r["left_kernel_dim"] = left.dimension();
        r["left_vectors"] = kernel_columns(left.vectors);
    }
    return r;
}

Json cmd_nodal(const Options& o, const Loaded& l) {
    OperatorSpec s = operator_spec(o, l);
    Matrix m = build_operator(s, l.graph, l.w);
    Matrix k = right_kernel(m, o.tol).vectors;
    if (k.cols() == 0) throw DataError("nodal", "kernel is zero");
    const bool vertices = acts_on_vertices(s.family);
    const bool adjacency = s.family == OperatorFamily::adjacency_generalized;
    Json r;
    r["operator"] = io::operator_spec_to_json(s);
    r["kernel_dim"] = k.cols();
    r["edge_domain_extension"] = !vertices;
    Json fns = Json::array();
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
        Vector h = k.col(c);
        NodalData nd = vertices ? nodal_data(l.graph, h, o.tol) : edge_nodal_data(l.graph, h, o.tol);
        Json j;
        j["vector"] = io::vector_to_json(h);
        if (adjacency) {
            EdgeFunction psi = psi_map(l.graph, l.w, h);
            j["nodal"] = io::nodal_to_json(l.graph, nd, &psi);
        } else {
            j["nodal"] = io::nodal_to_json(l.graph, nd);
        }
        fns.push_back(j);
    }
    r["functions"] = fns;
    if (vertices) r["common_zero_set"] = common_zero_set(k, o.tol);
    return r;
}

Json cmd_poly(const Options& o, const Loaded& l) {
    const Graph& g = l.graph;
    Json r;
    if (o.family == "skew_adjacency") {
        Matrix a = skew_adjacency(g, l.w, EdgeSubset::all(g));
        r["family"] = "skew_adjacency";
        r["pfaffian"] = pfaffian(a);
        r["determinant"] = determinant(a) + 0.0;
        return r;
    }
    if (family_from_name(o.family) != OperatorFamily::adjacency_generalized)
        throw UsageError("--family", "poly supports adjacency and skew_adjacency");
    EdgeSubset F = EdgeSubset::of(g, l.F);
    CharacterSpec chi = CharacterSpec::parse(o.chi, g.vertex_count());
    Matrix a = generalized_adjacency(g, l.w, F);
    ZeroSetResult z = zero_set_membership(g, l.w, F, chi, o.tol);
    r["family"] = "adjacency";
    r["F"] = F.members();
    r["character"] = chi.describe();
    r["value"] = z.value;
    if (chi.kind == CharacterSpec::Kind::sign) r["determinant"] = determinant(a) + 0.0;
    if (chi.kind == CharacterSpec::Kind::trivial) r["permanent"] = permanent(a);
    r["zero_set"] = {{"member", z.member}, {"scale", z.scale}, {"tol", o.tol}};
    if (g.vertex_count() <= kMaxSymbolicSize) {
        MultivariatePolynomial p = symbolic_immanant(g, F, chi);
        r["polynomial"] = io::polynomial_to_json(p);
        if (!p.is_zero()) {
            r["projective_coefficients"] = io::vector_to_json(projective_coefficients(p).coordinates());
            r["projective_evaluated_terms"] = io::vector_to_json(projective_evaluated_terms(p, l.w).coordinates());
        }
    }
    if (!g.has_loops()) {
        Json t;
        t["determinant_route"] = tree_polynomial(g, l.w);
        if (g.vertex_count() <= kMaxEnumerationVertices) t["enumeration_route"] = tree_polynomial_enumerated(g, l.w);
        r["tree_polynomial"] = t;
    }
    return r;
}

struct ScanOutput {
    Json json;
    std::string grid_csv, disc_csv;
};

ScanOutput cmd_scan(const Options& o, const Loaded& l) {
    ModuliDescription d = moduli_description(l.graph);
    ModuliGrid grid(l.graph, l.chart, parse_grid(o.grid, d.dimension, l.chart));
    EdgeSubset F = EdgeSubset::of(l.graph, l.F);
    RegionReport rep = scan_moduli(l.graph, F, grid, o.tol);
    Json r;
    r["chart"] = l.chart.describe(l.graph);
    r["F"] = F.members();
    Json axes = Json::array();
    for (const GridAxis& a : grid.axes()) axes.push_back({{"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}});
    r["axes"] = axes;
    r["points"] = grid.point_count();
    r["generic_zero_multiplicity"] = rep.generic_multiplicity;
    r["flagged_points"] = rep.flagged_points;
    Json comps = Json::array();
    for (const ComponentInfo& c : rep.components) {
        Json sigs = Json::array();
        for (const SignatureTriple& s : c.signatures) sigs.push_back(io::signature_to_json(s));
        comps.push_back({{"label", c.label}, {"size", c.size}, {"signatures", sigs}});
    }
    r["components"] = comps;
    r["origin_component"] = rep.origin_component;
    r["signature_constant_on_components"] = rep.signature_constant_on_components;
    std::map<SignatureTriple, int> tally;
    for (const DiscriminantPoint& p : rep.discriminant) ++tally[p.signature];
    Json dt = Json::array();
    for (const auto& [s, n] : tally) dt.push_back({{"signature", io::signature_to_json(s)}, {"count", n}});
    r["discriminant"] = {{"points", rep.discriminant.size()}, {"signatures", dt}};
    return {r, io::scan_grid_csv(grid, rep), io::discriminant_csv(grid, rep)};
}

std::vector<PsiSample> cmd_profile(const Options& o) {
    auto [lo, hi] = parse_range(o.a_range, "--a-range");
    return psi_profile_along_discriminant(o.edge, o.points, lo, hi);
}

Json cmd_check(const Options& o, const Loaded& l) {
    SuiteOptions so;
    so.seed = o.seed;
    so.zero_tol = o.tol;
    if (o.samples > 0) so.trials = o.samples;
    SuiteReport rep = run_invariance_suite(l.graph, l.w, l.F, so);
    Json r;
    r["trials"] = rep.trials;
    Json th = Json::array();
    for (const auto& [name, pt] : rep.tally())
        th.push_back({{"check", name}, {"passed", pt.first}, {"total", pt.second}, {"status", pt.first == pt.second ? "pass" : "fail"}});
    r["checks"] = th;
    Json fails = Json::array();
    for (const SuiteCheck& c : rep.checks)
        if (!c.passed)
            fails.push_back({{"check", c.theorem}, {"subject", c.subject}, {"trial", c.trial}, {"value", c.value}, {"detail", c.detail}});
    r["failures"] = fails;
    r["all_passed"] = rep.all_passed();
    return r;
}

void render_text(const Json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
    } else {
        os << prefix << ": " << j.dump() << '\n';
    }
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw DataError(o.out, "cannot write file");
    f << text;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw DataError(path, "cannot write file");
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conformal invariants of weighted graphs"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--graph", o.graph_path, "graph JSON file");
    app.add_option("--builtin", o.builtin, "c[n] path[n] star[k] complete[n] complete_bipartite[a,b] g52 g63 petersen");
    app.add_option("--weights", o.weights_path, "weights JSON file (array or {\"weights\": [...]})");
    app.add_option("--F", o.F, "edge subset F as i,j,... (0-based) or E");
    app.add_option("--J", o.J, "omitted edges for Delta_J / Lambda");
    app.add_option("--i1", o.i1, "omitted row of Lambda");
    app.add_option("--i2", o.i2, "omitted column of Lambda");
    app.add_option("--family", o.family, "operator family");
    app.add_option("--config", o.config_path, "operator spec JSON");
    app.add_option("--chi", o.chi, "character: trivial, sign, std or a partition like 3,1,1");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--tol", o.tol, "relative zero tolerance")->check(CLI::PositiveNumber);
    app.add_option("--samples", o.samples, "sample or trial count");
    app.add_option("--grid", o.grid, "lo:hi:steps[,lo:hi:steps...]");
    app.add_option("--out", o.out, "output file (default stdout)");
    app.add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--disc-out", o.disc_out, "scan: write discriminant points as CSV");
    app.add_option("--edge", o.edge, "profile: edge index (0-based)");
    app.add_option("--points", o.points, "profile: number of continuation points");
    app.add_option("--a-range", o.a_range, "profile: lo:hi for a");

    std::map<std::string, CLI::App*> sub;
    for (auto [name, help] : std::vector<std::pair<const char*, const char*>>{
             {"moduli", "moduli space dimension and kernel basis"},
             {"canonical", "canonical representative of the weight"},
             {"operator", "build an operator matrix"},
             {"signature", "eigenvalues, signature and optional rank sampling"},
             {"kernel", "kernel basis (left and right for nonsymmetric operators)"},
             {"nodal", "nodal data of kernel vectors"},
             {"poly", "immanant, Pfaffian and tree polynomials"},
             {"scan", "scan the moduli space for discriminant loci"},
             {"profile", "Psi along the G52 discriminant"},
             {"check", "conformal invariance suite"}})
        sub[name] = app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << '\n';
        return 1;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        const bool tabular = cmd == "scan" || cmd == "profile";
        std::string format = o.format.empty() ? (cmd == "profile" ? "csv" : "json") : o.format;
        if (format == "csv" && !tabular) throw UsageError("--format", "csv output is only available for scan and profile");

        Json head;
        head["tool"] = "cgl";
        head["version"] = kVersion;
        head["command"] = cmd;
        head["seed"] = o.seed;
        head["tolerances"] = {{"zero_tol", o.tol}};

        Json result;
        bool ok = true;
        std::string csv;
        if (cmd == "profile") {
            std::vector<PsiSample> prof = cmd_profile(o);
            csv = io::psi_profile_csv(prof);
            Json pts = Json::array();
            for (const PsiSample& p : prof) pts.push_back({p.a, p.b, p.a + p.b, p.psi, p.residual});
            result = {{"edge", o.edge}, {"columns", {"a", "b", "a_plus_b", "psi", "residual"}}, {"points", pts}};
        } else {
            Loaded l = load(o);
            head["graph"] = {{"source", l.name}, {"vertices", l.graph.vertex_count()}, {"edges", l.graph.edge_count()}};
            if (cmd == "moduli") result = cmd_moduli(l);
            else if (cmd == "canonical") result = cmd_canonical(l);
            else if (cmd == "operator") result = cmd_operator(o, l);
            else if (cmd == "signature") result = cmd_signature(o, l);
            else if (cmd == "kernel") result = cmd_kernel(o, l);
            else if (cmd == "nodal") result = cmd_nodal(o, l);
            else if (cmd == "poly") result = cmd_poly(o, l);
            else if (cmd == "scan") {
                ScanOutput s = cmd_scan(o, l);
                result = s.json;
                csv = s.grid_csv;
                if (!o.disc_out.empty()) write_file(o.disc_out, s.disc_csv);
            } else if (cmd == "check") {
                result = cmd_check(o, l);
                ok = result["all_passed"].get<bool>();
            }
        }
        head["result"] = result;

        if (format == "csv") emit(o, csv);
        else if (format == "text") {
            std::ostringstream os;
            render_text(head, "", os);
            emit(o, os.str());
        } else emit(o, head.dump(2) + "\n");
        if (!ok) {
            std::cerr << "error: check: invariance failures reported\n";
            return static_cast<int>(ErrorKind::numerical);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::numerical);
    }
}
