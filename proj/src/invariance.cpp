#include "cgl/invariance.hpp"

#include <map>

#include "cgl/error.hpp"
#include "cgl/moduli.hpp"
#include "cgl/nodal.hpp"
#include "cgl/polynomials.hpp"

namespace cgl {

bool SuiteReport::all_passed() const {
    for (const SuiteCheck& c : checks)
        if (!c.passed) return false;
    return true;
}

std::vector<std::pair<std::string, std::pair<int, int>>> SuiteReport::tally() const {
    std::vector<std::pair<std::string, std::pair<int, int>>> out;
    std::map<std::string, std::size_t> pos;
    for (const SuiteCheck& c : checks) {
        auto it = pos.find(c.theorem);
        if (it == pos.end()) {
            it = pos.emplace(c.theorem, out.size()).first;
            out.push_back({c.theorem, {0, 0}});
        }
        auto& t = out[it->second].second;
        t.first += c.passed;
        ++t.second;
    }
    return out;
}

namespace {

struct Case {
    std::string name;
    OperatorSpec spec;
    bool symmetric = false;
};

std::vector<Case> operator_cases(const Graph& g, const std::vector<int>& F, Rng& rng) {
    std::vector<Case> cases;
    const int m = g.edge_count();
    EdgeSubset f = EdgeSubset::of(g, F).orient_defaults(g);
    auto add = [&](std::string name, OperatorFamily fam, EdgeSubset sub, bool sym) {
        OperatorSpec s;
        s.family = fam;
        s.F = std::move(sub);
        cases.push_back({std::move(name), std::move(s), sym});
    };
    add("A(F)", OperatorFamily::adjacency_generalized, f, true);
    add("A(E)", OperatorFamily::adjacency_generalized, EdgeSubset::all(g), true);
    if (g.has_loops()) return cases;

    add("A0(E)", OperatorFamily::ps_edge, EdgeSubset::all(g), false);
    add("M(F)", OperatorFamily::signed_incidence, f, false);
    add("Delta(F)", OperatorFamily::edge_laplacian, f, true);
    add("Delta(E)", OperatorFamily::edge_laplacian, EdgeSubset::all(g), true);
    add("Delta(empty)", OperatorFamily::edge_laplacian, EdgeSubset::none(m), true);
    if (m >= 2) {
        add("Delta_J(F)", OperatorFamily::edge_laplacian_omitted, f, true);
        cases.back().spec.J = {m - 1};
        add("Lambda(F)", OperatorFamily::lambda_minor, f, false);
        cases.back().spec.J = {m - 1};
        cases.back().spec.i1 = 0;
        cases.back().spec.i2 = m >= 3 ? 1 : 0;
    }
    add("Schrodinger", OperatorFamily::schrodinger, EdgeSubset::none(m), true);
    Vector q(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) q[v] = uniform(rng, -1.0, 1.0);
    cases.back().spec.potential = q;

    bool positive_degrees = true;
    for (int v = 0; v < g.vertex_count(); ++v) positive_degrees &= g.degree(v) > 0;
    if (positive_degrees) add("random_walk", OperatorFamily::random_walk, EdgeSubset::none(m), false);
    if (g.vertex_count() % 2 == 0) add("A_skew(E)", OperatorFamily::skew_adjacency, EdgeSubset::all(g), false);
    return cases;
}

}  // namespace

SuiteReport run_invariance_suite(const Graph& g, const WeightFunction& w, const std::vector<int>& F,
                                 const SuiteOptions& opt) {
    w.check_graph(g, "invariance suite");
    if (opt.trials < 1) throw UsageError("invariance suite", "at least one trial is required");
    SuiteReport rep;
    rep.seed = opt.seed;
    rep.trials = opt.trials;
    rep.zero_tol = opt.zero_tol;

    for (int t = 0; t < opt.trials; ++t) {
        Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const ConformalFactor u = random_factor(g.vertex_count(), opt.factor_amplitude, rng);
        const WeightFunction wt = apply_conformal_factor(g, w, u);
        auto add = [&](std::string theorem, std::string subject, bool ok, double value, std::string detail = {}) {
            rep.checks.push_back({std::move(theorem), std::move(subject), t, ok, value, std::move(detail)});
        };

        for (const Case& c : operator_cases(g, F, rng)) {
            const Matrix s = build_operator(c.spec, g, w);
            const Matrix st = build_operator(transformed_spec(c.spec, g, w, u), g, wt);
            const double tol = 1e-10 * (1.0 + max_abs(s));
            const double res = check_covariance(c.spec, g, w, u);
            add("covariance", c.name, res <= tol, res);

            if (c.symmetric) {
                SignatureTriple a = signature(s, opt.zero_tol), b = signature(st, opt.zero_tol);
                add("signature", c.name, a == b, 0.0, a.to_string() + " vs " + b.to_string());
                add("sign_lambda1", c.name, sign_lambda1(s, opt.zero_tol) == sign_lambda1(st, opt.zero_tol), 0.0);
                add("kernel_dimension", c.name, a.n_zero == b.n_zero, static_cast<double>(b.n_zero - a.n_zero));
            } else {
                int ra = numerical_rank(s, opt.zero_tol), rb = numerical_rank(st, opt.zero_tol);
                add("rank", c.name, ra == rb, static_cast<double>(rb - ra),
                    std::to_string(ra) + " vs " + std::to_string(rb));
            }

            if (c.spec.family == OperatorFamily::skew_adjacency) continue;
            try {
                NodalInvarianceReport nr = nodal_invariance_report(c.spec, g, w, u, opt.zero_tol);
                for (const InvarianceCheck& ic : nr.checks) add("nodal:" + ic.name, c.name, ic.passed, ic.value, ic.detail);
            } catch (const DataError& e) {
                // trivial kernel: nothing to transport
            }
        }

        if (!g.has_loops()) {
            OperatorSpec lap;
            lap.family = OperatorFamily::vertex_laplacian;
            lap.F = EdgeSubset::none(g.edge_count());
            const double res = check_covariance(lap, g, w, u, vertex_candidate_law(u));
            const double tol = 1e-10 * (1.0 + max_abs(vertex_laplacian(g, w)));
            add("negative_control", "vertex_laplacian", res > tol, res, "expected to violate the law");
        }

        if (opt.polynomials && g.vertex_count() <= kMaxSymbolicSize) {
            EdgeSubset f = EdgeSubset::of(g, F);
            std::vector<std::pair<std::string, CharacterSpec>> chars{{"trivial", CharacterSpec::trivial()},
                                                                     {"sign", CharacterSpec::sign()}};
            if (g.vertex_count() >= 2) chars.push_back({"std", CharacterSpec::parse("std", g.vertex_count())});
            for (const auto& [name, chi] : chars) {
                ScalingCheck sc = immanant_transformation_check(g, w, u, f, chi);
                add("immanant_scaling", name, sc.passed, sc.residual);
                ZeroSetResult za = zero_set_membership(g, w, f, chi), zb = zero_set_membership(g, wt, f, chi);
                add("zero_set", name, za.member == zb.member, 0.0);
            }
            if (g.vertex_count() % 2 == 0 && !g.has_loops()) {
                ScalingCheck sc = pfaffian_transformation_check(g, w, u);
                add("pfaffian_scaling", "A_skew(E)", sc.passed, sc.residual);
            }
        }
    }
    return rep;
}

}  // namespace cgl
