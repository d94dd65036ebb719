#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "cgl/error.hpp"
#include "cgl/exact.hpp"
#include "cgl/moduli.hpp"
#include "cgl/named_graphs.hpp"
#include "cgl/random.hpp"

using namespace cgl;

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(Graph(0, {}), DataError);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), DataError);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), DataError);
    CHECK_THROWS_AS(Graph(2, {{1, 1}}), DataError);
    Graph g(2, {{0, 0}, {0, 1}}, true);
    CHECK(g.has_loops());
    CHECK(g.degree(0) == 3);
    CHECK_THROWS_AS(g.require_loopless("test"), DataError);
    CHECK(g.edge_index(1, 0) == 1);
    CHECK_FALSE(Graph(3, {{0, 1}}).is_connected());
}

TEST_CASE("weights and factors must be finite, weights positive") {
    CHECK_THROWS_AS(WeightFunction(Vector{{1.0, 0.0}}), DataError);
    CHECK_THROWS_AS(WeightFunction(Vector{{1.0, -2.0}}), DataError);
    CHECK_THROWS_AS(WeightFunction(Vector{{1.0, NAN}}), DataError);
    CHECK_THROWS_AS(ConformalFactor(Vector{{INFINITY}}), DataError);
    Graph p2 = path_graph(2);
    CHECK_THROWS_AS(WeightFunction::unit(2).check_graph(p2, "t"), DataError);
}

TEST_CASE("unsigned incidence") {
    auto b = unsigned_incidence(path_graph(3));
    Eigen::MatrixXi expect(3, 2);
    expect << 1, 0, 1, 1, 0, 1;
    CHECK(b == expect);
    auto c3 = unsigned_incidence(cycle_graph(3));
    for (int r = 0; r < 3; ++r) CHECK(c3.row(r).sum() == 2);
    auto c4 = unsigned_incidence(cycle_graph(4));
    for (int c = 0; c < 4; ++c) CHECK(c4.col(c).sum() == 2);
    Graph loop(2, {{0, 0}, {0, 1}}, true);
    CHECK(unsigned_incidence(loop)(0, 0) == 2);
}

TEST_CASE("bipartite components") {
    CHECK(bipartite_components(cycle_graph(4)).omega0 == 1);
    CHECK(bipartite_components(cycle_graph(3)).omega0 == 0);
    Graph u(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 4}});
    BipartiteInfo bi = bipartite_components(u);
    CHECK(bi.omega0 == 1);
    CHECK(bi.component_count == 2);
    for (const Edge& e : u.edges())
        if (bi.component_bipartite[static_cast<std::size_t>(bi.component[static_cast<std::size_t>(e.u)])])
            CHECK(bi.color[static_cast<std::size_t>(e.u)] != bi.color[static_cast<std::size_t>(e.v)]);
}

TEST_CASE("exact incidence rank") {
    CHECK(incidence_rank_exact(cycle_graph(4)) == 3);
    CHECK(incidence_rank_exact(cycle_graph(5)) == 5);
    CHECK(incidence_rank_exact(star_graph(3)) == 3);
}

TEST_CASE("exact null space has one vector per free column") {
    Eigen::MatrixXi m(2, 3);
    m << 1, 2, 3, 2, 4, 6;
    CHECK(exact::rank(m) == 1);
    auto ns = exact::null_space(m);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns) {
        exact::Rational s = 0;
        for (int c = 0; c < 3; ++c) s += v[static_cast<std::size_t>(c)] * m(0, c);
        CHECK(s == 0);
    }
}

TEST_CASE("moduli dimension examples") {
    CHECK(moduli_description(path_graph(5)).dimension == 0);
    CHECK(moduli_description(star_graph(4)).dimension == 0);
    CHECK(moduli_description(cycle_graph(5)).dimension == 0);
    CHECK(moduli_description(petersen_graph()).dimension == 5);
    CHECK(moduli_description(complete_bipartite_graph(3, 3)).dimension == 9 - 6 + 1);

    ModuliDescription c6 = moduli_description(cycle_graph(6));
    REQUIRE(c6.dimension == 1);
    const double s = 1.0 / std::sqrt(6.0);
    for (int e = 0; e < 6; ++e) CHECK(c6.kernel_basis(e, 0) == doctest::Approx(e % 2 ? -s : s).epsilon(1e-12));

    CHECK_THROWS_AS(moduli_description(Graph(1, {{0, 0}}, true)), DataError);
}

TEST_CASE("moduli dimension matches |E|-|V|+omega0 on random graphs") {
    Rng rng(11);
    for (int k = 0; k < 60; ++k) {
        Graph g = random_connected_graph(uniform_int(rng, 2, 9), uniform(rng, 0.0, 0.6), rng);
        ModuliDescription d = moduli_description(g);
        CHECK(d.dimension == g.edge_count() - g.vertex_count() + oracle::bipartite_component_count(g));
        if (d.dimension == 0) continue;
        Matrix kk = d.kernel_basis.transpose() * d.kernel_basis;
        CHECK((kk - Matrix::Identity(d.dimension, d.dimension)).cwiseAbs().maxCoeff() < 1e-12);
        Matrix b = unsigned_incidence(g).cast<double>();
        CHECK((b * d.kernel_basis).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("apply_conformal_factor") {
    Graph c4 = cycle_graph(4);
    WeightFunction w(Vector{{1.0, 2.0, 3.0, 4.0}});
    CHECK(apply_conformal_factor(c4, w, ConformalFactor::zero(4)).values() == w.values());
    WeightFunction s = apply_conformal_factor(c4, w, ConformalFactor(Vector::Constant(4, 0.5)));
    for (int e = 0; e < 4; ++e) CHECK(s[e] == doctest::Approx(std::exp(1.0) * w[e]));
    WeightFunction p = apply_conformal_factor(path_graph(2), WeightFunction::unit(1), ConformalFactor(Vector{{1.0, 2.0}}));
    CHECK(p[0] == doctest::Approx(std::exp(3.0)));
}

TEST_CASE("canonical representative of C4 with w=(2,1,1,1)") {
    Graph c4 = cycle_graph(4);
    CanonicalRepresentative c = canonical_representative(c4, WeightFunction(Vector{{2.0, 1.0, 1.0, 1.0}}));
    const double q = std::pow(2.0, 0.25);
    Vector expect{{q, 1 / q, q, 1 / q}};
    CHECK((c.weight.values() - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(vertex_log_residual(c4, c.weight) < 1e-12);
}

TEST_CASE("canonical representative of a tree is the unit weight") {
    Rng rng(5);
    Graph t = random_connected_graph(8, 0.0, rng);
    REQUIRE(t.edge_count() == 7);
    CanonicalRepresentative c = canonical_representative(t, random_weights(7, {}, rng));
    CHECK((c.weight.values().array() - 1.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("canonical representative: normalization, idempotence, class invariance") {
    Rng rng(17);
    for (int k = 0; k < 40; ++k) {
        Graph g = random_connected_graph(uniform_int(rng, 3, 9), 0.4, rng);
        WeightFunction w = random_weights(g.edge_count(), {}, rng);
        CanonicalRepresentative c = canonical_representative(g, w);
        CHECK(vertex_log_residual(g, c.weight) <= 1e-9);
        // The factor reproduces the weight.
        WeightFunction back = apply_conformal_factor(g, w, c.factor);
        CHECK((back.log() - c.weight.log()).cwiseAbs().maxCoeff() < 1e-9);
        CanonicalRepresentative again = canonical_representative(g, c.weight);
        CHECK((again.weight.log() - c.weight.log()).cwiseAbs().maxCoeff() < 1e-9);
        WeightFunction moved = apply_conformal_factor(g, w, random_factor(g.vertex_count(), 1.5, rng));
        CHECK((canonical_representative(g, moved).weight.log() - c.weight.log()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("C_2n canonical weight alternates with a = (prod odd / prod even)^(1/2n)") {
    Rng rng(23);
    for (int n : {2, 3, 4}) {
        Graph g = cycle_graph(2 * n);
        WeightFunction w = random_weights(2 * n, {}, rng);
        double lodd = 0, leven = 0;  // 1-based edge parity
        for (int e = 0; e < 2 * n; ++e) (e % 2 == 0 ? lodd : leven) += std::log(w[e]);
        const double a = std::exp((lodd - leven) / (2 * n));
        CanonicalRepresentative c = canonical_representative(g, w);
        for (int e = 0; e < 2 * n; ++e) CHECK(c.weight[e] == doctest::Approx(e % 2 == 0 ? a : 1 / a).epsilon(1e-10));
        WeightFunction moved = apply_conformal_factor(g, w, random_factor(2 * n, 2.0, rng));
        double mo = 0, me = 0;
        for (int e = 0; e < 2 * n; ++e) (e % 2 == 0 ? mo : me) += std::log(moved[e]);
        CHECK(std::abs((mo - me) - (lodd - leven)) < 1e-12);
    }
}

TEST_CASE("same_conformal_class") {
    Rng rng(31);
    Graph g = random_connected_graph(7, 0.5, rng);
    WeightFunction w = random_weights(g.edge_count(), {}, rng);
    WeightFunction w2 = apply_conformal_factor(g, w, random_factor(7, 1.0, rng));
    auto u = same_conformal_class(g, w, w2);
    REQUIRE(u.has_value());
    CHECK((apply_conformal_factor(g, w, *u).log() - w2.log()).cwiseAbs().maxCoeff() < 1e-9);
    auto self = same_conformal_class(g, w, w);
    REQUIRE(self.has_value());
    CHECK((apply_conformal_factor(g, w, *self).log() - w.log()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_FALSE(same_conformal_class(cycle_graph(4), WeightFunction::unit(4), WeightFunction(Vector{{2.0, 1, 1, 1}})));
}

TEST_CASE("moduli coordinates") {
    CHECK(moduli_coordinates(path_graph(4), WeightFunction(Vector{{2.0, 3.0, 4.0}})).size() == 0);
    Rng rng(41);
    Graph g = random_connected_graph(8, 0.5, rng);
    WeightFunction w = random_weights(g.edge_count(), {}, rng);
    Vector a = moduli_coordinates(g, w);
    Vector b = moduli_coordinates(g, apply_conformal_factor(g, w, random_factor(8, 1.0, rng)));
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
    Graph c6 = cycle_graph(6);
    Vector scaled = Vector::Ones(6);
    scaled[2] = 3.0;
    CHECK(std::abs(moduli_coordinates(c6, WeightFunction(scaled))[0] - moduli_coordinates(c6, WeightFunction::unit(6))[0]) > 0.1);
}
