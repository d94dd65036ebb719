#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cgl/error.hpp"
#include "cgl/moduli.hpp"
#include "cgl/named_graphs.hpp"
#include "cgl/nodal.hpp"
#include "cgl/random.hpp"

using namespace cgl;

TEST_CASE("positive function has one domain and empty nodal set") {
    Graph g = cycle_graph(5);
    NodalData nd = nodal_data(g, Vector::Ones(5));
    CHECK(nd.sign_change.empty());
    CHECK(nd.zero_elements.empty());
    REQUIRE(nd.domains.size() == 1);
    CHECK(nd.domains[0].elements == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(nd.domains[0].sign == 1);
}

TEST_CASE("alternating function on P3") {
    NodalData nd = nodal_data(path_graph(3), Vector{{1.0, -1.0, 1.0}});
    CHECK(nd.sign_change == std::vector<int>{0, 1});
    CHECK(nd.domains.size() == 3);
}

TEST_CASE("zero at a cut vertex") {
    // Star centre is a cut vertex; leaves end up in separate domains.
    NodalData nd = nodal_data(star_graph(3), Vector{{0.0, 1.0, 2.0, -1.0}});
    CHECK(nd.zero_elements == std::vector<int>{0});
    CHECK(nd.domains.size() == 3);
    CHECK(nd.sign_change.empty());
}

TEST_CASE("nodal set ids") {
    Graph p3 = path_graph(3);
    NodalData nd = nodal_data(p3, Vector{{1.0, 0.0, -1.0}});
    CHECK(nodal_set_ids(p3, nd) == std::vector<int>{2 + 1});
}

TEST_CASE("psi map") {
    Graph k2 = path_graph(2);
    CHECK(psi_map(k2, WeightFunction(Vector{{2.5}}), Vector{{1.0, 1.0}})[0] == 2.5);
    Rng rng(1);
    Graph g = random_connected_graph(7, 0.5, rng);
    WeightFunction w = random_weights(g.edge_count(), {}, rng);
    Vector h = Vector::Random(7);
    EdgeFunction psi = psi_map(g, w, h);
    NodalData nd = nodal_data(g, h);
    for (int e = 0; e < g.edge_count(); ++e) {
        bool change = std::find(nd.sign_change.begin(), nd.sign_change.end(), e) != nd.sign_change.end();
        CHECK((psi[e] < 0) == change);
    }
}

TEST_CASE("psi is invariant under kernel transport") {
    Rng rng(2);
    for (int k = 0; k < 20; ++k) {
        Graph g = random_connected_bipartite(uniform_int(rng, 1, 4), uniform_int(rng, 1, 4), 0.6, rng);
        if (g.vertex_count() % 2 == 0) continue;
        WeightFunction w = random_weights(g.edge_count(), {}, rng);
        ConformalFactor u = random_factor(g.vertex_count(), 1.0, rng);
        WeightFunction wt = apply_conformal_factor(g, w, u);
        Matrix ker = kernel_basis(adjacency(g, w)).vectors;
        REQUIRE(ker.cols() >= 1);
        Vector h = ker.col(0);
        Vector ht = (-u.values()).array().exp().matrix().cwiseProduct(h);
        CHECK((adjacency(g, wt) * ht).norm() < 1e-10 * ht.norm() * adjacency(g, wt).norm());
        EdgeFunction a = psi_map(g, w, h), b = psi_map(g, wt, ht);
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10 * a.cwiseAbs().maxCoeff());
        PsiResult pr = psi_map_checked(g, w, EdgeSubset::none(g.edge_count()), h);
        CHECK(pr.in_kernel);
        CHECK_FALSE(psi_map_checked(g, w, EdgeSubset::none(g.edge_count()), Vector::Ones(g.vertex_count())).in_kernel);
    }
}

TEST_CASE("common zero set") {
    Matrix b(3, 1);
    b << 1, 2, -1;
    CHECK(common_zero_set(b).empty());
    Matrix c(3, 2);
    c << 1, 0, 0, 0, 0, 1;
    CHECK(common_zero_set(c) == std::vector<int>{1});
    // Basis independent.
    Eigen::Matrix2d rot;
    rot << std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3);
    CHECK(common_zero_set(c * rot) == std::vector<int>{1});
}

TEST_CASE("phi map") {
    Matrix b(3, 1);
    b << 1, 2, -1;
    CHECK(phi_map(b, 0).coordinates() == phi_map(b, 2).coordinates());
    Matrix c(3, 2);
    c << 1, 2, 0, 0, 3, 1;
    CHECK_THROWS_WITH_AS(phi_map(c, 1), doctest::Contains("undefined at common zero"), DataError);
    Matrix scaled = c;
    scaled.col(0) *= -2.0;
    ProjectivePoint p = phi_map(c, 0), q = phi_map(c, 2);
    CHECK_FALSE(projective_equal(p, q));
    CHECK(projective_equal(ProjectivePoint(Vector{{1.0, 2.0}}), ProjectivePoint(Vector{{-3.0, -6.0}})));
    CHECK_THROWS_WITH_AS(ProjectivePoint(Vector::Zero(3)), doctest::Contains("zero vector"), DataError);
}

TEST_CASE("nodal invariance report") {
    Rng rng(3);
    int exercised_multi = 0;
    for (int k = 0; k < 20; ++k) {
        Graph g = random_connected_bipartite(uniform_int(rng, 1, 3), uniform_int(rng, 2, 5), 0.5, rng);
        if (g.vertex_count() % 2 == 0) continue;
        WeightFunction w = random_weights(g.edge_count(), {}, rng);
        OperatorSpec spec;
        spec.F = EdgeSubset::none(g.edge_count());
        NodalInvarianceReport rep = nodal_invariance_report(spec, g, w, random_factor(g.vertex_count(), 1.0, rng));
        CHECK(rep.all_passed());
        exercised_multi += rep.kernel_dimension >= 2;
        NodalInvarianceReport id = nodal_invariance_report(spec, g, w, ConformalFactor::zero(g.vertex_count()));
        CHECK(id.all_passed());
    }
    CHECK(exercised_multi > 0);

    OperatorSpec spec;
    spec.F = EdgeSubset::none(3);
    CHECK_THROWS_WITH_AS(nodal_invariance_report(spec, cycle_graph(3), WeightFunction::unit(3), ConformalFactor::zero(3)),
                         doctest::Contains("kernel is zero"), DataError);
}

TEST_CASE("edge-domain nodal data is flagged") {
    Graph c4 = cycle_graph(4);
    NodalData nd = edge_nodal_data(c4, Vector{{1.0, -1.0, 1.0, -1.0}});
    CHECK(nd.edge_domain);
    CHECK(nd.sign_change_pairs.size() == 4);
    OperatorSpec spec;
    spec.family = OperatorFamily::edge_laplacian;
    spec.F = EdgeSubset::all(c4);
    NodalInvarianceReport rep = nodal_invariance_report(spec, c4, WeightFunction::unit(4), ConformalFactor(Vector{{0.1, 0.2, -0.3, 0.4}}));
    CHECK(rep.edge_domain_extension);
    CHECK(rep.all_passed());
}
