#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "egonet/chi2.hpp"
#include "egonet/models.hpp"
#include "egonet/tail.hpp"

using namespace egonet;

TEST_CASE("principal components are unit length, orthogonal, sign-fixed") {
    Graph g = generate(make_simulation_spec(ModelKind::ErdosRenyi, 150, 0), 30);
    FittedModel fm = fit_er(g);
    auto [x1, x2] = residual_pcs(g, fm);
    REQUIRE(x1.size() == 150);
    CHECK(x1.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(x2.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs(x1.dot(x2)) < 1e-8);
    Eigen::Index arg = 0;
    x1.cwiseAbs().maxCoeff(&arg);
    CHECK(x1[arg] > 0.0);
    x2.cwiseAbs().maxCoeff(&arg);
    CHECK(x2[arg] > 0.0);
}

TEST_CASE("quadrant statistic on a hand-built configuration") {
    // 30 points in quadrant I, 30 in quadrant III: perfect association
    Eigen::VectorXd x1(60), x2(60);
    for (int i = 0; i < 30; ++i) {
        x1[i] = 1.0;
        x2[i] = 1.0;
        x1[30 + i] = -1.0;
        x2[30 + i] = -1.0;
    }
    // table (30, 0, 0, 30): statistic = n = 60
    CHECK(quadrant_chi2(x1, x2, 2.0 * M_PI) == doctest::Approx(60.0).epsilon(1e-9));
    // rotating by pi/2 moves the mass to the off-diagonal cells: same statistic
    CHECK(quadrant_chi2(x1, x2, M_PI / 2.0) == doctest::Approx(60.0).epsilon(1e-9));
}

TEST_CASE("degenerate margins give a zero statistic") {
    // all points share the sign of the first coordinate: one row margin empty
    Eigen::VectorXd x1(10), x2(10);
    for (int i = 0; i < 10; ++i) {
        x1[i] = 1.0;
        x2[i] = (i % 2 == 0) ? 1.0 : -1.0;
    }
    CHECK(quadrant_chi2(x1, x2, 2.0 * M_PI) == 0.0);
}

TEST_CASE("independence gives a small statistic") {
    // balanced, independent quadrant occupancy
    Eigen::VectorXd x1(40), x2(40);
    int k = 0;
    for (int q = 0; q < 4; ++q)
        for (int i = 0; i < 10; ++i, ++k) {
            x1[k] = (q & 1) ? 1.0 : -1.0;
            x2[k] = (q & 2) ? 1.0 : -1.0;
        }
    CHECK(quadrant_chi2(x1, x2, 2.0 * M_PI) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("detector report is internally consistent") {
    Graph g = generate(make_simulation_spec(ModelKind::ErdosRenyi, 200, 0), 31);
    FittedModel fm = fit_er(g);
    Chi2Report report = chi2_detect(g, fm, 0.01);
    REQUIRE(report.quadrant_tables.size() == 32);
    // critical value carries the multiple-testing correction for the 32 angles
    CHECK(report.critical ==
          doctest::Approx(tail::chi2_quantile_1df(1.0 - 0.01 / 32.0)).epsilon(1e-10));
    CHECK(report.critical > tail::chi2_quantile_1df(0.99));
    CHECK(report.reject == (report.statistic > report.critical));
    CHECK(report.statistic >= 0.0);
    // every table partitions all n points
    for (const auto& t : report.quadrant_tables) CHECK(t[0] + t[1] + t[2] + t[3] == 200);
    // the reported statistic is the maximum over the grid
    double best = -1.0;
    for (const auto& t : report.quadrant_tables) {
        double n11 = t[0], n12 = t[1], n21 = t[2], n22 = t[3];
        double r1 = n11 + n12, r2 = n21 + n22, c1 = n11 + n21, c2 = n12 + n22;
        double s = (r1 > 0 && r2 > 0 && c1 > 0 && c2 > 0)
                       ? 200.0 * std::pow(n11 * n22 - n12 * n21, 2) / (r1 * r2 * c1 * c2)
                       : 0.0;
        best = std::max(best, s);
    }
    CHECK(report.statistic == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("a large planted clique drives the statistic up") {
    std::size_t n = 300;
    ModelSpec spec = make_simulation_spec(ModelKind::ErdosRenyi, n, 0);
    Graph null_g = generate(spec, 33);
    Graph alt_g = embed_clique(null_g, sample_clique_members(n, 25, 33));
    FittedModel fm_null = fit_er(null_g);
    FittedModel fm_alt = fit_er(alt_g);
    double s_null = chi2_detect(null_g, fm_null, 0.01).statistic;
    double s_alt = chi2_detect(alt_g, fm_alt, 0.01).statistic;
    CHECK(s_alt > s_null);
    CHECK(chi2_detect(alt_g, fm_alt, 0.01).reject);
}

TEST_CASE("alpha validation") {
    Graph g = generate(make_simulation_spec(ModelKind::ErdosRenyi, 50, 0), 34);
    FittedModel fm = fit_er(g);
    CHECK_THROWS(chi2_detect(g, fm, 0.0));
    CHECK_THROWS(chi2_detect(g, fm, 1.5));
}
