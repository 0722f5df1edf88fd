#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "tspectra/spectral.hpp"
#include "tspectra/topology.hpp"

using namespace tspectra;

namespace {

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.node_count(), g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (NodeId j : g.neighbors(i)) a(i, j) = 1.0;
  }
  return a;
}

}  // namespace

TEST_CASE("PolyEval arithmetic") {
  const PolyEval a = PolyEval::from_value(-6.0);
  const PolyEval b = PolyEval::from_value(2.0);
  CHECK((a * b).value() == doctest::Approx(-12.0));
  CHECK((a / b).value() == doctest::Approx(-3.0));
  CHECK((a + b).value() == doctest::Approx(-4.0));
  CHECK((a - b).value() == doctest::Approx(-8.0));
  CHECK(sqrt(PolyEval::from_value(9.0)).value() == doctest::Approx(3.0));
  CHECK((a - a).is_zero());
  CHECK((PolyEval::zero() * a).is_zero());
  CHECK_THROWS_AS(a / PolyEval::zero(), DomainError);
  CHECK_THROWS_AS(sqrt(a), DomainError);

  // Stays finite far beyond double range: (1e300)^4.
  const PolyEval big = PolyEval::from_value(1e300);
  const PolyEval fourth = (big * big) * (big * big);
  CHECK(fourth.sign == 1);
  CHECK(fourth.log_magnitude == doctest::Approx(4.0 * std::log(1e300)));
}

TEST_CASE("torus eigenvalues closed form") {
  const Spectrum s = torus_eigenvalues({2, 3});
  const auto groups = s.clustered();
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].first == doctest::Approx(4.0));
  CHECK(groups[0].second == 1);
  CHECK(groups[1].first == doctest::Approx(1.0));
  CHECK(groups[1].second == 4);
  CHECK(groups[2].first == doctest::Approx(-2.0));
  CHECK(groups[2].second == 4);

  for (const TorusSpec spec : {TorusSpec{2, 5}, TorusSpec{3, 4}, TorusSpec{1, 7}}) {
    const Spectrum sp = torus_eigenvalues(spec);
    CHECK(static_cast<NodeId>(sp.values.size()) == spec.node_count());
    CHECK(sp.values.front() == 2.0 * spec.dim);  // exact
    CHECK(std::abs(sp.sum()) <= 1e-9 * static_cast<double>(spec.node_count()));
  }
}

TEST_CASE("analytic spectrum matches the dense oracle") {
  for (const TorusSpec spec : {TorusSpec{2, 3}, TorusSpec{2, 4}, TorusSpec{2, 6}, TorusSpec{1, 5}, TorusSpec{3, 3}}) {
    const Spectrum analytic = torus_eigenvalues(spec);
    const Spectrum oracle = dense_spectrum(build_torus(spec));
    REQUIRE(analytic.values.size() == oracle.values.size());
    for (std::size_t k = 0; k < analytic.values.size(); ++k) {
      CHECK(std::abs(analytic.values[k] - oracle.values[k]) <= 1e-8);
    }
  }
}

TEST_CASE("ring spectrum: build_torus(1, m) is the cycle") {
  const Spectrum oracle = dense_spectrum(build_torus({1, 5}));
  const auto groups = oracle.clustered(1e-8);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].first == doctest::Approx(2.0));
  CHECK(groups[1].first == doctest::Approx(2.0 * std::cos(2.0 * std::numbers::pi / 5)));
  CHECK(groups[1].second == 2);
  CHECK(groups[2].first == doctest::Approx(2.0 * std::cos(4.0 * std::numbers::pi / 5)));
  CHECK(groups[2].second == 2);
}

TEST_CASE("even-length torus spectrum is symmetric about zero") {
  const Spectrum s = dense_spectrum(build_torus({2, 4}));
  const std::size_t n = s.values.size();
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(std::abs(s.values[k] + s.values[n - 1 - k]) <= 1e-8);
  }
}

TEST_CASE("dense oracle degenerate cases and guard") {
  const Graph lonely = Graph::from_edges(1, {});
  const Spectrum s = dense_spectrum(lonely);
  REQUIRE(s.values.size() == 1);
  CHECK(s.values[0] == 0.0);
  CHECK_THROWS_AS(dense_spectrum(build_torus({2, 64})), DomainError);  // 4096 > guard
}

TEST_CASE("torus eigenbasis is orthonormal and diagonalizes the adjacency") {
  for (const TorusSpec spec : {TorusSpec{1, 3}, TorusSpec{2, 4}, TorusSpec{2, 5}}) {
    const Spectrum s = torus_eigenbasis(spec);
    REQUIRE(s.has_basis());
    const NodeId n = spec.node_count();
    const Eigen::MatrixXd gram = s.basis.transpose() * s.basis;
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8);
    const Eigen::MatrixXd a = dense_adjacency(build_torus(spec));
    for (NodeId c = 0; c < n; ++c) {
      const double residual = (a * s.basis.col(c) - s.values[static_cast<std::size_t>(c)] * s.basis.col(c)).norm();
      CHECK(residual <= 1e-8);
    }
  }
}

TEST_CASE("triangle eigenbasis: constant vector plus two at eigenvalue -1") {
  const Spectrum s = torus_eigenbasis({1, 3});
  REQUIRE(s.values.size() == 3);
  CHECK(s.values[0] == doctest::Approx(2.0));
  CHECK(s.values[1] == doctest::Approx(-1.0));
  CHECK(s.values[2] == doctest::Approx(-1.0));
  const double expected = 1.0 / std::sqrt(3.0);
  for (int u = 0; u < 3; ++u) CHECK(std::abs(s.basis(u, 0)) == doctest::Approx(expected));
}

TEST_CASE("power iteration spectral radius") {
  for (int m : {3, 4, 5, 8}) {
    CHECK(spectral_radius_power(build_torus({2, m}), 1e-10) == doctest::Approx(4.0).epsilon(1e-9));
  }

  const Graph k2 = Graph::from_edges(2, {{std::pair<NodeId, NodeId>{0, 1}}});
  CHECK(spectral_radius_power(k2) == doctest::Approx(1.0));

  const Graph t7 = build_torus({2, 7});
  const std::vector<NodeId> center{24};
  const Graph dented = delete_nodes(t7, center).graph;
  const double power = spectral_radius_power(dented, 1e-9);
  const double oracle = dense_spectrum(dented).values.front();
  CHECK(std::abs(power - oracle) <= 1e-8);

  const Graph edgeless = Graph::from_edges(3, {});
  CHECK(spectral_radius_power(edgeless) == 0.0);
  CHECK_THROWS_AS(spectral_radius_power(t7, 1e-12, 1), DomainError);
}

TEST_CASE("degree bounds") {
  const auto pinch = degree_bounds(build_torus({2, 5}));
  CHECK(pinch.lower == doctest::Approx(4.0));
  CHECK(pinch.upper == doctest::Approx(4.0));

  const std::vector<NodeId> one{0};
  const auto dented = degree_bounds(delete_nodes(build_torus({2, 5}), one).graph);
  CHECK(dented.lower == doctest::Approx((4.0 * 25 - 8) / 24));
  CHECK(dented.upper == doctest::Approx(4.0));

  const std::vector<std::pair<NodeId, NodeId>> star_edges{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  const Graph star = Graph::from_edges(5, star_edges);
  const auto k14 = degree_bounds(star);
  CHECK(k14.lower == doctest::Approx(2.0));  // sqrt(4) == rho exactly
  CHECK(spectral_radius_power(star) == doctest::Approx(2.0));

  // Sandwich property on assorted graphs.
  for (int m : {3, 4, 6}) {
    const Graph g = delete_edge(build_torus({2, m}), 0, 1);
    const auto b = degree_bounds(g);
    const double rho = spectral_radius_power(g, 1e-10);
    CHECK(b.lower <= rho + 1e-9);
    CHECK(rho <= b.upper + 1e-9);
  }
}

TEST_CASE("torus characteristic polynomial evaluation") {
  // (5-4) * (5-1)^4 * (5+2)^4 = 614656 on the 3x3 torus.
  const PolyEval at5 = charpoly_eval_torus({2, 3}, 5.0);
  CHECK(at5.sign == 1);
  CHECK(at5.value() == doctest::Approx(614656.0).epsilon(1e-12));

  CHECK(charpoly_eval_torus({2, 3}, 4.0).is_zero());

  // det(0*I - A) via LU on the dense matrix.
  const Graph t4 = build_torus({2, 4});
  const Eigen::MatrixXd a = dense_adjacency(t4);
  const double lu_det = Eigen::PartialPivLU<Eigen::MatrixXd>(-a).determinant();
  const PolyEval at0 = charpoly_eval_torus({2, 4}, 0.0);
  CHECK(at0.value() == doctest::Approx(lu_det).epsilon(1e-9));
}

TEST_CASE("charpoly sign and log magnitude track the dense determinant") {
  for (int m : {3, 5, 8, 12}) {
    const Graph g = build_torus({2, m});
    const Eigen::MatrixXd a = dense_adjacency(g);
    for (double x : {4.3, 5.0, 6.7}) {
      const Eigen::MatrixXd shifted = x * Eigen::MatrixXd::Identity(g.node_count(), g.node_count()) - a;
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);
      // Log-space determinant from the LU factors; the plain determinant()
      // overflows around m = 12.
      double log_abs = 0.0;
      int det_sign = lu.permutationP().determinant() > 0 ? 1 : -1;
      for (NodeId i = 0; i < g.node_count(); ++i) {
        const double u = lu.matrixLU()(i, i);
        log_abs += std::log(std::abs(u));
        if (u < 0) det_sign = -det_sign;
      }
      const PolyEval mine = charpoly_eval_torus({2, m}, x);
      CHECK(mine.sign == det_sign);
      CHECK(mine.log_magnitude == doctest::Approx(log_abs).epsilon(1e-6));
    }
  }
}

TEST_CASE("laplacian spectrum") {
  const auto groups = laplacian_spectrum({2, 3}).clustered();
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].first == doctest::Approx(6.0));
  CHECK(groups[0].second == 4);
  CHECK(groups[1].first == doctest::Approx(3.0));
  CHECK(groups[1].second == 4);
  CHECK(groups[2].first == doctest::Approx(0.0));
  CHECK(groups[2].second == 1);

  const Spectrum ring4 = laplacian_spectrum({1, 4});
  const std::vector<double> expected{4.0, 2.0, 2.0, 0.0};
  REQUIRE(ring4.values.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(std::abs(ring4.values[k] - expected[k]) <= 1e-12);
  }

  // Smallest eigenvalue 0 with the all-ones eigenvector; dense cross-check.
  for (const TorusSpec spec : {TorusSpec{2, 4}, TorusSpec{2, 5}}) {
    const Spectrum mine = laplacian_spectrum(spec);
    CHECK(std::abs(mine.values.back()) <= 1e-12);
    const Graph g = build_torus(spec);
    Eigen::MatrixXd lap = -dense_adjacency(g);
    for (NodeId i = 0; i < g.node_count(); ++i) lap(i, i) = static_cast<double>(g.degree(i));
    CHECK((lap * Eigen::VectorXd::Ones(g.node_count())).norm() <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap, Eigen::EigenvaluesOnly);
    for (std::size_t k = 0; k < mine.values.size(); ++k) {
      CHECK(std::abs(mine.values[k] - es.eigenvalues()(static_cast<NodeId>(mine.values.size() - 1 - k))) <= 1e-8);
    }
  }
}

TEST_CASE("multiplicity clustering tolerance") {
  Spectrum s;
  s.values = {4.0, 4.0 - 5e-8, 1.0, -2.0, -2.0 - 9e-8};
  const auto groups = s.clustered(1e-7);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].second == 2);
  CHECK(groups[1].second == 1);
  CHECK(groups[2].second == 2);
}
