#include <doctest.h>

#include "qee/cosine_law.hpp"
#include "qee/spectral.hpp"
#include "test_support.hpp"

using namespace qee;

namespace {

MatrixXd random_psd(Index n, Index inner, std::mt19937& g) {
  const MatrixXd b = test::random_symmetric(n, -1.0, 1.0, g).leftCols(inner);
  return b * b.transpose();
}

}  // namespace

TEST_CASE("known small spectra") {
  CHECK(eigendecompose(MatrixXd::Identity(3, 3)).eigenvalues.isApproxToConstant(1.0));

  MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  const auto s = eigendecompose(a);
  CHECK(s.eigenvalues(0) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(s.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-13));

  const auto z = eigendecompose(MatrixXd::Zero(2, 2));
  CHECK(z.eigenvalues(0) == 0.0);
  CHECK(z.eigenvalues(1) == 0.0);
}

TEST_CASE("residual, orthonormality and reconstruction bounds") {
  auto g = test::make_rng(42);
  for (int rep = 0; rep < 30; ++rep) {
    const Index n = 2 + static_cast<Index>(rep % 9);
    const MatrixXd a = test::random_symmetric(n, -5.0, 5.0, g);
    const auto s = eigendecompose(a);
    const double scale = std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());

    for (Index k = 0; k < n; ++k) {
      const VectorXd r = a * s.eigenvectors.col(k) - s.eigenvalues(k) * s.eigenvectors.col(k);
      CHECK(r.norm() <= 1e-8 * scale);
    }
    const MatrixXd vtv = s.eigenvectors.transpose() * s.eigenvectors;
    CHECK((vtv - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8);

    const MatrixXd rebuilt =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() <= 1e-8 * a.cwiseAbs().maxCoeff());

    // descending order
    for (Index k = 0; k + 1 < n; ++k) CHECK(s.eigenvalues(k) >= s.eigenvalues(k + 1));
  }
}

TEST_CASE("deterministic output including eigenvector signs") {
  auto g = test::make_rng(5);
  const MatrixXd a = test::random_symmetric(7, -3.0, 3.0, g);
  const auto s1 = eigendecompose(a);
  const auto s2 = eigendecompose(a);
  CHECK(s1.eigenvalues == s2.eigenvalues);
  CHECK(s1.eigenvectors == s2.eigenvectors);
  for (Index k = 0; k < 7; ++k) {
    Index lead = 0;
    while (lead < 7 && s1.eigenvectors(lead, k) == 0.0) ++lead;
    REQUIRE(lead < 7);
    CHECK(s1.eigenvectors(lead, k) > 0.0);
  }
}

TEST_CASE("rejects asymmetric or non-finite input") {
  MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(eigendecompose(asym), ValidationError);
  MatrixXd inf = MatrixXd::Zero(2, 2);
  inf(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(eigendecompose(inf), ValidationError);
}

TEST_CASE("is_psd verdicts") {
  MatrixXd star(3, 3);
  star << 1, -1, -1, -1, 1, -1, -1, -1, 1;
  const auto v = is_psd(star, 1e-9);
  CHECK_FALSE(v.psd);
  CHECK(v.summary.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK(is_psd(MatrixXd::Zero(3, 3), 1e-9).psd);

  auto g = test::make_rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    MatrixXd b(5, 3);
    for (Index i = 0; i < 5; ++i)
      for (Index j = 0; j < 3; ++j) b(i, j) = u(g);
    const MatrixXd gram = b * b.transpose();
    CHECK(is_psd(gram, 1e-9).psd);
    // brute-force quadratic-form oracle
    for (int k = 0; k < 50; ++k) {
      VectorXd x(5);
      for (Index i = 0; i < 5; ++i) x(i) = u(g);
      CHECK(x.dot(gram * x) >= -1e-12 * gram.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("PSD sums stay PSD") {
  auto g = test::make_rng(13);
  std::uniform_int_distribution<int> count(1, 5);
  for (int rep = 0; rep < 10; ++rep) {
    const Index n = 3 + static_cast<Index>(rep % 4);
    MatrixXd sum = MatrixXd::Zero(n, n);
    const int p = count(g);
    for (int k = 0; k < p; ++k) sum += random_psd(n, 2 + n / 2, g);
    CHECK(is_psd(sum, 1e-9).psd);
  }
}

TEST_CASE("Gershgorin discs") {
  MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  const auto discs = gershgorin_discs(a);
  REQUIRE(discs.size() == 2);
  CHECK(discs[0].center == 2.0);
  CHECK(discs[0].radius == 1.0);
  CHECK(discs[1].center == 2.0);
  CHECK(discs[1].radius == 1.0);
  const auto s = eigendecompose(a);
  for (Index k = 0; k < 2; ++k) {
    const double lambda = s.eigenvalues(k);
    bool inside = false;
    for (const auto& d : discs)
      inside = inside || (lambda >= d.center - d.radius - 1e-12 &&
                          lambda <= d.center + d.radius + 1e-12);
    CHECK(inside);
  }

  const MatrixXd diag = VectorXd::LinSpaced(4, 1.0, 4.0).asDiagonal();
  for (const auto& d : gershgorin_discs(diag)) CHECK(d.radius == 0.0);

  auto g = test::make_rng(17);
  const MatrixXd r = test::random_symmetric(6, -5.0, 5.0, g);
  const auto rs = eigendecompose(r);
  const auto rd = gershgorin_discs(r);
  const double slack = 1e-10 * std::max(1.0, r.cwiseAbs().maxCoeff());
  for (Index k = 0; k < 6; ++k) {
    bool inside = false;
    for (const auto& d : rd)
      inside = inside || (rs.eigenvalues(k) >= d.center - d.radius - slack &&
                          rs.eigenvalues(k) <= d.center + d.radius + slack);
    CHECK(inside);
  }
}

TEST_CASE("psd square-root factor") {
  SUBCASE("collinear cosine-law matrix reconstructs the line") {
    MatrixXd m(3, 3);
    m << 0, 0, 0, 0, 1, 2, 0, 2, 4;
    const MatrixXd e = psd_sqrt_factor(m, 1e-9);
    CHECK((e * e.transpose() - m).cwiseAbs().maxCoeff() <= 1e-7 * 4.0);
    CHECK((e.row(0) - e.row(1)).norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((e.row(0) - e.row(2)).norm() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK((e.row(1) - e.row(2)).norm() == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("identity factorizes to an orthonormal factor") {
    const MatrixXd e = psd_sqrt_factor(MatrixXd::Identity(4, 4), 1e-9);
    CHECK((e * e.transpose() - MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);
  }

  SUBCASE("rank-1 matrix gets its second eigenvalue clamped") {
    MatrixXd ones(2, 2);
    ones << 1, 1, 1, 1;
    const MatrixXd e = psd_sqrt_factor(ones, 1e-9);
    CHECK((e * e.transpose() - ones).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(e.col(1).norm() <= 1e-12);  // clamped direction carries nothing
  }

  SUBCASE("clearly indefinite input is a hard error with diagnostics") {
    MatrixXd star(3, 3);
    star << 1, -1, -1, -1, 1, -1, -1, -1, 1;
    CHECK_THROWS_AS(psd_sqrt_factor(star, 1e-9), NotPsdError);
    try {
      psd_sqrt_factor(star, 1e-9);
    } catch (const NotPsdError& e) {
      CHECK(e.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(std::string(e.what()).find("Gershgorin") != std::string::npos);
    }
  }

  SUBCASE("round trip holds for random PSD matrices") {
    auto g = test::make_rng(29);
    for (int rep = 0; rep < 20; ++rep) {
      const Index n = 2 + static_cast<Index>(rep % 7);
      const MatrixXd a = random_psd(n, std::max<Index>(1, n - 1), g);
      const MatrixXd e = psd_sqrt_factor(a, 1e-9);
      CHECK((e * e.transpose() - a).cwiseAbs().maxCoeff() <=
            1e-7 * std::max(1.0, a.cwiseAbs().maxCoeff()));
    }
  }
}
