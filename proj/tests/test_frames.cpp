#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "framebound/elliptic.hpp"
#include "framebound/errors.hpp"
#include "framebound/frames.hpp"
#include "framebound/groups.hpp"
#include "framebound/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

using namespace framebound::frames;
using framebound::GaussianRng;
using framebound::Rational;
using framebound::groups::dihedral_group;
using framebound::groups::hyperoctahedral_group;
using framebound::linalg::TransformMatrix;

namespace {

std::vector<Rational> rat(std::initializer_list<int> values) {
  std::vector<Rational> out;
  for (const int v : values) {
    out.emplace_back(v);
  }
  return out;
}

TransformMatrix random_square(GaussianRng& rng, int d) {
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      m(i, j) = rng.gaussian();
    }
  }
  return TransformMatrix(std::move(m));
}

TransformMatrix random_orthogonal(GaussianRng& rng, int d) {
  const Eigen::MatrixXd m = random_square(rng, d).entries();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return TransformMatrix(Eigen::MatrixXd(qr.householderQ()));
}

} // namespace

TEST_CASE("fp_exact closed forms") {
  // identity transform: F_p = 1 in every dimension
  for (int d = 1; d <= 6; ++d) {
    const std::vector<Rational> ones(static_cast<std::size_t>(d), Rational(1));
    for (int p = 1; p <= 6; ++p) {
      CHECK(fp_exact(ones, p) == 1);
    }
  }

  CHECK(fp_exact(rat({4, 1}), 2) == Rational(59, 8));
  CHECK(fp_exact(rat({4, 1}), 3) == Rational(385, 16));

  // d = 1: (1/2)_p cancels and F_p(s) = s^p
  CHECK(fp_exact(rat({3}), 4) == 81);

  CHECK_THROWS_AS(fp_exact(rat({1}), 0), framebound::domain_error);
  CHECK_THROWS_AS(fp_exact(rat({1}), 17), framebound::domain_error);
  CHECK_THROWS_AS(fp_exact({}, 2), framebound::domain_error);
  CHECK_THROWS_AS(fp_exact(rat({-1, 1}), 2), framebound::domain_error);
}

TEST_CASE("homogeneity of F_p is exact") {
  GaussianRng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int p = 1 + trial % 5;
    const int d = 2 + trial % 3;
    std::vector<Rational> s2;
    for (int i = 0; i < d; ++i) {
      s2.emplace_back(1 + static_cast<int>(rng.uniform01() * 8),
                      1 + static_cast<int>(rng.uniform01() * 5));
    }
    const Rational c(3 + trial % 5, 2);
    std::vector<Rational> scaled = s2;
    for (auto& v : scaled) {
      v *= c;
    }
    Rational c_pow = 1;
    for (int i = 0; i < p; ++i) {
      c_pow *= c;
    }
    CHECK(fp_exact(scaled, p) == c_pow * fp_exact(s2, p));
  }
}

TEST_CASE("2-D binomial specialization") {
  GaussianRng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = rng.uniform01() * 4.0;
    const double b = rng.uniform01() * 4.0;
    for (int p = 1; p <= 6; ++p) {
      const double direct = fp_value({a, b}, p);
      CHECK(fp_2d_binomial(a, b, p) ==
            doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("fp_from_matrix") {
  // rectangular coordinate projection: tight fusion constant
  Eigen::MatrixXd proj(2, 3);
  proj << 1, 0, 0, 0, 1, 0;
  const auto fusion = fp_from_matrix(TransformMatrix(proj), 2);
  CHECK(fusion.d == 3);
  CHECK(fusion.value == doctest::Approx(8.0 / 15.0).epsilon(1e-14));

  // (k/2)_p / (d/2)_p for rank-k coordinate projections
  for (int d = 2; d <= 5; ++d) {
    for (int k = 1; k <= d; ++k) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, d);
      for (int i = 0; i < k; ++i) {
        m(i, i) = 1.0;
      }
      for (int p = 1; p <= 4; ++p) {
        const Rational expected = framebound::rising_factorial_half(k, p) /
                                  framebound::rising_factorial_half(d, p);
        CHECK(fp_from_matrix(TransformMatrix(m), p).value ==
              doctest::Approx(framebound::to_double(expected)).epsilon(1e-12));
      }
    }
  }

  CHECK(fp_from_matrix(TransformMatrix::diagonal({2, 1}), 1).value ==
        doctest::Approx(2.5).epsilon(1e-14));

  GaussianRng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 4;
    const auto u = random_orthogonal(rng, d);
    for (int p = 1; p <= 4; ++p) {
      CHECK(fp_from_matrix(u, p).value == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  // scaling family: F_p(cU) = c^{2p}
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 3;
    const double c = 0.5 + rng.uniform01() * 2.0;
    const TransformMatrix scaled(c * random_orthogonal(rng, d).entries());
    for (int p = 1; p <= 3; ++p) {
      CHECK(fp_from_matrix(scaled, p).value ==
            doctest::Approx(std::pow(c, 2 * p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sphere average in two dimensions") {
  for (const double p : {0.5, 1.0, 2.5, 4.0}) {
    CHECK(fp_sphere_2d(1, 1, p) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(fp_sphere_2d(4, 1, 2) == doctest::Approx(7.375).epsilon(1e-12));

  // p = 1/2 recovers the ellipse perimeter over 2 pi (AGM oracle value)
  CHECK(fp_sphere_2d(4, 1, 0.5) ==
        doctest::Approx(1.54196442519004).epsilon(1e-9));
  CHECK(fp_sphere_2d(4, 1, 0.5) ==
        doctest::Approx(framebound::ellipse_perimeter(2, 1) /
                        (2 * std::numbers::pi))
            .epsilon(1e-12));

  GaussianRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 0.2 + rng.uniform01() * 4.0;
    const double b = 0.2 + rng.uniform01() * 4.0;
    for (int p = 1; p <= 6; ++p) {
      CHECK(fp_sphere_2d(a, b, p) ==
            doctest::Approx(fp_value({a, b}, p)).epsilon(1e-10));
    }
  }

  CHECK_THROWS_AS(fp_sphere_2d(-1, 1, 2), framebound::domain_error);
  CHECK_THROWS_AS(fp_sphere_2d(1, 1, 0), framebound::domain_error);
}

TEST_CASE("orbit averages") {
  const TransformMatrix t = TransformMatrix::diagonal({2, 1});
  Eigen::VectorXd e1(2);
  e1 << 1, 0;
  Eigen::VectorXd diag(2);
  diag << std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2;

  // the pentagon admits 2-frames: every direction meets F_2
  CHECK(orbit_average(dihedral_group(5), t, e1, 2) ==
        doctest::Approx(7.375).epsilon(1e-10));

  // the square does not: the average depends on the direction
  CHECK(orbit_average(dihedral_group(4), t, e1, 2) ==
        doctest::Approx(8.5).epsilon(1e-12));
  CHECK(orbit_average(dihedral_group(4), t, diag, 2) ==
        doctest::Approx(6.25).epsilon(1e-12));

  Eigen::VectorXd not_unit(2);
  not_unit << 1, 1;
  CHECK_THROWS_AS(orbit_average(dihedral_group(4), t, not_unit, 2),
                  framebound::precondition_error);
  Eigen::VectorXd wrong_dim(3);
  wrong_dim << 1, 0, 0;
  CHECK_THROWS_AS(orbit_average(dihedral_group(4), t, wrong_dim, 2),
                  framebound::domain_error);
}

TEST_CASE("orbit averages meet F_p for admissible orders") {
  GaussianRng rng(11);
  const struct {
    framebound::groups::FiniteGroup group;
    int max_p;
  } cases[] = {
      {dihedral_group(5), 4},
      {dihedral_group(6), 2},
      {hyperoctahedral_group(3), 1},
      {framebound::groups::simplex_group(2), 2},
  };
  for (const auto& c : cases) {
    const int d = c.group.dimension();
    for (int trial = 0; trial < 5; ++trial) {
      const TransformMatrix t = random_square(rng, d);
      const Eigen::VectorXd x = rng.unit_vector(d);
      for (int p = 1; p <= c.max_p; ++p) {
        const double expected = fp_from_matrix(t, p).value;
        CHECK(orbit_average(c.group, t, x, p) ==
              doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("tight frame verification") {
  const TransformMatrix t = TransformMatrix::diagonal({2, 1});

  const auto pentagon = verify_tight_frame(dihedral_group(5), t, 2, 50);
  CHECK(pentagon.tight);
  CHECK(pentagon.max_relative_deviation < 1e-9);

  const auto square = verify_tight_frame(dihedral_group(4), t, 2, 50);
  CHECK_FALSE(square.tight);
  CHECK(square.max_relative_deviation > 1e-3);

  GaussianRng rng(13);
  const auto cube = verify_tight_frame(hyperoctahedral_group(3),
                                       random_square(rng, 3), 1, 50);
  CHECK(cube.tight);

  CHECK_THROWS_AS(verify_tight_frame(dihedral_group(5), t, 2, 5),
                  framebound::precondition_error);
}

TEST_CASE("non-tight sandwich") {
  const TransformMatrix id3 = TransformMatrix::identity(3);
  for (int p = 1; p <= 4; ++p) {
    const auto [lo, hi] = nontight_sandwich(id3, p);
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(1.0));
  }

  const auto [lo, hi] = nontight_sandwich(TransformMatrix::diagonal({2, 1}), 2);
  CHECK(lo == doctest::Approx(25.0 / 4.0));
  CHECK(hi == doctest::Approx(17.0 / 2.0));
  CHECK(lo < 7.375);
  CHECK(7.375 < hi);

  for (const double c : {0.5, 1.7}) {
    const auto [clo, chi] =
        nontight_sandwich(TransformMatrix::diagonal({c, c}), 3);
    CHECK(clo == doctest::Approx(std::pow(c, 6)).epsilon(1e-12));
    CHECK(chi == doctest::Approx(std::pow(c, 6)).epsilon(1e-12));
  }

  GaussianRng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const TransformMatrix t = random_square(rng, d);
    for (int p = 1; p <= 4; ++p) {
      const auto [lower, upper] = nontight_sandwich(t, p);
      const double fp = fp_from_matrix(t, p).value;
      CHECK(lower <= fp * (1 + 1e-12));
      CHECK(fp <= upper * (1 + 1e-12));
    }
  }
}

TEST_CASE("Monte-Carlo estimates") {
  const TransformMatrix id2 = TransformMatrix::identity(2);
  const auto unit = fp_montecarlo(id2, 2, 1000000, 42);
  CHECK(std::abs(unit.estimate - 1.0) <= 4 * unit.standard_error);

  const TransformMatrix t = TransformMatrix::diagonal({2, 1});
  const auto second = fp_montecarlo(t, 2, 1000000, 43);
  CHECK(std::abs(second.estimate - 7.375) <= 4 * second.standard_error);

  const auto half = fp_montecarlo(t, 0.5, 1000000, 44);
  const double sphere = fp_sphere_2d(4, 1, 0.5);
  CHECK(std::abs(half.estimate - sphere) <= 4 * half.standard_error);

  // bit-for-bit reproducibility for a fixed seed
  const auto again = fp_montecarlo(t, 2, 1000000, 43);
  CHECK(again.estimate == second.estimate);
  CHECK(again.standard_error == second.standard_error);

  // the shared-stream batch draws the same samples as a single run
  const auto batch = fp_montecarlo_batch(t, 4, 1000000, 43);
  REQUIRE(batch.size() == 4);
  CHECK(batch[1].estimate == second.estimate);
  CHECK(batch[1].standard_error == second.standard_error);
  for (int p = 1; p <= 4; ++p) {
    const double exact = fp_value({4, 1}, p);
    CHECK(std::abs(batch[static_cast<std::size_t>(p - 1)].estimate - exact) <=
          4 * batch[static_cast<std::size_t>(p - 1)].standard_error);
  }

  CHECK_THROWS_AS(fp_montecarlo(t, 2, 9999, 0),
                  framebound::precondition_error);
  CHECK_THROWS_AS(fp_montecarlo(t, 0.0, 100000, 0), framebound::domain_error);
}

TEST_CASE("multiplier transform") {
  const TransformMatrix t = TransformMatrix::diagonal({2, 1});
  const double tau = 3.0;
  const auto phi1 = [tau](double x) { return x * x + tau * x; };
  const auto zero = [](double) { return 0.0; };
  for (const double arg : {0.0, 1.0, 2.0, 5.5}) {
    const double expected = 17.0 / 32.0 * arg * arg + 5.0 / 8.0 * tau * arg;
    CHECK(multiplier_transform(phi1, zero, t, arg) ==
          doctest::Approx(expected).epsilon(1e-12));
  }

  // orthogonal T: gram of the inverse is the identity
  GaussianRng rng(19);
  const TransformMatrix u = random_orthogonal(rng, 3);
  const auto phi2 = [](double x) { return 0.5 * x; };
  for (const double arg : {0.3, 1.0, 4.0}) {
    CHECK(multiplier_transform(phi1, phi2, u, arg) ==
          doctest::Approx(phi1(arg) - phi2(arg)).epsilon(1e-12));
  }

  // weak invariance under adding the same linear function to both parts
  for (int trial = 0; trial < 10; ++trial) {
    const TransformMatrix t2 = random_square(rng, 2);
    if (std::abs(t2.entries().determinant()) < 0.1) {
      continue;
    }
    const double slope = rng.gaussian();
    const double arg = rng.uniform01() * 3.0;
    const auto with_l1 = [&](double x) { return x * x + slope * x; };
    const auto with_l2 = [&](double x) { return 0.5 * x + slope * x; };
    const auto base1 = [](double x) { return x * x; };
    const auto base2 = [](double x) { return 0.5 * x; };
    CHECK(multiplier_transform(with_l1, with_l2, t2, arg) ==
          doctest::Approx(multiplier_transform(base1, base2, t2, arg))
              .epsilon(1e-10));
  }

  Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(
      multiplier_transform(phi1, zero, TransformMatrix(singular), 1.0),
      framebound::domain_error);
}

TEST_CASE("negative control: squares fail 2-frames with a visible gap") {
  const TransformMatrix t = TransformMatrix::diagonal({2, 1});
  Eigen::VectorXd e1(2);
  e1 << 1, 0;
  Eigen::VectorXd diag(2);
  diag << std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2;
  const double gap = std::abs(orbit_average(dihedral_group(4), t, e1, 2) -
                              orbit_average(dihedral_group(4), t, diag, 2));
  CHECK(gap > 1e-3);
}
