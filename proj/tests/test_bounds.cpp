#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "framebound/bounds.hpp"
#include "framebound/elliptic.hpp"
#include "framebound/errors.hpp"
#include "framebound/frames.hpp"
#include "framebound/linalg.hpp"
#include "framebound/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <numbers>

using namespace framebound::bounds;
using framebound::GaussianRng;
using framebound::linalg::TransformMatrix;

namespace {

TransformMatrix random_invertible(GaussianRng& rng, int d,
                                  double min_det = 0.1) {
  for (;;) {
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        m(i, j) = rng.gaussian();
      }
    }
    if (std::abs(m.determinant()) >= min_det) {
      return TransformMatrix(std::move(m));
    }
  }
}

TransformMatrix random_orthogonal(GaussianRng& rng, int d) {
  const Eigen::MatrixXd m = random_invertible(rng, d).entries();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return TransformMatrix(Eigen::MatrixXd(qr.householderQ()));
}

TransformMatrix det_one(const TransformMatrix& t) {
  const double det = std::abs(t.entries().determinant());
  const int d = t.cols();
  return TransformMatrix(t.entries() / std::pow(det, 1.0 / d));
}

} // namespace

TEST_CASE("elliptic integral and perimeter") {
  // circle
  CHECK(framebound::ellipse_perimeter(1, 1) ==
        doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
  // degenerate-ish flat ellipse tends to 4a
  CHECK(framebound::ellipse_perimeter(1, 1e-7) ==
        doctest::Approx(4.0).epsilon(1e-5));
  // reference values (independent high-precision evaluation)
  CHECK(framebound::ellipse_perimeter(2, 1) ==
        doctest::Approx(9.688448220547676).epsilon(1e-13));
  CHECK(framebound::ellipse_perimeter(0.5, 2) ==
        doctest::Approx(8.578421775156834).epsilon(1e-13));
  CHECK_THROWS_AS(framebound::ellipse_perimeter(0, 1),
                  framebound::domain_error);
}

TEST_CASE("plate bounds reproduce the ellipse table rows") {
  const double ref = 104.36;
  const struct {
    double ratio;
    double one_frame;
    double two_frame;
    double tol;
  } rows[] = {
      {1.1, 106.262, 105.786, 5e-4},
      {1.2, 111.375, 109.621, 5e-4},
      {2.0, 221.765, 192.414, 5e-4},
      {4.0, 838.1, 654.7, 5e-2},
  };
  for (const auto& row : rows) {
    const TransformMatrix t = ellipse_transform(row.ratio);
    const auto one = plate_bound(t, ref, 0.0, 1);
    const auto two = plate_bound(t, ref, 0.0, 2);
    CHECK(std::abs(one.bound - row.one_frame) <= row.tol);
    CHECK(std::abs(two.bound - row.two_frame) <= row.tol);
    CHECK(two.bound <= one.bound);
  }

  // scalar multiples of orthogonal matrices: factor c^{-4}, equality flag
  GaussianRng rng(3);
  for (const double c : {0.5, 1.0, 2.0}) {
    const TransformMatrix t(c * random_orthogonal(rng, 2).entries());
    const auto report = plate_bound(t, ref, 0.0, 2);
    CHECK(report.factor == doctest::Approx(std::pow(c, -4)).epsilon(1e-12));
    CHECK(report.equality_case);
  }

  // tension rescaling: tau' = tau * D / ||T^{-1}||_2^2
  const TransformMatrix t = ellipse_transform(2.0);
  const auto with_tension = plate_bound(t, ref, 3.0, 2);
  const TransformMatrix inv(t.entries().inverse());
  const double hs2 = framebound::linalg::schatten(inv, 2);
  const double expected_tau =
      3.0 * with_tension.details.at("D") / hs2;
  CHECK(*with_tension.rescaled_tau ==
        doctest::Approx(expected_tau).epsilon(1e-12));

  const auto compressed = plate_bound(t, ref, -1.0, 2);
  bool caveat = false;
  for (const auto& note : compressed.notes) {
    caveat |= note.find("not comparable") != std::string::npos;
  }
  CHECK(caveat);

  CHECK_THROWS_AS(plate_bound(t, ref, 0.0, 3), framebound::domain_error);
  CHECK_THROWS_AS(plate_bound(t, -1.0, 0.0, 2), framebound::domain_error);
  Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(2, 2);
  singular(0, 0) = 1;
  CHECK_THROWS_AS(plate_bound(TransformMatrix(singular), ref, 0.0, 2),
                  framebound::domain_error);
}

TEST_CASE("D(T^{-1}) never exceeds C(T^{-1})") {
  GaussianRng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 3;
    const TransformMatrix t = random_invertible(rng, d);
    const auto report = plate_bound(t, 1.0, 0.0, 2);
    const double c_const = report.details.at("C");
    const double d_const = report.details.at("D");
    CHECK(d_const <= c_const * (1 + 1e-12));

    const auto s2 =
        framebound::linalg::squared_singular_values(TransformMatrix(
            t.entries().inverse()));
    const double spread = (s2.front() - s2.back()) / s2.front();
    if (spread > 1e-5) {
      CHECK(c_const - d_const > 1e-10 * c_const);
    }
  }
  // equality exactly on scalar multiples of orthogonals
  for (int trial = 0; trial < 50; ++trial) {
    const double c = 0.4 + rng.uniform01() * 2;
    const TransformMatrix t(c * random_orthogonal(rng, 3).entries());
    const auto report = plate_bound(t, 1.0, 0.0, 2);
    CHECK(std::abs(report.details.at("C") - report.details.at("D")) <=
          1e-10 * report.details.at("C"));
  }
}

TEST_CASE("buckling bounds reproduce the ellipse table rows") {
  const double ref = 14.682;
  const struct {
    double ratio;
    double one_frame;
    double two_frame;
    double tol;
  } rows[] = {
      {1.2, 15.41, 15.17, 1e-2},
      {1.4, 17.15, 16.34, 1e-2},
      {1.6, 19.47, 17.90, 1e-2},
      {2.0, 24.96, 21.66, 1e-2},
      {4.0, 55.49, 43.34, 5e-2},
  };
  for (const auto& row : rows) {
    const TransformMatrix t = ellipse_transform(row.ratio);
    const auto two = buckling_bound(t, ref);
    CHECK(std::abs(two.bound - row.two_frame) <= row.tol);
    // classical-frame comparison row: ||T^{-1}||_4^4 / ||T^{-1}||_2^2
    const TransformMatrix inv(t.entries().inverse());
    const double one = framebound::linalg::schatten(inv, 4) /
                       framebound::linalg::schatten(inv, 2) * ref;
    CHECK(std::abs(one - row.one_frame) <= row.tol);
  }

  CHECK(buckling_bound(ellipse_transform(1.0), ref).bound ==
        doctest::Approx(ref).epsilon(1e-12));
  CHECK_THROWS_AS(buckling_bound(ellipse_transform(1.0), 0.0),
                  framebound::domain_error);
}

TEST_CASE("fractional bound") {
  const TransformMatrix t = TransformMatrix::diagonal({2, 1});
  CHECK(fractional_bound(t, 2.0, 1.0).factor ==
        doctest::Approx(5.0 / 8.0).epsilon(1e-14));
  CHECK(fractional_bound(t, 1.0, 1.0).factor ==
        doctest::Approx(std::sqrt(5.0 / 8.0)).epsilon(1e-14));

  GaussianRng rng(7);
  for (const double alpha : {0.25, 0.7, 1.0, 1.5, 2.0}) {
    CHECK(fractional_bound(random_orthogonal(rng, 2), alpha, 3.0).factor ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  // factor is monotone in alpha, direction set by c vs 1
  const TransformMatrix contracting = TransformMatrix::diagonal({2, 1});
  // c = 5/8 < 1 -> decreasing in alpha
  CHECK(fractional_bound(contracting, 1.5, 1.0).factor <
        fractional_bound(contracting, 0.5, 1.0).factor);
  const TransformMatrix expanding = TransformMatrix::diagonal({0.5, 1});
  // c = (4+1)/2 > 1 -> increasing in alpha
  CHECK(fractional_bound(expanding, 1.5, 1.0).factor >
        fractional_bound(expanding, 0.5, 1.0).factor);

  CHECK_THROWS_AS(fractional_bound(t, 0.0, 1.0), framebound::domain_error);
  CHECK_THROWS_AS(fractional_bound(t, 2.5, 1.0), framebound::domain_error);
}

TEST_CASE("perimeter sharpening of the fractional bound") {
  CHECK(fractional_ellipse_perimeter_bound(1, 1, 1, 1).factor ==
        doctest::Approx(1.0).epsilon(1e-12));

  // a = 2, b = 1/2 (ab = 1): the factor is L(1/2, 2)/(2 pi)
  const auto report = fractional_ellipse_perimeter_bound(2, 0.5, 1, 1);
  CHECK(report.factor == doctest::Approx(1.365298229443362).epsilon(1e-9));
  CHECK(report.factor ==
        doctest::Approx(framebound::ellipse_perimeter(0.5, 2) /
                        (2 * std::numbers::pi))
            .epsilon(1e-9));

  for (const double alpha : {0.25, 0.5, 1.0}) {
    const auto r = fractional_ellipse_perimeter_bound(2, 1, alpha, 1);
    CHECK(r.factor <= r.details.at("relaxed_factor") * (1 + 1e-14));
  }

  CHECK_THROWS_AS(fractional_ellipse_perimeter_bound(2, 1, 1.5, 1),
                  framebound::domain_error);
}

TEST_CASE("Klein-Gordon bound") {
  const TransformMatrix id2 = TransformMatrix::identity(2);
  const auto anchored = klein_gordon_bound(id2, 1.7, 2.0);
  CHECK(anchored.factor == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*anchored.rescaled_mass == doctest::Approx(1.7).epsilon(1e-14));

  const TransformMatrix t = TransformMatrix::diagonal({2, 1});
  const auto report = klein_gordon_bound(t, 1.0, 1.0);
  CHECK(report.factor == doctest::Approx(std::sqrt(5.0 / 8.0)).epsilon(1e-14));
  CHECK(*report.rescaled_mass ==
        doctest::Approx(std::sqrt(8.0 / 5.0)).epsilon(1e-14));

  // massless case falls back to the fractional bound at alpha = 1
  CHECK(klein_gordon_bound(t, 0.0, 3.0).bound ==
        doctest::Approx(fractional_bound(t, 1.0, 3.0).bound).epsilon(1e-14));

  CHECK_THROWS_AS(klein_gordon_bound(t, -1.0, 1.0), framebound::domain_error);
}

TEST_CASE("subordinator bound") {
  GaussianRng rng(11);
  const auto rotation = random_orthogonal(rng, 2);
  CHECK(subordinator_bound(rotation, 1.0, 1.0).factor ==
        doctest::Approx(1.0).epsilon(1e-12));

  const TransformMatrix t = TransformMatrix::diagonal({2, 0.5});
  CHECK(subordinator_bound(t, 0.5, 1.0).factor ==
        doctest::Approx(std::sqrt(17.0 / 8.0)).epsilon(1e-14));

  // beta = alpha/2 agrees with the fractional route on det-1 matrices
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 2;
    const TransformMatrix m = det_one(random_invertible(rng, d));
    for (const double alpha : {0.5, 1.0, 2.0}) {
      CHECK(subordinator_bound(m, alpha / 2, 1.0).factor ==
            doctest::Approx(fractional_bound(m, alpha, 1.0).factor)
                .epsilon(1e-12));
    }
    // beta = 1/2 equals the Klein-Gordon factor
    CHECK(subordinator_bound(m, 0.5, 1.0).factor ==
          doctest::Approx(klein_gordon_bound(m, 0.0, 1.0).factor)
              .epsilon(1e-12));
  }

  CHECK_THROWS_AS(subordinator_bound(TransformMatrix::diagonal({2, 1}), 0.5, 1.0),
                  framebound::precondition_error);
  CHECK_THROWS_AS(subordinator_bound(t, 0.0, 1.0), framebound::domain_error);
}

TEST_CASE("general multiplier bound") {
  const TransformMatrix t = TransformMatrix::diagonal({2, 1});
  const double tau = 2.0;
  const auto phi1 = [tau](double x) { return x * x + tau * x; };
  const auto zero = [](double) { return 0.0; };

  const auto mb = general_multiplier_bound(phi1, zero, t);
  CHECK_FALSE(mb.bound.has_value());
  for (const double arg : {0.5, 1.0, 3.0}) {
    CHECK(mb.multiplier(arg) ==
          doctest::Approx(17.0 / 32.0 * arg * arg + 5.0 / 8.0 * tau * arg)
              .epsilon(1e-12));
  }

  // linear case collapses to the classical 1-frame factor
  const auto linear = general_multiplier_bound(
      [](double x) { return x; }, zero, t);
  CHECK(linear.multiplier(2.0) == doctest::Approx(2.0 * 5.0 / 8.0));

  // phi1 == phi2: the multiplier vanishes on orthogonal transformations
  // (the Gram of the inverse is the identity); on general T the Jensen gap
  // is nonnegative for convex phi
  GaussianRng rng(23);
  const auto cancel =
      general_multiplier_bound(phi1, phi1, random_orthogonal(rng, 2));
  for (const double arg : {0.0, 1.0, 2.0}) {
    CHECK(cancel.multiplier(arg) == doctest::Approx(0.0).epsilon(1e-12));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto gap =
        general_multiplier_bound(phi1, phi1, random_invertible(rng, 2));
    CHECK(gap.multiplier(1.0 + trial * 0.5) >= -1e-12);
  }

  // a hook supplies the reference eigenvalue sum of the new multiplier
  const std::function<double(const std::function<double(double)>&)> hook =
      [](const std::function<double(double)>& f) { return f(1.0) + f(2.0); };
  const auto with_hook = general_multiplier_bound(phi1, zero, t, &hook);
  REQUIRE(with_hook.bound.has_value());
  CHECK(*with_hook.bound ==
        doctest::Approx(with_hook.multiplier(1.0) + with_hook.multiplier(2.0))
            .epsilon(1e-12));
}

TEST_CASE("John-ellipse comparison") {
  CHECK(john_domain_bound(1.0, 1.0, 10.0, false).upper ==
        doctest::Approx(10.0).epsilon(1e-14));

  const auto general = john_domain_bound(2.0, 1.0, 1.0, false);
  CHECK(general.upper == doctest::Approx(std::sqrt(5.0 / 8.0)).epsilon(1e-12));
  CHECK(general.lower ==
        doctest::Approx(general.upper / std::sqrt(2.0)).epsilon(1e-12));

  const auto symmetric = john_domain_bound(2.0, 1.0, 1.0, true);
  CHECK(symmetric.lower ==
        doctest::Approx(symmetric.upper / std::pow(2.0, 0.25)).epsilon(1e-12));

  const auto with_inradius = john_domain_bound(2.0, 1.0, 3.0, false, 1.2);
  REQUIRE(with_inradius.inradius_bound.has_value());
  CHECK(*with_inradius.inradius_bound == doctest::Approx(3.0 / 1.2));

  CHECK_THROWS_AS(john_domain_bound(0.5, 1.0, 1.0, false),
                  framebound::domain_error);
}

TEST_CASE("every factor is 1 on orthogonal transformations") {
  GaussianRng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    const TransformMatrix u = random_orthogonal(rng, d);
    CHECK(plate_bound(u, 1.0, 0.5, 1).factor ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(plate_bound(u, 1.0, 0.5, 2).factor ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*plate_bound(u, 1.0, 0.5, 2).rescaled_tau ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(buckling_bound(u, 1.0).factor == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fractional_bound(u, 1.3, 1.0).factor ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(klein_gordon_bound(u, 2.0, 1.0).factor ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*klein_gordon_bound(u, 2.0, 1.0).rescaled_mass ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(subordinator_bound(u, 0.7, 1.0).factor ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("tables and reference files") {
  const auto plate = plate_table();
  CHECK(plate.ratios == std::vector<double>{1.1, 1.2, 2.0, 4.0});
  CHECK(plate.two_frame[0] == doctest::Approx(105.786).epsilon(1e-5));
  CHECK(plate.literature.count("McLaurin upper") == 1);

  const auto buckling = buckling_table();
  CHECK(buckling.ratios.size() == 5);
  CHECK(buckling.two_frame[4] == doctest::Approx(43.34).epsilon(1e-3));

  // text rendering carries the literature disclaimer
  CHECK(plate.to_text().find("not computed") != std::string::npos);

  // reference eigenvalues load from JSON
  const std::string path = "/tmp/framebound_refs_test.json";
  {
    std::ofstream out(path);
    out << R"({"clamped_plate_disk": 100.0, "buckling_disk": 10.0})";
  }
  const auto refs = ReferenceEigenvalues::from_file(path);
  CHECK(refs.clamped_plate_disk == 100.0);
  // the file's value scales the whole row
  CHECK(plate_table(refs).one_frame[0] ==
        doctest::Approx(plate.one_frame[0] / 104.36 * 100.0).epsilon(1e-12));
  CHECK_THROWS_AS(ReferenceEigenvalues::from_file("/nonexistent.json"),
                  framebound::parse_error);
}
