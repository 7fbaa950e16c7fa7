// Acceptance suite: exercises every advertised guarantee end to end and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include "framebound/bounds.hpp"
#include "framebound/elliptic.hpp"
#include "framebound/frames.hpp"
#include "framebound/groups.hpp"
#include "framebound/linalg.hpp"
#include "framebound/moments.hpp"
#include "framebound/rng.hpp"
#include "framebound/symfunc.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using framebound::BigInt;
using framebound::GaussianRng;
using framebound::Rational;
using framebound::linalg::TransformMatrix;
using Clock = std::chrono::steady_clock;

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

TransformMatrix random_square(GaussianRng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = rng.gaussian();
    }
  }
  return TransformMatrix(std::move(m));
}

TransformMatrix random_invertible(GaussianRng& rng, int d,
                                  double min_det = 0.1) {
  for (;;) {
    TransformMatrix t = random_square(rng, d, d);
    if (std::abs(t.entries().determinant()) >= min_det) {
      return t;
    }
  }
}

TransformMatrix random_orthogonal(GaussianRng& rng, int d) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(
      random_square(rng, d, d).entries());
  return TransformMatrix(Eigen::MatrixXd(qr.householderQ()));
}

// --- criterion 1: plate table ----------------------------------------------

bool criterion_plate_table(std::string& message) {
  const auto started = Clock::now();
  const double ref = 104.36;
  const double one_frame[] = {106.262, 111.375, 221.765, 838.1};
  const double two_frame[] = {105.786, 109.621, 192.414, 654.7};
  const double ratios[] = {1.1, 1.2, 2.0, 4.0};
  const double tol[] = {5e-4, 5e-4, 5e-4, 5e-2};
  bool ok = true;
  std::ostringstream detail;
  for (int i = 0; i < 4; ++i) {
    const TransformMatrix t = framebound::bounds::ellipse_transform(ratios[i]);
    const double one = framebound::bounds::plate_bound(t, ref, 0.0, 1).bound;
    const double two = framebound::bounds::plate_bound(t, ref, 0.0, 2).bound;
    if (!close(one, one_frame[i], tol[i]) || !close(two, two_frame[i], tol[i])) {
      ok = false;
      detail << " r=" << ratios[i] << " got (" << one << ", " << two << ")";
    }
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - started).count();
  if (elapsed >= 1.0) {
    ok = false;
    detail << " too slow: " << elapsed << " s";
  }
  message = "both frame rows match to the printed digit" + detail.str();
  return ok;
}

// --- criterion 2: buckling table --------------------------------------------

bool criterion_buckling_table(std::string& message) {
  const auto started = Clock::now();
  const double ref = 14.682;
  const double ratios[] = {1.2, 1.4, 1.6, 2.0, 4.0};
  const double one_frame[] = {15.41, 17.15, 19.47, 24.96, 55.49};
  const double two_frame[] = {15.17, 16.34, 17.90, 21.66, 43.34};
  bool ok = true;
  std::ostringstream detail;
  for (int i = 0; i < 5; ++i) {
    const double tol = ratios[i] == 4.0 ? 5e-2 : 1e-2;
    const TransformMatrix t = framebound::bounds::ellipse_transform(ratios[i]);
    const double two = framebound::bounds::buckling_bound(t, ref).bound;
    const TransformMatrix inv(t.entries().inverse());
    const double one = framebound::linalg::schatten(inv, 4) /
                       framebound::linalg::schatten(inv, 2) * ref;
    if (!close(one, one_frame[i], tol) || !close(two, two_frame[i], tol)) {
      ok = false;
      detail << " r=" << ratios[i] << " got (" << one << ", " << two << ")";
    }
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - started).count();
  if (elapsed >= 1.0) {
    ok = false;
    detail << " too slow: " << elapsed << " s";
  }
  message = "both frame rows match to +-0.01 (+-0.05 at r=4)" + detail.str();
  return ok;
}

// --- criterion 3: cross-method F_p equality ---------------------------------

bool criterion_cross_method(std::string& message) {
  const auto started = Clock::now();
  const int dims[] = {2, 3, 4, 6};
  GaussianRng shape_rng(101);
  bool ok = true;
  std::ostringstream detail;
  double worst_mc_sigma = 0.0;
  for (int i = 0; i < 50 && ok; ++i) {
    const int d = dims[i % 4];
    const int rows = d + (i % 3 == 1 ? 1 : 0);
    const TransformMatrix t = random_square(shape_rng, rows, d);

    // exact agreement of the monomial and cycle-index routes is asserted
    // inside fp_exact; fp_from_matrix adds the trace-power route at 1e-10
    std::vector<Rational> s2;
    for (const double v : framebound::linalg::squared_singular_values(t)) {
      s2.push_back(framebound::rational_from_double(v));
    }
    for (int p = 1; p <= 6 && ok; ++p) {
      double exact = 0;
      try {
        exact = framebound::to_double(framebound::frames::fp_exact(s2, p));
        if (framebound::frames::fp_from_matrix(t, p).value == 0) {
          ok = false;
        }
      } catch (const std::exception& e) {
        ok = false;
        detail << " exact-route failure: " << e.what();
        break;
      }
      if (d == 2) {
        const auto dbl = framebound::linalg::squared_singular_values(t);
        const double sphere =
            framebound::frames::fp_sphere_2d(dbl[0], dbl[1], p);
        if (std::abs(sphere - exact) >
            1e-10 * std::max({std::abs(exact), 1.0})) {
          ok = false;
          detail << " sphere route off at d=2 p=" << p;
        }
      }
    }
    // Monte-Carlo at 10^6 samples; all orders share one sample stream
    const auto mc = framebound::frames::fp_montecarlo_batch(
        t, 6, 1000000, 1300 + static_cast<std::uint64_t>(i));
    for (int p = 1; p <= 6 && ok; ++p) {
      const double exact =
          framebound::to_double(framebound::frames::fp_exact(s2, p));
      const auto& estimate = mc[static_cast<std::size_t>(p - 1)];
      const double sigmas = std::abs(estimate.estimate - exact) /
                            std::max(estimate.standard_error, 1e-300);
      worst_mc_sigma = std::max(worst_mc_sigma, sigmas);
      if (sigmas > 4.0) {
        ok = false;
        detail << " MC off by " << sigmas << " sigma at i=" << i
               << " p=" << p;
      }
    }
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - started).count();
  if (elapsed >= 30.0) {
    ok = false;
    detail << " too slow: " << elapsed << " s";
  }
  std::ostringstream summary;
  summary << "50 matrices x p<=6: exact routes agree, sphere within 1e-10, "
             "MC worst deviation "
          << worst_mc_sigma << " sigma, " << elapsed << " s" << detail.str();
  message = summary.str();
  return ok;
}

// --- criterion 4: tight-frame verification matrix ---------------------------

bool criterion_verification_matrix(std::string& message) {
  const auto started = Clock::now();
  struct Row {
    framebound::groups::FiniteGroup group;
    std::vector<int> pass_orders;
    std::vector<int> fail_orders;
  };
  const std::vector<Row> rows = {
      {framebound::groups::dihedral_group(5), {1, 2, 3, 4}, {5}},
      {framebound::groups::dihedral_group(4), {1}, {2}},
      {framebound::groups::hyperoctahedral_group(3), {1}, {2}},
      {framebound::groups::icosahedral_group(true), {1, 2}, {3}},
  };
  GaussianRng rng(202);
  bool ok = true;
  std::ostringstream detail;
  for (const auto& row : rows) {
    const int d = row.group.dimension();
    for (int copy = 0; copy < 5; ++copy) {
      const TransformMatrix t = random_invertible(rng, d);
      for (const int p : row.pass_orders) {
        const auto v = framebound::frames::verify_tight_frame(
            row.group, t, p, 50, 1e-9, 303 + copy);
        if (!v.tight) {
          ok = false;
          detail << " " << row.group.provenance() << " unexpectedly fails p="
                 << p << " (dev " << v.max_relative_deviation << ")";
        }
      }
      for (const int p : row.fail_orders) {
        const auto v = framebound::frames::verify_tight_frame(
            row.group, t, p, 50, 1e-9, 303 + copy);
        if (v.tight) {
          ok = false;
          detail << " " << row.group.provenance() << " unexpectedly tight p="
                 << p;
        }
      }
    }
  }
  // the square's 2-frame failure is witnessed by a > 1e-3 deviation
  const auto square = framebound::frames::verify_tight_frame(
      framebound::groups::dihedral_group(4),
      TransformMatrix::diagonal({2, 1}), 2, 50, 1e-9, 7);
  if (square.max_relative_deviation <= 1e-3) {
    ok = false;
    detail << " square deviation only " << square.max_relative_deviation;
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - started).count();
  if (elapsed >= 60.0) {
    ok = false;
    detail << " too slow: " << elapsed << " s";
  }
  message =
      "pentagon p<=4 / square p=1 / cube p=1 / icosahedron p=2 verify tight, "
      "each next order fails" +
      detail.str();
  return ok;
}

// --- criterion 5: Molien series and admissibility ---------------------------

bool criterion_molien(std::string& message) {
  bool ok = true;
  std::ostringstream detail;

  // the printed series 2*t^4 + t^3 + t^2 + 1 comes from the rotation
  // subgroup of the full simplex (tetrahedral) symmetry
  const auto tetra_rot = framebound::groups::rotation_subgroup(
      framebound::groups::simplex_group(3));
  const auto tetra = framebound::groups::molien_series(tetra_rot, 4);
  if (tetra.coefficients() != std::vector<long long>{1, 0, 1, 1, 2} ||
      tetra.to_polynomial_string() != "2*t^4 + t^3 + t^2 + 1") {
    ok = false;
    detail << " tetrahedral rotations gave " << tetra.to_polynomial_string();
  }

  // icosahedral rotations keep a unique invariant through degree 4 (their
  // fundamental degrees are 2, 6, 10 plus the degree-15 skew invariant)
  const auto icosa_rot = framebound::groups::icosahedral_group(false);
  const auto icosa = framebound::groups::molien_series(icosa_rot, 4);
  if (icosa.coefficients() != std::vector<long long>{1, 0, 1, 0, 1}) {
    ok = false;
    detail << " icosahedral rotations gave " << icosa.to_polynomial_string();
  }
  if (icosa_rot.order() != 60) {
    ok = false;
    detail << " icosahedral rotation order " << icosa_rot.order();
  }

  const struct {
    const char* name;
    framebound::groups::FiniteGroup group;
    int expected;
  } orders[] = {
      {"dihedral(4)", framebound::groups::dihedral_group(4), 1},
      {"dihedral(5)", framebound::groups::dihedral_group(5), 4},
      {"icosahedral-full", framebound::groups::icosahedral_group(true), 2},
      {"icosahedral-rotation", icosa_rot, 2},
  };
  for (const auto& row : orders) {
    const int got = framebound::groups::max_frame_order(row.group);
    if (got != row.expected) {
      ok = false;
      detail << " " << row.name << " -> " << got << " (expected "
             << row.expected << ")";
    }
  }
  message = "printed series reproduced from tetrahedral rotations; "
            "icosahedral-rotation = 1 + t^2 + t^4; frame orders 1/4/2/2" +
            detail.str();
  return ok;
}

// --- criterion 6: exact identities ------------------------------------------

bool criterion_exact_identities(std::string& message) {
  bool ok = true;
  std::ostringstream detail;
  for (int p = 0; p <= 20; ++p) {
    BigInt sum = 0;
    for (int k = 0; k <= p; ++k) {
      sum += framebound::binomial(2 * k, k) *
             framebound::binomial(2 * p - 2 * k, p - k);
    }
    if (sum != BigInt(1) << (2 * p)) {
      ok = false;
      detail << " binomial identity fails at p=" << p;
    }
  }

  // chi2_moment internally cross-asserts the cycle-index route against the
  // monomial-basis route, exactly
  GaussianRng rng(404);
  for (int p = 1; p <= 8 && ok; ++p) {
    std::vector<Rational> a;
    const int n = 1 + p % 5;
    for (int i = 0; i < n; ++i) {
      a.emplace_back(1 + static_cast<int>(rng.uniform01() * 9),
                     1 + static_cast<int>(rng.uniform01() * 4));
    }
    try {
      framebound::symfunc::chi2_moment(a, p);
    } catch (const std::exception& e) {
      ok = false;
      detail << " cross-basis equality failed at p=" << p << ": " << e.what();
    }
  }

  const Rational nineteen = framebound::symfunc::chi2_moment(
      std::vector<Rational>{Rational(1), Rational(2)}, 2);
  if (nineteen != 19) {
    ok = false;
    detail << " chi2((1,2),2) = " << framebound::rational_string(nineteen);
  }
  message = "binomial convolution = 4^p through p=20; chi2 cross-basis exact "
            "through p=8; chi2((1,2),2) = 19" +
            detail.str();
  return ok;
}

// --- criterion 7: moments ----------------------------------------------------

bool criterion_moments(std::string& message) {
  bool ok = true;
  std::ostringstream detail;
  GaussianRng rng(505);

  const framebound::moments::Shape disk = framebound::moments::Ball{1.0, 2};
  const framebound::moments::Shape pentagon =
      framebound::moments::regular_polygon(5);

  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const TransformMatrix t = [&] {
      for (;;) {
        TransformMatrix candidate = random_square(rng, 2, 2);
        if (std::abs(candidate.entries().determinant()) >= 0.2) {
          return candidate;
        }
      }
    }();
    for (const auto& [shape, max_p] :
         std::vector<std::pair<const framebound::moments::Shape*, int>>{
             {&disk, 3}, {&pentagon, 2}}) {
      for (int p = 1; p <= max_p; ++p) {
        const double predicted =
            framebound::moments::transformed_moment(*shape, t, p);
        const double direct = framebound::moments::moment(
            framebound::moments::apply_transform(t, *shape), p);
        const double rel = std::abs(predicted - direct) / std::abs(direct);
        worst = std::max(worst, rel);
        if (rel > 1e-8) {
          ok = false;
          detail << " transformed vs direct off by " << rel;
        }
      }
      const auto [fwd, bwd] =
          framebound::moments::two_dim_reciprocity(*shape, t, 2);
      const double rel = std::abs(fwd - bwd) / std::abs(fwd);
      if (rel > 1e-8) {
        ok = false;
        detail << " reciprocity off by " << rel;
      }
    }
  }

  framebound::moments::Polygon square;
  square.vertices = {{0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}};
  const double i4 = framebound::moments::moment(square, 2);
  if (std::abs(i4 - 7.0 / 180.0) > 1e-12) {
    ok = false;
    detail << " unit-square I_4 = " << i4;
  }
  std::ostringstream summary;
  summary << "disk+pentagon under 20 random maps within 1e-8 (worst " << worst
          << "); reciprocity holds; square I_4 = 7/180" << detail.str();
  message = summary.str();
  return ok;
}

// --- criterion 8: sandwich ----------------------------------------------------

bool criterion_sandwich(std::string& message) {
  bool ok = true;
  std::ostringstream detail;
  GaussianRng rng(606);
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    const int d = 2 + trial % 3;
    const int p = 1 + trial % 4;
    const TransformMatrix t = random_square(rng, d, d);
    const auto [lower, upper] = framebound::frames::nontight_sandwich(t, p);
    const double fp = framebound::frames::fp_from_matrix(t, p).value;
    if (!(lower <= fp * (1 + 1e-12)) || !(fp <= upper * (1 + 1e-12))) {
      ok = false;
      detail << " bracket violated at trial " << trial;
    }
    // generic matrices with distinct singular values sit strictly inside
    const auto s2 = framebound::linalg::squared_singular_values(t);
    const double spread = (s2.front() - s2.back()) / std::max(s2.front(), 1e-300);
    if (p >= 2 && spread > 1e-3 &&
        (std::abs(upper - fp) <= 1e-10 * fp ||
         std::abs(fp - lower) <= 1e-10 * fp)) {
      ok = false;
      detail << " unexpected equality at trial " << trial;
    }
  }
  // equality exactly on scalar multiples of orthogonal matrices
  for (int trial = 0; trial < 50 && ok; ++trial) {
    const int d = 2 + trial % 3;
    const double c = 0.5 + rng.uniform01() * 2.0;
    const TransformMatrix t(c * random_orthogonal(rng, d).entries());
    for (int p = 1; p <= 4; ++p) {
      const auto [lower, upper] = framebound::frames::nontight_sandwich(t, p);
      const double fp = framebound::frames::fp_from_matrix(t, p).value;
      if (std::abs(upper - fp) > 1e-10 * fp ||
          std::abs(fp - lower) > 1e-10 * fp) {
        ok = false;
        detail << " no equality on a scalar-orthogonal at trial " << trial;
      }
    }
  }
  message = "1000 random matrices bracketed, equality exactly on scalar "
            "multiples of orthogonals" +
            detail.str();
  return ok;
}

// --- criterion 9: perimeter --------------------------------------------------

bool criterion_perimeter(std::string& message) {
  bool ok = true;
  std::ostringstream detail;
  GaussianRng rng(707);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 0.3 + rng.uniform01() * 2.7;
    const double b = 0.3 + rng.uniform01() * 2.7;
    const double sphere =
        framebound::frames::fp_sphere_2d(1 / (a * a), 1 / (b * b), 0.5);
    const double agm = framebound::ellipse_perimeter(1 / a, 1 / b) /
                       (2 * std::numbers::pi);
    const double rel = std::abs(sphere - agm) / agm;
    worst = std::max(worst, rel);
    if (rel > 1e-9) {
      ok = false;
      detail << " quadrature vs AGM off by " << rel << " at a=" << a
             << " b=" << b;
    }
    for (const double alpha : {0.25, 0.5, 1.0}) {
      const auto report =
          framebound::bounds::fractional_ellipse_perimeter_bound(a, b, alpha,
                                                                 1.0);
      if (report.factor > report.details.at("relaxed_factor") * (1 + 1e-14)) {
        ok = false;
        detail << " Jensen direction violated at alpha=" << alpha;
      }
    }
  }
  std::ostringstream summary;
  summary << "sphere quadrature equals the AGM perimeter (worst " << worst
          << "); exact factor <= Jensen relaxation for alpha in "
             "{0.25, 0.5, 1}"
          << detail.str();
  message = summary.str();
  return ok;
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"plate table (Table 1 frame rows)", criterion_plate_table},
      {"buckling table (Table 2 frame rows)", criterion_buckling_table},
      {"cross-method F_p equality", criterion_cross_method},
      {"tight-frame verification matrix", criterion_verification_matrix},
      {"Molien series and frame orders", criterion_molien},
      {"exact combinatorial identities", criterion_exact_identities},
      {"moments of mass", criterion_moments},
      {"non-tight sandwich", criterion_sandwich},
      {"ellipse perimeter factor", criterion_perimeter},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string message;
    bool ok = false;
    try {
      ok = criteria[i].run(message);
    } catch (const std::exception& e) {
      ok = false;
      message = std::string("exception: ") + e.what();
    }
    if (!ok) {
      ++failures;
    }
    std::printf("[%s] criterion %zu: %s — %s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), message.c_str());
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d of %zu acceptance criteria FAILED\n", failures,
                criteria.size());
  }
  return failures;
}
