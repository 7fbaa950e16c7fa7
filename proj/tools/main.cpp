// framebound command-line interface: frame constants, tight-frame
// verification, Molien series, moments of mass and spectral bounds.

#include "framebound/bounds.hpp"
#include "framebound/errors.hpp"
#include "framebound/frames.hpp"
#include "framebound/groups.hpp"
#include "framebound/linalg.hpp"
#include "framebound/moments.hpp"
#include "framebound/symfunc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using framebound::Rational;
using framebound::linalg::TransformMatrix;
using framebound::linalg::format_double;
using json = nlohmann::json;

enum class Format { Text, Json };

void emit(Format format, const json& report,
          const std::function<void(std::ostream&)>& text_writer) {
  if (format == Format::Json) {
    std::cout << report.dump(2) << "\n";
  } else {
    text_writer(std::cout);
  }
}

TransformMatrix load_matrix(const std::string& path) {
  return TransformMatrix::from_file(path);
}

framebound::groups::FiniteGroup resolve_group(const std::string& spec,
                                              const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) {
      throw framebound::parse_error(file + ": cannot open file");
    }
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw framebound::parse_error(file + ": " + e.what());
    }
    return framebound::groups::group_from_json(j);
  }
  if (spec.empty()) {
    throw framebound::domain_error("a group is required (--group or "
                                   "--group-file)");
  }
  return framebound::groups::parse_group_spec(spec);
}

std::vector<Rational> parse_weights(const std::string& csv) {
  std::vector<Rational> weights;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string field =
        csv.substr(start, comma == std::string::npos ? std::string::npos
                                                     : comma - start);
    if (field.empty()) {
      throw framebound::domain_error("empty weight in list '" + csv + "'");
    }
    weights.push_back(framebound::rational_from_decimal(field));
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return weights;
}

TransformMatrix bounds_matrix(const std::string& matrix_path, double ratio) {
  if (!matrix_path.empty()) {
    return load_matrix(matrix_path);
  }
  if (ratio > 0) {
    return framebound::bounds::ellipse_transform(ratio);
  }
  throw framebound::domain_error(
      "provide the transformation via --matrix FILE or --ratio R");
}

void print_bound_report(Format format,
                        const framebound::bounds::BoundReport& report) {
  emit(format, report.to_json(),
       [&](std::ostream& out) { out << report.to_text(); });
}

int dispatch(int argc, char** argv) {
  CLI::App app{"generalized tight p-frame constants and sharp spectral "
               "bounds for linearly transformed symmetric domains"};
  app.require_subcommand(1);

  std::string format_name = "text";
  app.add_option("--format", format_name, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // ---- fp ----
  auto* fp_cmd = app.add_subcommand(
      "fp", "frame constant F_p of a transformation matrix");
  std::string fp_matrix;
  double fp_order = 0;
  std::string fp_method = "auto";
  std::uint64_t fp_samples = 1000000;
  std::uint64_t fp_seed = 0;
  fp_cmd->add_option("--matrix", fp_matrix, "matrix file (CSV or JSON)")
      ->required();
  fp_cmd->add_option("--p", fp_order, "frame order (real > 0)")->required();
  fp_cmd->add_option("--method", fp_method, "auto|mc|sphere")
      ->check(CLI::IsMember({"auto", "mc", "sphere"}))
      ->capture_default_str();
  fp_cmd->add_option("--samples", fp_samples, "Monte-Carlo sample count")
      ->capture_default_str();
  fp_cmd->add_option("--seed", fp_seed, "random seed")->capture_default_str();

  // ---- verify-frame ----
  auto* verify_cmd = app.add_subcommand(
      "verify-frame", "verify the tight p-frame identity by orbit averaging");
  std::string verify_group;
  std::string verify_group_file;
  std::string verify_matrix;
  int verify_order = 0;
  int verify_trials = 50;
  double verify_tol = 1e-9;
  std::uint64_t verify_seed = 0;
  verify_cmd->add_option("--group", verify_group,
                         "group address, e.g. dihedral:5");
  verify_cmd->add_option("--group-file", verify_group_file,
                         "custom group as a JSON list of matrices");
  verify_cmd->add_option("--matrix", verify_matrix, "matrix file")->required();
  verify_cmd->add_option("--p", verify_order, "frame order")->required();
  verify_cmd->add_option("--trials", verify_trials, "random unit vectors")
      ->capture_default_str();
  verify_cmd->add_option("--tol", verify_tol, "relative tolerance")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "random seed")
      ->capture_default_str();

  // ---- molien ----
  auto* molien_cmd = app.add_subcommand(
      "molien", "Molien series of a finite isometry group");
  std::string molien_group;
  std::string molien_group_file;
  int molien_degree = 10;
  molien_cmd->add_option("--group", molien_group, "group address");
  molien_cmd->add_option("--group-file", molien_group_file,
                         "custom group JSON file");
  molien_cmd->add_option("--max-degree", molien_degree, "series truncation")
      ->capture_default_str();

  // ---- max-frame-order ----
  auto* order_cmd = app.add_subcommand(
      "max-frame-order", "largest admissible tight frame order of a group");
  std::string order_group;
  std::string order_group_file;
  int order_pmax = 16;
  order_cmd->add_option("--group", order_group, "group address");
  order_cmd->add_option("--group-file", order_group_file,
                        "custom group JSON file");
  order_cmd->add_option("--p-max", order_pmax, "search cap")
      ->capture_default_str();

  // ---- chi2-moment ----
  auto* chi2_cmd = app.add_subcommand(
      "chi2-moment", "p-moment of a weighted sum of squared Gaussians");
  std::string chi2_weights;
  int chi2_order = 0;
  bool chi2_doubled = false;
  chi2_cmd->add_option("--a", chi2_weights, "comma-separated weights")
      ->required();
  chi2_cmd->add_option("--p", chi2_order, "moment order")->required();
  chi2_cmd->add_flag("--doubled", chi2_doubled,
                     "each weight appears twice (complex chi-squared)");

  // ---- moments ----
  auto* moments_cmd = app.add_subcommand(
      "moments", "2p-moments of mass of ellipses, balls and polygons");
  std::string moments_shape;
  std::string moments_matrix;
  int moments_order = 1;
  std::string moments_op = "moment";
  moments_cmd->add_option("--shape", moments_shape, "shape JSON file")
      ->required();
  moments_cmd->add_option("--p", moments_order, "moment order (I_{2p})")
      ->capture_default_str();
  moments_cmd->add_option("--op", moments_op,
                          "moment|transformed|reciprocity")
      ->check(CLI::IsMember({"moment", "transformed", "reciprocity"}))
      ->capture_default_str();
  moments_cmd->add_option("--matrix", moments_matrix,
                          "transformation matrix file");

  // ---- sandwich ----
  auto* sandwich_cmd = app.add_subcommand(
      "sandwich", "non-tight frame bracket for F_p");
  std::string sandwich_matrix;
  int sandwich_order = 0;
  sandwich_cmd->add_option("--matrix", sandwich_matrix, "matrix file")
      ->required();
  sandwich_cmd->add_option("--p", sandwich_order, "frame order")->required();

  // ---- bounds ----
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "spectral upper bounds for transformed symmetric domains");
  bounds_cmd->require_subcommand(1);
  std::string b_matrix;
  double b_ratio = 0;
  double b_ref = 0;
  double b_tau = 0;
  int b_order = 2;
  double b_alpha = 1;
  double b_beta = 1;
  double b_mass = 0;
  double b_a = 1;
  double b_b = 1;
  bool b_symmetric = false;
  double b_inradius = 0;

  auto* plate_cmd = bounds_cmd->add_subcommand("plate", "clamped plate with tension");
  auto* buckling_cmd = bounds_cmd->add_subcommand("buckling", "plate buckling");
  auto* fractional_cmd = bounds_cmd->add_subcommand("fractional", "fractional Laplacian");
  auto* kg_cmd = bounds_cmd->add_subcommand("kg", "Klein-Gordon operator");
  auto* subordinator_cmd =
      bounds_cmd->add_subcommand("subordinator", "generic Bernstein subordinator");
  auto* perimeter_cmd = bounds_cmd->add_subcommand(
      "perimeter", "ellipse perimeter sharpening of the fractional bound");
  auto* john_cmd = bounds_cmd->add_subcommand(
      "john", "John-ellipse comparison for planar domains");

  for (auto* cmd : {plate_cmd, buckling_cmd, fractional_cmd, kg_cmd,
                    subordinator_cmd}) {
    cmd->add_option("--matrix", b_matrix, "matrix file (CSV or JSON)");
    cmd->add_option("--ratio", b_ratio,
                    "ellipse semiaxis ratio r (T = diag(sqrt r, 1/sqrt r))");
    cmd->add_option("--ref", b_ref, "reference eigenvalue (sum) on the "
                                    "symmetric domain")
        ->required();
  }
  plate_cmd->add_option("--tau", b_tau, "tension")->capture_default_str();
  plate_cmd->add_option("--order", b_order, "frame order, 1 or 2")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  fractional_cmd->add_option("--alpha", b_alpha, "fractional order in (0,2]")
      ->required();
  subordinator_cmd->add_option("--beta", b_beta, "scaling exponent in (0,1]")
      ->required();
  kg_cmd->add_option("--mass", b_mass, "relativistic mass")
      ->capture_default_str();
  perimeter_cmd->add_option("--a", b_a, "ellipse semiaxis a")->required();
  perimeter_cmd->add_option("--b", b_b, "ellipse semiaxis b")->required();
  perimeter_cmd->add_option("--alpha", b_alpha, "fractional order in (0,1]")
      ->required();
  perimeter_cmd
      ->add_option("--ref", b_ref, "reference eigenvalue sum on the disk")
      ->required();
  john_cmd->add_option("--a", b_a, "John-ellipse long semiaxis (short = 1)")
      ->required();
  john_cmd->add_option("--alpha", b_alpha, "fractional order in (0,2]")
      ->required();
  john_cmd->add_option("--ref", b_ref, "disk eigenvalue lambda_disk")
      ->required();
  john_cmd->add_flag("--symmetric", b_symmetric,
                     "domain is centrally symmetric");
  john_cmd->add_option("--inradius", b_inradius,
                       "also report the inradius comparison");

  // ---- tables ----
  auto* tables_cmd = app.add_subcommand(
      "tables", "reproduce the ellipse bound tables");
  std::string tables_kind;
  std::string tables_refs;
  tables_cmd->add_option("table", tables_kind, "plate|buckling")
      ->required()
      ->check(CLI::IsMember({"plate", "buckling"}));
  tables_cmd->add_option("--refs", tables_refs,
                         "JSON file with reference eigenvalues");

  // allow global flags like --format after the subcommand name
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands({})) {
      nested->fallthrough();
    }
  }

  CLI11_PARSE(app, argc, argv);
  const Format format = format_name == "json" ? Format::Json : Format::Text;

  if (*fp_cmd) {
    const TransformMatrix t = load_matrix(fp_matrix);
    const int d = t.cols();
    const bool integral =
        fp_order == std::round(fp_order) && fp_order >= 1 && fp_order <= 16;
    std::string method = fp_method;
    if (method == "auto") {
      method = integral ? "exact" : (d == 2 ? "sphere" : "mc");
    }
    json report;
    report["command"] = "fp";
    report["p"] = fp_order;
    report["d"] = d;
    if (method == "exact") {
      const auto fc = framebound::frames::fp_from_matrix(
          t, static_cast<int>(fp_order));
      report["method"] = framebound::frames::method_name(fc.method);
      report["value"] = fc.value;
    } else if (method == "sphere") {
      if (d != 2) {
        throw framebound::domain_error("sphere method needs d = 2");
      }
      const auto s2 = framebound::linalg::squared_singular_values(t);
      report["method"] = "sphere2d";
      report["value"] = framebound::frames::fp_sphere_2d(s2[0], s2[1], fp_order);
    } else {
      const auto mc =
          framebound::frames::fp_montecarlo(t, fp_order, fp_samples, fp_seed);
      report["method"] = "montecarlo";
      report["value"] = mc.estimate;
      report["standard_error"] = mc.standard_error;
      report["samples"] = mc.samples;
      report["seed"] = mc.seed;
    }
    emit(format, report, [&](std::ostream& out) {
      out << "fp (method " << report["method"].get<std::string>();
      if (report.contains("seed")) {
        out << ", seed " << fp_seed;
      }
      out << ")\n";
      out << "  p     = " << format_double(fp_order) << "\n";
      out << "  d     = " << d << "\n";
      out << "  value = " << format_double(report["value"].get<double>())
          << "\n";
      if (report.contains("standard_error")) {
        out << "  se    = "
            << format_double(report["standard_error"].get<double>()) << "\n";
      }
    });
    return 0;
  }

  if (*verify_cmd) {
    const auto group = resolve_group(verify_group, verify_group_file);
    const TransformMatrix t = load_matrix(verify_matrix);
    const auto v = framebound::frames::verify_tight_frame(
        group, t, verify_order, verify_trials, verify_tol, verify_seed);
    json report;
    report["command"] = "verify-frame";
    report["group"] = v.group;
    report["p"] = v.p;
    report["d"] = v.d;
    report["value"] = v.frame_constant;
    report["method"] = "orbit";
    report["deviation"] = v.max_relative_deviation;
    report["verdict"] = v.tight ? "tight" : "not-tight";
    report["trials"] = v.trials;
    report["tol"] = v.tolerance;
    report["seed"] = v.seed;
    emit(format, report, [&](std::ostream& out) {
      out << "verify-frame (seed " << v.seed << ")\n";
      out << "  group     = " << v.group << "\n";
      out << "  p         = " << v.p << "\n";
      out << "  F_p       = " << format_double(v.frame_constant) << "\n";
      out << "  deviation = " << format_double(v.max_relative_deviation)
          << " over " << v.trials << " trials\n";
      out << "  verdict   = " << (v.tight ? "tight" : "not-tight") << "\n";
    });
    return 0;
  }

  if (*molien_cmd) {
    const auto group = resolve_group(molien_group, molien_group_file);
    const auto series = framebound::groups::molien_series(group, molien_degree);
    json report;
    report["command"] = "molien";
    report["group"] = group.provenance();
    report["order"] = group.order();
    report["coefficients"] = series.coefficients();
    report["polynomial"] = series.to_polynomial_string();
    emit(format, report, [&](std::ostream& out) {
      out << "molien (" << group.provenance() << ", order " << group.order()
          << ")\n";
      out << "  coefficients =";
      for (const long long c : series.coefficients()) {
        out << " " << c;
      }
      out << "\n  series       = " << series.to_polynomial_string() << "\n";
    });
    return 0;
  }

  if (*order_cmd) {
    const auto group = resolve_group(order_group, order_group_file);
    const int order = framebound::groups::max_frame_order(group, order_pmax);
    json report;
    report["command"] = "max-frame-order";
    report["group"] = group.provenance();
    report["order"] = group.order();
    report["max_frame_order"] = order;
    emit(format, report, [&](std::ostream& out) {
      out << "max-frame-order (" << group.provenance() << ") = " << order
          << "\n";
    });
    return 0;
  }

  if (*chi2_cmd) {
    const auto weights = parse_weights(chi2_weights);
    const Rational value = framebound::symfunc::chi2_moment(
        weights, chi2_order, chi2_doubled);
    json report;
    report["command"] = "chi2-moment";
    report["p"] = chi2_order;
    report["doubled"] = chi2_doubled;
    report["exact"] = framebound::rational_string(value);
    report["value"] = framebound::to_double(value);
    emit(format, report, [&](std::ostream& out) {
      out << "chi2-moment (p = " << chi2_order
          << (chi2_doubled ? ", doubled" : "") << ")\n";
      out << "  exact = " << framebound::rational_string(value) << "\n";
      out << "  value = " << format_double(framebound::to_double(value))
          << "\n";
    });
    return 0;
  }

  if (*moments_cmd) {
    const auto shape = framebound::moments::shape_from_file(moments_shape);
    json report;
    report["command"] = "moments";
    report["op"] = moments_op;
    report["p"] = moments_order;
    if (moments_op == "moment") {
      const auto r = framebound::moments::moment_report(shape, moments_order);
      report["volume"] = r.volume;
      report["moment"] = r.moment;
      report["ratio"] = r.ratio;
      emit(format, report, [&](std::ostream& out) {
        out << "moments (p = " << moments_order << ")\n";
        out << "  volume = " << format_double(r.volume) << "\n";
        out << "  I_2p   = " << format_double(r.moment) << "\n";
        out << "  ratio  = " << format_double(r.ratio) << "\n";
      });
    } else {
      if (moments_matrix.empty()) {
        throw framebound::domain_error("--matrix is required for op '" +
                                       moments_op + "'");
      }
      const TransformMatrix t = load_matrix(moments_matrix);
      if (moments_op == "transformed") {
        const double value = framebound::moments::transformed_moment(
            shape, t, moments_order);
        report["transformed_moment"] = value;
        if (framebound::moments::shape_dimension(shape) == 2) {
          report["image_moment"] = framebound::moments::moment(
              framebound::moments::apply_transform(t, shape), moments_order);
        }
        emit(format, report, [&](std::ostream& out) {
          out << "transformed moment (p = " << moments_order
              << ") = " << format_double(value) << "\n";
          if (report.contains("image_moment")) {
            out << "direct image moment  = "
                << format_double(report["image_moment"].get<double>()) << "\n";
          }
        });
      } else {
        const auto [forward, backward] =
            framebound::moments::two_dim_reciprocity(shape, t, moments_order);
        report["ratio_forward"] = forward;
        report["ratio_backward"] = backward;
        emit(format, report, [&](std::ostream& out) {
          out << "reciprocity (p = " << moments_order << ")\n";
          out << "  A^{1+p}/I_2p at T(shape)     = " << format_double(forward)
              << "\n";
          out << "  A^{1+p}/I_2p at T^{-1}(shape) = "
              << format_double(backward) << "\n";
        });
      }
    }
    return 0;
  }

  if (*sandwich_cmd) {
    const TransformMatrix t = load_matrix(sandwich_matrix);
    const auto [lower, upper] =
        framebound::frames::nontight_sandwich(t, sandwich_order);
    const auto fc = framebound::frames::fp_from_matrix(t, sandwich_order);
    json report;
    report["command"] = "sandwich";
    report["p"] = sandwich_order;
    report["d"] = t.cols();
    report["lower"] = lower;
    report["fp"] = fc.value;
    report["upper"] = upper;
    emit(format, report, [&](std::ostream& out) {
      out << "sandwich (p = " << sandwich_order << ")\n";
      out << "  lower = " << format_double(lower) << "\n";
      out << "  F_p   = " << format_double(fc.value) << "\n";
      out << "  upper = " << format_double(upper) << "\n";
    });
    return 0;
  }

  if (*bounds_cmd) {
    if (*plate_cmd) {
      print_bound_report(format,
                         framebound::bounds::plate_bound(
                             bounds_matrix(b_matrix, b_ratio), b_ref, b_tau,
                             b_order));
    } else if (*buckling_cmd) {
      print_bound_report(format,
                         framebound::bounds::buckling_bound(
                             bounds_matrix(b_matrix, b_ratio), b_ref));
    } else if (*fractional_cmd) {
      print_bound_report(format,
                         framebound::bounds::fractional_bound(
                             bounds_matrix(b_matrix, b_ratio), b_alpha, b_ref));
    } else if (*kg_cmd) {
      print_bound_report(format,
                         framebound::bounds::klein_gordon_bound(
                             bounds_matrix(b_matrix, b_ratio), b_mass, b_ref));
    } else if (*subordinator_cmd) {
      print_bound_report(format,
                         framebound::bounds::subordinator_bound(
                             bounds_matrix(b_matrix, b_ratio), b_beta, b_ref));
    } else if (*perimeter_cmd) {
      print_bound_report(
          format, framebound::bounds::fractional_ellipse_perimeter_bound(
                      b_a, b_b, b_alpha, b_ref));
    } else if (*john_cmd) {
      const auto jb = framebound::bounds::john_domain_bound(
          b_a, b_alpha, b_ref, b_symmetric,
          b_inradius > 0 ? std::optional<double>(b_inradius) : std::nullopt);
      json report;
      report["command"] = "bounds john";
      report["a"] = b_a;
      report["alpha"] = b_alpha;
      report["upper"] = jb.upper;
      report["lower"] = jb.lower;
      report["containment"] = jb.containment;
      if (jb.inradius_bound) {
        report["inradius_bound"] = *jb.inradius_bound;
      }
      emit(format, report, [&](std::ostream& out) {
        out << "john bound (a = " << format_double(b_a) << ", alpha = "
            << format_double(b_alpha) << ")\n";
        out << "  upper = " << format_double(jb.upper) << "\n";
        out << "  lower = " << format_double(jb.lower) << "\n";
        if (jb.inradius_bound) {
          out << "  inradius comparison = "
              << format_double(*jb.inradius_bound) << "\n";
        }
      });
    }
    return 0;
  }

  if (*tables_cmd) {
    framebound::bounds::ReferenceEigenvalues refs;
    if (!tables_refs.empty()) {
      refs = framebound::bounds::ReferenceEigenvalues::from_file(tables_refs);
    }
    const auto table = tables_kind == "plate"
                           ? framebound::bounds::plate_table(refs)
                           : framebound::bounds::buckling_table(refs);
    emit(format, table.to_json(),
         [&](std::ostream& out) { out << table.to_text(); });
    return 0;
  }

  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const framebound::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const framebound::precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const framebound::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
