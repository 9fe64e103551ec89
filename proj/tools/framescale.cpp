// framescale: decide scalability of finite frames, construct orthogonal
// extensions, and export quadric-cone geometry.

#include "framescale/experiments.hpp"
#include "framescale/extension.hpp"
#include "framescale/fast_tests.hpp"
#include "framescale/geometry.hpp"
#include "framescale/io.hpp"
#include "framescale/linalg.hpp"
#include "framescale/scaling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace framescale;
using nlohmann::json;

namespace {

constexpr int kExitScalable = 0;
constexpr int kExitNotScalable = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalFailure = 3;

json vector_to_json(const VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json matrix_to_json(const MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json certificate_to_json(const Certificate& cert) {
  return {{"form", cert.form == CertificateForm::NegativeTrace
                       ? "negative-trace"
                       : "zero-trace"},
          {"matrix", matrix_to_json(cert.matrix)},
          {"trace", cert.trace},
          {"form_values", vector_to_json(cert.form_values)}};
}

struct CommonOpts {
  std::string file;
  std::string format = "auto";
  std::string profile = "default";
  bool timing = false;
};

Tolerances tolerances_of(const CommonOpts& opts) {
  return opts.profile == "strict" ? Tolerances::strict_profile()
                                  : Tolerances{};
}

FrameFormat format_of(const CommonOpts& opts) {
  if (opts.format == "csv") return FrameFormat::Csv;
  if (opts.format == "json") return FrameFormat::Json;
  return FrameFormat::Auto;
}

Frame load_frame(const CommonOpts& opts) {
  return parse_frame_file(opts.file, format_of(opts), tolerances_of(opts));
}

int run_analyze(const CommonOpts& opts) {
  const Tolerances tol = tolerances_of(opts);
  const auto t0 = std::chrono::steady_clock::now();

  const Frame frame = load_frame(opts);
  if (!is_frame(frame, tol))
    throw InputError("input does not span R^" + std::to_string(frame.dim()));
  const auto [lower, upper] = frame_bounds(frame, tol);
  const StrictScalingOutcome out = solve_strict_scaling(frame, tol);

  json report;
  report["schema"] = 1;
  report["command"] = "analyze";
  VectorXd norms(frame.size());
  for (int j = 0; j < frame.size(); ++j) norms(j) = frame.vector(j).norm();
  report["frame"] = {{"dim", frame.dim()},
                     {"count", frame.size()},
                     {"vector_norms", vector_to_json(norms)}};
  report["frame_bounds"] = {{"lower", lower}, {"upper", upper}};

  int exit_code = kExitScalable;
  switch (out.verdict) {
    case StrictVerdict::StrictlyScalable:
      report["verdict"] = "strictly-scalable";
      break;
    case StrictVerdict::ScalableNotStrictly:
      report["verdict"] = "scalable-not-strictly";
      report["zero_weight_indices"] = out.zero_weight_indices;
      break;
    case StrictVerdict::NotScalable:
      report["verdict"] = "not-scalable";
      exit_code = kExitNotScalable;
      break;
  }
  if (out.weights) {
    // re-verify before emission; a report never carries an unchecked payload
    const double residual = verify_weights(frame, *out.weights);
    if (residual > tol.parseval_tol)
      throw NumericalError("weights failed re-verification");
    report["weights"] = vector_to_json(out.weights->values);
    report["parseval_residual"] = residual;
    report["margin"] = out.margin;
  }
  if (out.certificate) {
    if (!verify_certificate(frame, *out.certificate, tol))
      throw NumericalError("certificate failed re-verification");
    report["certificate"] = certificate_to_json(*out.certificate);
  }
  if (frame.size() == frame.dim() + 1) {
    const NPlusOneReport np = nplus1_test(frame, tol);
    json npj;
    npj["verdict"] = np.verdict == NPlusOneVerdict::StrictlyScalable
                         ? "strictly-scalable"
                         : "not-strictly-scalable";
    npj["orthogonal_index_set"] = np.orthogonal_index_set;
    if (np.witness_index) npj["witness_index"] = *np.witness_index;
    if (np.constant) npj["constant"] = *np.constant;
    report["nplus1"] = npj;
  }
  if (frame.dim() == 2) {
    report["quadrant_cone_witness"] =
        quadrant_cone_test_2d(frame, tol).has_value();
  }

  const auto t1 = std::chrono::steady_clock::now();
  report["timing_ms"] =
      opts.timing
          ? std::chrono::duration<double, std::milli>(t1 - t0).count()
          : 0.0;
  std::cout << report.dump(2) << "\n";
  return exit_code;
}

int run_extend(const CommonOpts& opts) {
  const Tolerances tol = tolerances_of(opts);
  const Frame frame = load_frame(opts);
  if (!is_frame(frame, tol))
    throw InputError("input does not span R^" + std::to_string(frame.dim()));
  const StrictScalingOutcome out = solve_strict_scaling(frame, tol);
  if (out.verdict != StrictVerdict::StrictlyScalable) {
    std::cerr << "framescale: frame is not strictly scalable; no orthogonal "
                 "extension exists\n";
    return kExitNotScalable;
  }
  const ExtensionResult ext = extend_to_orthogonal_basis(frame, *out.weights, tol);
  const double max_offdiag = verify_extension(frame, ext, tol);
  if (max_offdiag > tol.extension_tol)
    throw NumericalError("extension failed re-verification");

  json report;
  report["schema"] = 1;
  report["command"] = "extend";
  report["companion_dim"] = static_cast<int>(ext.psi.cols());
  report["psi"] = matrix_to_json(ext.psi);
  report["diagonal"] = vector_to_json(ext.diagonal);
  report["weights"] = vector_to_json(out.weights->values);
  report["max_offdiagonal"] = max_offdiag;
  std::cout << report.dump(2) << "\n";
  return kExitScalable;
}

int run_cone(const CommonOpts& opts, int resolution, const std::string& prefix) {
  const Tolerances tol = tolerances_of(opts);
  const Frame frame = load_frame(opts);
  if (!is_frame(frame, tol))
    throw InputError("input does not span R^" + std::to_string(frame.dim()));
  if (frame.dim() > 3) {
    std::cerr << "framescale: cone export supports N in {2,3} only\n";
    return kExitInputError;
  }
  const ScalingOutcome out = solve_scaling(frame, tol);
  if (out.scalable()) {
    std::cerr << "framescale: frame is scalable; no witnessing cone exists\n";
    return kExitNotScalable;
  }
  const Certificate shifted =
      certificate_to_zero_trace(frame, out.certificate(), tol);
  const QuadricCone cone = cone_from_certificate(shifted, tol);

  std::ofstream cone_csv(prefix + "-cone.csv");
  if (!cone_csv) throw InputError("cannot write " + prefix + "-cone.csv");
  for (const VectorXd& p : sample_surface(cone, resolution)) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (i) cone_csv << ',';
      cone_csv << format_double(p(i));
    }
    cone_csv << '\n';
  }

  std::ofstream frame_csv(prefix + "-frame.csv");
  if (!frame_csv) throw InputError("cannot write " + prefix + "-frame.csv");
  for (int j = 0; j < frame.size(); ++j) {
    const VectorXd phi = frame.vector(j);
    const ConeRegion region = classify(cone, phi, tol);
    for (Eigen::Index i = 0; i < phi.size(); ++i)
      frame_csv << format_double(phi(i)) << ',';
    frame_csv << (region == ConeRegion::Interior   ? "Interior"
                  : region == ConeRegion::Surface ? "Surface"
                                                  : "Exterior")
              << '\n';
  }
  std::cerr << "framescale: wrote " << prefix << "-cone.csv and " << prefix
            << "-frame.csv\n";
  return kExitScalable;
}

int run_perturb(const CommonOpts& opts, double epsilon, int trials,
                uint64_t seed) {
  const Tolerances tol = tolerances_of(opts);
  const Frame frame = load_frame(opts);
  if (!is_frame(frame, tol))
    throw InputError("input does not span R^" + std::to_string(frame.dim()));
  PerturbationReport rep;
  try {
    rep = perturbation_experiment(frame, epsilon, trials, seed, tol);
  } catch (const InputError& e) {
    std::cerr << "framescale: " << e.what() << "\n";
    return kExitNotScalable;
  }
  json report;
  report["schema"] = 1;
  report["command"] = "perturb";
  report["base_frame"] = opts.file;
  report["epsilon"] = rep.epsilon;
  report["trials"] = rep.trials;
  report["non_scalable_count"] = rep.non_scalable_count;
  report["non_scalable_fraction"] = rep.non_scalable_fraction;
  report["certificate_safe_radius"] = rep.safe_radius;
  std::cout << report.dump(2) << "\n";
  return kExitScalable;
}

int run_random(int dim, int count, int trials, uint64_t seed,
               const std::string& dist, const CommonOpts& opts) {
  const Tolerances tol = tolerances_of(opts);
  const EnsembleStats stats =
      random_ensemble(dim, count, trials, seed, dist == "gauss", tol);
  json report;
  report["schema"] = 1;
  report["command"] = "random";
  report["dim"] = stats.dim;
  report["count"] = stats.count;
  report["trials"] = stats.trials;
  report["seed"] = seed;
  report["dist"] = dist;
  report["scalable_fraction"] = stats.scalable_fraction;
  report["strict_fraction"] = stats.strict_fraction;
  report["mean_margin"] = stats.mean_margin;
  report["mean_solve_ms"] = opts.timing ? stats.mean_solve_ms : 0.0;
  std::cout << report.dump(2) << "\n";
  return kExitScalable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framescale: scalability analysis of finite frames in R^N"};
  app.require_subcommand(1);

  CommonOpts opts;
  uint64_t seed = 0;
  int trials = 200;
  double epsilon = 0.01;
  int resolution = 16;
  std::string prefix = "cone";
  int dim = 2, count = 4;
  std::string dist = "sphere";

  auto add_common = [&](CLI::App* cmd, bool needs_file) {
    if (needs_file)
      cmd->add_option("file", opts.file, "frame file (CSV or JSON)")->required();
    cmd->add_option("--format", opts.format, "input format: csv|json")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
    cmd->add_option("--tolerance-profile", opts.profile,
                    "tolerance profile: default|strict")
        ->check(CLI::IsMember({"default", "strict"}));
    cmd->add_flag("--timing", opts.timing,
                  "include wall-clock timings (breaks byte-for-byte "
                  "reproducibility)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "decide scalability");
  add_common(analyze, true);
  analyze->add_option("--seed", seed, "random seed");

  CLI::App* extend = app.add_subcommand("extend", "orthogonal-basis extension");
  add_common(extend, true);

  CLI::App* cone = app.add_subcommand("cone", "export the witnessing cone");
  add_common(cone, true);
  cone->add_option("--resolution", resolution, "surface sampling resolution")
      ->check(CLI::PositiveNumber);
  cone->add_option("--out", prefix, "output file prefix");

  CLI::App* perturb = app.add_subcommand("perturb", "openness experiment");
  add_common(perturb, true);
  perturb->add_option("--epsilon", epsilon, "perturbation radius")->required();
  perturb->add_option("--trials", trials, "number of perturbed frames");
  perturb->add_option("--seed", seed, "random seed");

  CLI::App* random_cmd = app.add_subcommand("random", "random-frame statistics");
  add_common(random_cmd, false);
  random_cmd->add_option("--dim", dim, "ambient dimension N")->required();
  random_cmd->add_option("--count", count, "vectors per frame M")->required();
  random_cmd->add_option("--trials", trials, "ensemble size");
  random_cmd->add_option("--seed", seed, "random seed");
  random_cmd->add_option("--dist", dist, "vector distribution")
      ->check(CLI::IsMember({"sphere", "gauss"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return run_analyze(opts);
    if (app.got_subcommand(extend)) return run_extend(opts);
    if (app.got_subcommand(cone)) return run_cone(opts, resolution, prefix);
    if (app.got_subcommand(perturb))
      return run_perturb(opts, epsilon, trials, seed);
    if (app.got_subcommand(random_cmd))
      return run_random(dim, count, trials, seed, dist, opts);
  } catch (const InputError& e) {
    std::cerr << "framescale: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NumericalError& e) {
    std::cerr << "framescale: numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return kExitInputError;
}
