// voxelvol: intrinsic-volume estimation from binary lattice images via
// weighted 2x...x2 configuration counts, with the associated asymptotic
// coefficient computations and sampling experiments.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "voxelvol/io.hpp"
#include "voxelvol/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace voxelvol;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

void write_manifest(const std::string& outdir, const std::string& command,
                    const json& resolved) {
  json manifest{{"tool", "voxelvol"},
                {"version", kVersion},
                {"command", command},
                {"config", resolved}};
  write_text_file((fs::path(outdir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

void ensure_outdir(const std::string& outdir) {
  if (!outdir.empty() && outdir != ".") fs::create_directories(outdir);
}

json load_config(const std::string& config_path) {
  if (config_path.empty()) return json::object();
  return read_json_file(config_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intrinsic volume estimation from binary lattice images"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (default: all cores)");

  // classes
  auto* cmd_classes = app.add_subcommand("classes", "emit the configuration class table");
  int classes_d = 3;
  std::string classes_format = "json", classes_out = ".";
  cmd_classes->add_option("-d,--dim", classes_d, "dimension (2 or 3)")->required();
  cmd_classes->add_option("--format", classes_format, "json or csv");
  cmd_classes->add_option("--out", classes_out, "output directory");

  // coeffs
  auto* cmd_coeffs = app.add_subcommand("coeffs", "emit the asymptotic coefficient table");
  int coeffs_d = 3;
  std::string coeffs_mode = "mu", coeffs_phantom, coeffs_out = ".";
  double coeffs_tol = 1e-8;
  cmd_coeffs->add_option("-d,--dim", coeffs_d, "dimension (2 or 3)")->required();
  cmd_coeffs->add_option("--mode", coeffs_mode, "psi, mu, phi, or lambda");
  cmd_coeffs->add_option("--phantom", coeffs_phantom, "phantom JSON (for phi/lambda)");
  cmd_coeffs->add_option("--tol", coeffs_tol, "quadrature tolerance");
  cmd_coeffs->add_option("--out", coeffs_out, "output directory");

  // voxelize
  auto* cmd_vox = app.add_subcommand("voxelize", "sample a phantom into a BVOX image");
  std::string vox_phantom, vox_out_file = "out.bvox", vox_out = ".";
  double vox_a = 0.0, vox_margin = -1.0;
  std::vector<double> vox_c;
  double vox_angle = 0.0;
  std::vector<double> vox_quat;
  std::uint64_t vox_seed = 0;
  bool vox_random_pose = false;
  cmd_vox->add_option("--phantom", vox_phantom, "phantom JSON file")->required();
  cmd_vox->add_option("-a,--spacing", vox_a, "lattice spacing")->required();
  cmd_vox->add_option("--margin", vox_margin, "window margin (default 2a)");
  cmd_vox->add_option("-c,--translation", vox_c, "lattice translation in [0,1)^d");
  cmd_vox->add_option("--angle", vox_angle, "rotation angle (2D)");
  cmd_vox->add_option("--quat", vox_quat, "rotation quaternion w x y z (3D)");
  cmd_vox->add_flag("--random-pose", vox_random_pose, "draw a random pose");
  cmd_vox->add_option("--seed", vox_seed, "seed for --random-pose");
  cmd_vox->add_option("-o,--output", vox_out_file, "output BVOX path");
  cmd_vox->add_option("--out", vox_out, "output directory for the manifest");

  // count
  auto* cmd_count = app.add_subcommand("count", "configuration histogram of a BVOX image");
  std::string count_in, count_out = ".";
  bool count_oracle = false;
  cmd_count->add_option("input", count_in, "input BVOX file")->required();
  cmd_count->add_flag("--oracle", count_oracle, "use the brute-force reference counter");
  cmd_count->add_option("--out", count_out, "output directory");

  // estimate
  auto* cmd_est = app.add_subcommand("estimate", "evaluate a weighted estimator");
  std::string est_in, est_weights;
  cmd_est->add_option("input", est_in, "input BVOX file")->required();
  cmd_est->add_option("--weights", est_weights, "weight vector JSON file")->required();

  // experiment
  auto* cmd_exp = app.add_subcommand("experiment", "run a sampling design");
  std::string exp_design, exp_out = ".";
  cmd_exp->add_option("design", exp_design, "design JSON file")->required();
  cmd_exp->add_option("--out", exp_out, "output directory");

  // feasibility
  auto* cmd_feas = app.add_subcommand("feasibility", "solve the unbiasedness systems");
  int feas_d = 3;
  std::string feas_out = ".";
  cmd_feas->add_option("-d,--dim", feas_d, "dimension (2 or 3)")->required();
  cmd_feas->add_option("--out", feas_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  set_default_threads(threads);

  try {
    if (*cmd_classes) {
      if (classes_d != 2 && classes_d != 3) {
        std::cerr << "error: dimension must be 2 or 3\n";
        return kExitUsage;
      }
      ClassPartition part = orbit_classes(classes_d);
      ensure_outdir(classes_out);
      if (classes_format == "json") {
        std::string path = (fs::path(classes_out) / "classes.json").string();
        write_text_file(path, classes_to_json(part).dump(2) + "\n");
        std::cout << path << "\n";
      } else if (classes_format == "csv") {
        std::string path = (fs::path(classes_out) / "classes.csv").string();
        write_text_file(path, classes_to_csv(part));
        std::cout << path << "\n";
      } else {
        std::cerr << "error: unknown format " << classes_format << "\n";
        return kExitUsage;
      }
      write_manifest(classes_out, "classes",
                     json{{"d", classes_d}, {"format", classes_format}});
      return 0;
    }

    if (*cmd_coeffs) {
      if (coeffs_d != 2 && coeffs_d != 3) {
        std::cerr << "error: dimension must be 2 or 3\n";
        return kExitUsage;
      }
      bool needs_phantom = coeffs_mode == "phi" || coeffs_mode == "lambda";
      if (needs_phantom && coeffs_phantom.empty()) {
        std::cerr << "error: mode " << coeffs_mode << " requires --phantom\n";
        return kExitUsage;
      }
      if (coeffs_mode != "psi" && coeffs_mode != "mu" && coeffs_mode != "phi" &&
          coeffs_mode != "lambda") {
        std::cerr << "error: unknown mode " << coeffs_mode << "\n";
        return kExitUsage;
      }
      ClassPartition part = orbit_classes(coeffs_d);
      Phantom ph;
      const Phantom* php = nullptr;
      if (needs_phantom) {
        ph = phantom_from_json(read_json_file(coeffs_phantom));
        if (ph.dim != coeffs_d) {
          std::cerr << "error: phantom dimension does not match -d\n";
          return kExitUsage;
        }
        php = &ph;
      }
      CoefficientTable table = compute_coefficient_table(part, php, coeffs_tol);
      ensure_outdir(coeffs_out);
      std::string path = (fs::path(coeffs_out) / "coefficients.csv").string();
      write_text_file(path, coefficients_to_csv(table));
      std::cout << path << "\n";
      json cfg{{"d", coeffs_d}, {"mode", coeffs_mode}, {"tol", coeffs_tol}};
      if (php) cfg["phantom"] = phantom_to_json(*php);
      write_manifest(coeffs_out, "coeffs", cfg);
      return 0;
    }

    if (*cmd_vox) {
      Phantom ph = phantom_from_json(read_json_file(vox_phantom));
      LatticePose pose;
      pose.dim = ph.dim;
      pose.a = vox_a;
      if (vox_random_pose) {
        pose = sample_pose(SamplingMode::Isotropic, ph.dim, vox_a, vox_seed, 0, 0);
      } else {
        for (std::size_t k = 0; k < vox_c.size() && k < 3; ++k) pose.c[k] = vox_c[k];
        if (ph.dim == 2 && vox_angle != 0.0) pose.R = rotation2d(vox_angle);
        if (ph.dim == 3 && vox_quat.size() == 4)
          pose.R = rotation_from_quaternion(vox_quat[0], vox_quat[1], vox_quat[2],
                                            vox_quat[3]);
      }
      double margin = vox_margin < 0.0 ? 2.0 * vox_a : vox_margin;
      BinaryImage img = voxelize(ph, pose, margin);
      ensure_outdir(vox_out);
      write_bvox(vox_out_file, img);
      std::cout << vox_out_file << " dims=[";
      for (int k = 0; k < img.dim; ++k) std::cout << (k ? "," : "") << img.dims[k];
      std::cout << "]\n";
      write_manifest(vox_out, "voxelize",
                     json{{"phantom", phantom_to_json(ph)},
                          {"a", vox_a},
                          {"margin", margin},
                          {"random_pose", vox_random_pose},
                          {"seed", vox_seed},
                          {"output", vox_out_file}});
      return 0;
    }

    if (*cmd_count) {
      BinaryImage img = read_bvox(count_in);
      ConfigHistogram hist =
          count_oracle ? brute_force_count(img) : count_configurations(img);
      ensure_outdir(count_out);
      std::string path = (fs::path(count_out) / "histogram.csv").string();
      write_text_file(path, histogram_to_csv(hist));
      std::cout << path << "\n";
      write_manifest(count_out, "count",
                     json{{"input", count_in}, {"oracle", count_oracle}});
      return 0;
    }

    if (*cmd_est) {
      BinaryImage img = read_bvox(est_in);
      ClassPartition part = orbit_classes(img.dim);
      WeightVector wv = weights_from_json(read_json_file(est_weights), part);
      if (wv.dim != img.dim) {
        std::cerr << "error: weights dimension does not match image\n";
        return kExitUsage;
      }
      ConfigHistogram hist = count_configurations(img);
      std::vector<std::int64_t> counts = count_classes(hist, part);
      std::cout.precision(15);
      std::cout << evaluate(wv, counts, img.pose.a) << "\n";
      return 0;
    }

    if (*cmd_exp) {
      json dj = read_json_file(exp_design);
      int d = dj.at("phantom").value("d", 3);
      ClassPartition part = orbit_classes(d);
      DesignSpec design = design_from_json(dj, part);
      ExperimentResult res = run(design, part);
      ensure_outdir(exp_out);
      write_text_file((fs::path(exp_out) / "results.csv").string(), results_to_csv(res));
      write_text_file((fs::path(exp_out) / "summary.csv").string(), summary_to_csv(res));
      if (res.summary.size() >= 3)
        write_text_file((fs::path(exp_out) / "fit.json").string(),
                        fit_to_json(res.fit).dump(2) + "\n");
      std::cout << "replicates=" << res.records.size();
      if (res.summary.size() >= 3)
        std::cout << " c_minus1=" << res.fit.c_minus1 << " c0=" << res.fit.c0;
      std::cout << "\n";
      write_manifest(exp_out, "experiment", design_to_json(design));
      return 0;
    }

    if (*cmd_feas) {
      if (feas_d != 2 && feas_d != 3) {
        std::cerr << "error: dimension must be 2 or 3\n";
        return kExitUsage;
      }
      LinearSystem sys =
          feas_d == 3 ? build_nonexistence_system_3d() : build_euler_system_2d();
      Feasibility f = check_feasibility(sys);
      std::cout << (f.feasible ? "feasible" : "infeasible")
                << " residual=" << f.residual << " solution=[";
      for (std::size_t i = 0; i < f.solution.size(); ++i)
        std::cout << (i ? "," : "") << f.solution[i];
      std::cout << "]\n";
      ensure_outdir(feas_out);
      write_text_file((fs::path(feas_out) / "feasibility.json").string(),
                      feasibility_to_json(sys, f).dump(2) + "\n");
      write_manifest(feas_out, "feasibility", json{{"d", feas_d}});
      return 0;
    }
  } catch (const QuadratureError& e) {
    std::cerr << "numeric failure: " << e.what() << " (best=" << e.best.value
              << ", err=" << e.best.error << ")\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
