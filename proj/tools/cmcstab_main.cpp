/// Command-line front end. Four subcommands cover the library surface:
///
///   profile   generating curve of one sphere as CSV
///   spectrum  Jacobi spectrum of one sphere (or the slice) as JSON
///   sweep     stability verdicts over an H grid as CSV plus JSON summary
///   bounds    genus bounds and classification statements as JSON
///
/// Every file output is accompanied by a <out>.manifest.json recording the
/// command line, parameters, tolerances, code version, and wall time;
/// re-running the same command line reproduces the primary outputs byte for
/// byte. Exit codes: 0 success, 2 domain or existence error, 3 failed
/// numerical certification.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmcstab/closed_form.hpp"
#include "cmcstab/errors.hpp"
#include "cmcstab/profile.hpp"
#include "cmcstab/spectrum.hpp"
#include "cmcstab/stability.hpp"
#include "cmcstab/topology.hpp"
#include "cmcstab/version.hpp"

namespace {

using nlohmann::json;

std::string quote_if_needed(const std::string& arg) {
  if (arg.find_first_of(" \t\"") == std::string::npos) return arg;
  std::string quoted = "\"";
  for (char c : arg) {
    if (c == '"') quoted += '\\';
    quoted += c;
  }
  return quoted + "\"";
}

std::string join_command_line(int argc, char** argv) {
  std::string line;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) line += ' ';
    line += quote_if_needed(argv[i]);
  }
  return line;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

/// Emits <out>.manifest.json next to a primary output.
void write_manifest(const std::string& out_path, const std::string& command_line,
                    const std::string& subcommand, const json& parameters,
                    const json& tolerances, double wall_seconds) {
  const json manifest = {{"command_line", command_line},
                         {"subcommand", subcommand},
                         {"parameters", parameters},
                         {"tolerances", tolerances},
                         {"version", cmcstab::kVersion},
                         {"wall_clock_seconds", wall_seconds}};
  write_text_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct ProfileArgs {
  std::string space = "s2xr";
  double H = 0.0;
  Eigen::Index samples = 2000;
  std::string out;
  bool plot_data = false;
};

struct SpectrumArgs {
  std::string space = "s2xr";
  double H = 0.0;
  bool slice = false;
  Eigen::Index samples = 2000;
  int m_max = 8;
  Eigen::Index k_per_mode = 6;
  double zero_tol = 0.0;
  std::string out;
};

struct SweepArgs {
  std::string space = "s2xr";
  double h_min = 0.0;
  double h_max = 0.0;
  int steps = 1;
  Eigen::Index samples = 2000;
  int m_max = 8;
  Eigen::Index k_per_mode = 4;
  double zero_tol = 0.0;
  double verdict_tol = 0.0;
  int jobs = 0;
  std::string out;
  bool plot_data = false;
};

struct BoundsArgs {
  bool h2xr = false;
  bool conformally_flat = false;
  bool s2xr = false;
  bool ricci_nonneg = false;
  bool scalar_nonneg = false;
  bool embedded = false;
  double H = 0.0;
  std::string out;
};

int run_profile(const ProfileArgs& args, const std::string& command_line) {
  const auto start = std::chrono::steady_clock::now();
  const cmcstab::SpaceForm space = cmcstab::parse_space_form(args.space);
  const cmcstab::ProfileCurve curve = cmcstab::generate_profile(space, args.H, args.samples);

  std::ostringstream csv;
  cmcstab::write_profile_csv(curve, csv);

  if (args.out.empty()) {
    std::cout << csv.str();
    return 0;
  }
  write_text_file(args.out, csv.str());
  if (args.plot_data) {
    std::string xy;
    for (Eigen::Index i = 0; i < curve.n(); ++i) {
      xy += format_g17(curve.r[i]) + " " + format_g17(curve.t[i]) + "\n";
    }
    write_text_file(args.out + ".curve.xy", xy);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(args.out, command_line, "profile",
                 {{"space", args.space},
                  {"H", args.H},
                  {"samples", args.samples},
                  {"plot_data", args.plot_data}},
                 json::object(), wall);
  return 0;
}

int run_spectrum(const SpectrumArgs& args, const std::string& command_line) {
  const auto start = std::chrono::steady_clock::now();
  const cmcstab::ProfileCurve curve =
      args.slice ? cmcstab::horizontal_slice(args.samples)
                 : cmcstab::generate_profile(cmcstab::parse_space_form(args.space), args.H,
                                             args.samples);
  const cmcstab::SpectrumResult spectrum =
      cmcstab::assemble_spectrum(curve, args.m_max, args.k_per_mode, args.zero_tol);

  const json j = spectrum;
  if (args.out.empty()) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  write_text_file(args.out, j.dump(2) + "\n");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(args.out, command_line, "spectrum",
                 {{"space", args.space},
                  {"H", args.H},
                  {"slice", args.slice},
                  {"samples", args.samples},
                  {"m_max", args.m_max},
                  {"k_per_mode", args.k_per_mode}},
                 {{"zero_tol", args.zero_tol}}, wall);
  return 0;
}

int run_sweep(const SweepArgs& args, const std::string& command_line) {
  const auto start = std::chrono::steady_clock::now();
  const cmcstab::SpaceForm space = cmcstab::parse_space_form(args.space);
  if (args.h_max < args.h_min) throw std::invalid_argument("sweep: --h-max below --h-min");
  if (args.steps < 1) throw std::invalid_argument("sweep: --steps must be at least 1");

  std::vector<double> grid;
  if (args.h_min == args.h_max || args.steps == 1) {
    grid.push_back(args.h_min);
  } else {
    for (int i = 0; i < args.steps; ++i) {
      grid.push_back(args.h_min +
                     (args.h_max - args.h_min) * static_cast<double>(i) /
                         static_cast<double>(args.steps - 1));
    }
  }

  cmcstab::KoisoOptions options;
  options.n_samples = args.samples;
  options.m_max = args.m_max;
  options.k_per_mode = args.k_per_mode;
  options.zero_tol = args.zero_tol;
  options.verdict_tol = args.verdict_tol;

  const std::vector<cmcstab::StabilityVerdict> verdicts =
      cmcstab::stability_sweep(space, grid, options, args.jobs);

  std::ostringstream csv;
  cmcstab::write_stability_csv(csv, verdicts);
  write_text_file(args.out, csv.str());

  // Transition bracket: the highest Unstable and lowest Stable mean
  // curvature, when both kinds occur.
  double last_unstable = -std::numeric_limits<double>::infinity();
  double first_stable = std::numeric_limits<double>::infinity();
  for (const auto& v : verdicts) {
    if (v.verdict == cmcstab::Verdict::Unstable) last_unstable = std::max(last_unstable, v.H);
    if (v.verdict == cmcstab::Verdict::Stable) first_stable = std::min(first_stable, v.H);
  }
  json summary = {{"space", args.space},
                  {"H_min", args.h_min},
                  {"H_max", args.h_max},
                  {"steps", static_cast<int>(grid.size())},
                  {"verdicts", verdicts}};
  if (std::isfinite(last_unstable) && std::isfinite(first_stable)) {
    summary["transition_bracket"] = {last_unstable, first_stable};
  } else {
    summary["transition_bracket"] = nullptr;
  }
  if (space == cmcstab::SpaceForm::S2xR) {
    summary["critical_H"] = cmcstab::find_H0();
  }
  write_text_file(args.out + ".summary.json", summary.dump(2) + "\n");

  if (args.plot_data) {
    std::string xy;
    for (const auto& v : verdicts) {
      xy += format_g17(v.H) + " " + format_g17(v.u_integral) + "\n";
    }
    write_text_file(args.out + ".u_integral.xy", xy);
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(args.out, command_line, "sweep",
                 {{"space", args.space},
                  {"H_min", args.h_min},
                  {"H_max", args.h_max},
                  {"steps", args.steps},
                  {"grid", grid},
                  {"samples", args.samples},
                  {"m_max", args.m_max},
                  {"k_per_mode", args.k_per_mode},
                  {"jobs", args.jobs},
                  {"plot_data", args.plot_data}},
                 {{"zero_tol", args.zero_tol}, {"verdict_tol", args.verdict_tol}}, wall);
  return 0;
}

int run_bounds(const BoundsArgs& args, const std::string& command_line) {
  const auto start = std::chrono::steady_clock::now();
  const int scenarios = (args.h2xr ? 1 : 0) + (args.conformally_flat ? 1 : 0) + (args.s2xr ? 1 : 0);
  if (scenarios != 1) {
    throw std::invalid_argument(
        "bounds: exactly one of --h2xr, --conformally-flat, --s2xr is required");
  }

  json j;
  json parameters;
  if (args.h2xr) {
    j = cmcstab::genus_bound_h2r(args.H);
    parameters = {{"scenario", "h2xr"}, {"H", args.H}};
  } else if (args.conformally_flat) {
    if (args.ricci_nonneg == args.scalar_nonneg) {
      throw std::invalid_argument(
          "bounds: --conformally-flat needs exactly one of --ricci-nonneg, --scalar-nonneg");
    }
    const auto assumption = args.ricci_nonneg ? cmcstab::CurvatureAssumption::RicciNonneg
                                              : cmcstab::CurvatureAssumption::ScalarNonneg;
    j = cmcstab::genus_bound_conformally_flat(assumption, args.embedded);
    parameters = {{"scenario", "conformally-flat"},
                  {"ricci_nonneg", args.ricci_nonneg},
                  {"scalar_nonneg", args.scalar_nonneg},
                  {"embedded", args.embedded}};
  } else {
    j = cmcstab::classify_s2r_compact_stable();
    parameters = {{"scenario", "s2xr"}};
  }

  if (args.out.empty()) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  write_text_file(args.out, j.dump(2) + "\n");
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(args.out, command_line, "bounds", parameters, json::object(), wall);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string command_line = join_command_line(argc, argv);

  CLI::App app{"Rotational CMC spheres in S2xR and H2xR: construction, Jacobi spectra, "
               "volume-constrained stability, and genus bounds"};
  app.require_subcommand(1);

  ProfileArgs profile_args;
  CLI::App* profile = app.add_subcommand("profile", "Generate one profile curve as CSV");
  profile->add_option("--space", profile_args.space, "Ambient space: s2xr or h2xr")
      ->check(CLI::IsMember({"s2xr", "h2xr"}));
  profile->add_option("--H", profile_args.H, "Mean curvature")->required();
  profile->add_option("--samples", profile_args.samples, "Number of profile samples");
  profile->add_option("--out", profile_args.out, "Output CSV path (default: stdout)");
  profile->add_flag("--plot-data", profile_args.plot_data,
                    "Also write the generating curve as an x,y series (requires --out)");

  SpectrumArgs spectrum_args;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Jacobi spectrum of one surface as JSON");
  spectrum->add_option("--space", spectrum_args.space, "Ambient space: s2xr or h2xr")
      ->check(CLI::IsMember({"s2xr", "h2xr"}));
  spectrum->add_option("--H", spectrum_args.H, "Mean curvature");
  spectrum->add_flag("--slice", spectrum_args.slice,
                     "Use the horizontal slice instead of a sphere (ignores --space/--H)");
  spectrum->add_option("--samples", spectrum_args.samples, "Number of profile samples");
  spectrum->add_option("--m-max", spectrum_args.m_max, "Highest Fourier mode");
  spectrum->add_option("--k-per-mode", spectrum_args.k_per_mode, "Eigenvalues per mode");
  spectrum->add_option("--zero-tol", spectrum_args.zero_tol,
                       "Zero-classification threshold (0: per-eigenvalue default)");
  spectrum->add_option("--out", spectrum_args.out, "Output JSON path (default: stdout)");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Stability verdicts over an H grid");
  sweep->add_option("--space", sweep_args.space, "Ambient space: s2xr or h2xr")
      ->check(CLI::IsMember({"s2xr", "h2xr"}));
  sweep->add_option("--h-min", sweep_args.h_min, "Lowest mean curvature")->required();
  sweep->add_option("--h-max", sweep_args.h_max, "Highest mean curvature")->required();
  sweep->add_option("--steps", sweep_args.steps, "Number of grid points");
  sweep->add_option("--samples", sweep_args.samples, "Profile samples per point");
  sweep->add_option("--m-max", sweep_args.m_max, "Highest Fourier mode");
  sweep->add_option("--k-per-mode", sweep_args.k_per_mode, "Eigenvalues per mode");
  sweep->add_option("--zero-tol", sweep_args.zero_tol,
                    "Zero-classification threshold (0: per-eigenvalue default)");
  sweep->add_option("--verdict-tol", sweep_args.verdict_tol,
                    "Verdict dead band (0: 100x the estimated error)");
  sweep->add_option("--jobs", sweep_args.jobs, "Worker threads (0: hardware concurrency)");
  sweep->add_option("--out", sweep_args.out, "Output CSV path")->required();
  sweep->add_flag("--plot-data", sweep_args.plot_data,
                  "Also write H,u_integral as an x,y series");

  BoundsArgs bounds_args;
  CLI::App* bounds = app.add_subcommand("bounds", "Genus bounds and classification as JSON");
  bounds->add_flag("--h2xr", bounds_args.h2xr, "Genus bound for stable CMC surfaces in H2xR");
  bounds->add_flag("--conformally-flat", bounds_args.conformally_flat,
                   "Genus bound in a conformally flat ambient space");
  bounds->add_flag("--s2xr", bounds_args.s2xr,
                   "Classification of compact stable CMC surfaces in S2xR");
  bounds->add_flag("--ricci-nonneg", bounds_args.ricci_nonneg, "Assume nonnegative Ricci curvature");
  bounds->add_flag("--scalar-nonneg", bounds_args.scalar_nonneg,
                   "Assume nonnegative scalar curvature");
  bounds->add_flag("--embedded", bounds_args.embedded, "Assume the surface is embedded");
  bounds->add_option("--H", bounds_args.H, "Mean curvature (with --h2xr)");
  bounds->add_option("--out", bounds_args.out, "Output JSON path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(profile)) return run_profile(profile_args, command_line);
    if (app.got_subcommand(spectrum)) return run_spectrum(spectrum_args, command_line);
    if (app.got_subcommand(sweep)) return run_sweep(sweep_args, command_line);
    if (app.got_subcommand(bounds)) return run_bounds(bounds_args, command_line);
  } catch (const cmcstab::NoSuchSphereError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cmcstab::CertificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const cmcstab::HypothesisViolationError& e) {
    std::cerr << "error: " << e.what() << " (lambda1 = " << e.lambda1
              << ", lambda2 = " << e.lambda2 << ")\n";
    return 3;
  } catch (const cmcstab::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
