// Command line front end for the random polytope laboratory.
//
// Every subcommand writes a CSV with a versioned schema line plus a JSON
// manifest that records the full configuration, so any run can be repeated
// bit for bit with `randpoly rerun --manifest <file>`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "randpoly/distributions.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/facet_calculus.hpp"
#include "randpoly/montecarlo.hpp"
#include "randpoly/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  std::string model = "gaussian";
  std::string polytope_file;
  std::string model_k = "ball";
  std::string model_l = "ball";
  std::string polytope_k_file;
  std::string polytope_l_file;
  int dim = 2;
  std::string n_spec = "0";
  std::uint64_t reps = 5000;
  std::uint64_t sub_reps = 1000;
  std::uint64_t edelta_reps = 1000000;
  std::uint64_t seed = 0;
  std::string method = "hull";
  double tol = 1e-8;
  int grid_points = 1001;
  std::string output_dir = ".";
};

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

// "a", "a:b" or "a:b:step", all inclusive.
std::vector<std::uint64_t> parse_n_spec(const std::string& text) {
  std::vector<std::uint64_t> parts;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, ':')) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(piece, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --n value: " + text);
    }
    if (used != piece.size()) throw std::invalid_argument("bad --n value: " + text);
    parts.push_back(static_cast<std::uint64_t>(value));
  }
  if (parts.empty() || parts.size() > 3) throw std::invalid_argument("bad --n value: " + text);
  std::uint64_t lo = parts[0];
  std::uint64_t hi = parts.size() > 1 ? parts[1] : parts[0];
  std::uint64_t step = parts.size() > 2 ? parts[2] : 1;
  if (lo == 0 || hi < lo || step == 0) throw std::invalid_argument("bad --n value: " + text);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

randpoly::BodyModel make_model(const std::string& kind, int dim, const std::string& polytope_file) {
  if (kind == "gaussian") return randpoly::BodyModel::gaussian(dim);
  if (kind == "ball") return randpoly::BodyModel::ball(dim);
  if (kind == "polytope") {
    if (polytope_file.empty()) {
      throw std::invalid_argument("model 'polytope' needs a halfspace file");
    }
    randpoly::HPolytope poly = randpoly::HPolytope::load(polytope_file);
    if (poly.dim() != dim) {
      throw std::invalid_argument("--dim does not match the polytope file (" +
                                  std::to_string(poly.dim()) + "-dimensional)");
    }
    return randpoly::BodyModel::polytope(std::move(poly));
  }
  throw std::invalid_argument("unknown model: " + kind);
}

json config_to_json(const RunConfig& cfg) {
  json out;
  out["model"] = cfg.model;
  out["polytope"] = cfg.polytope_file;
  out["model_k"] = cfg.model_k;
  out["model_l"] = cfg.model_l;
  out["polytope_k"] = cfg.polytope_k_file;
  out["polytope_l"] = cfg.polytope_l_file;
  out["dim"] = cfg.dim;
  out["n"] = cfg.n_spec;
  out["reps"] = cfg.reps;
  out["sub_reps"] = cfg.sub_reps;
  out["edelta_reps"] = cfg.edelta_reps;
  out["seed"] = cfg.seed;
  out["method"] = cfg.method;
  out["tol"] = cfg.tol;
  out["grid_points"] = cfg.grid_points;
  return out;
}

RunConfig config_from_json(const std::string& command, const json& in) {
  RunConfig cfg;
  cfg.command = command;
  cfg.model = in.at("model").get<std::string>();
  cfg.polytope_file = in.at("polytope").get<std::string>();
  cfg.model_k = in.at("model_k").get<std::string>();
  cfg.model_l = in.at("model_l").get<std::string>();
  cfg.polytope_k_file = in.at("polytope_k").get<std::string>();
  cfg.polytope_l_file = in.at("polytope_l").get<std::string>();
  cfg.dim = in.at("dim").get<int>();
  cfg.n_spec = in.at("n").get<std::string>();
  cfg.reps = in.at("reps").get<std::uint64_t>();
  cfg.sub_reps = in.at("sub_reps").get<std::uint64_t>();
  cfg.edelta_reps = in.at("edelta_reps").get<std::uint64_t>();
  cfg.seed = in.at("seed").get<std::uint64_t>();
  cfg.method = in.at("method").get<std::string>();
  cfg.tol = in.at("tol").get<double>();
  cfg.grid_points = in.at("grid_points").get<int>();
  return cfg;
}

void write_outputs(const RunConfig& cfg, const std::string& csv_body, const json& results,
                   double wall_seconds) {
  fs::create_directories(cfg.output_dir);
  const fs::path dir(cfg.output_dir);
  const std::string csv_name = cfg.command + ".csv";
  {
    std::ofstream out(dir / csv_name, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + (dir / csv_name).string());
    out << csv_body;
  }
  json manifest;
  manifest["schema"] = "randpoly.manifest.v1";
  manifest["command"] = cfg.command;
  manifest["config"] = config_to_json(cfg);
  manifest["csv"] = csv_name;
  manifest["library_version"] = randpoly::kVersion;
  manifest["threads"] = randpoly::worker_count();
  manifest["results"] = results;
  manifest["wall_time_seconds"] = wall_seconds;
  const fs::path manifest_path = dir / (cfg.command + "_manifest.json");
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + manifest_path.string());
  out << manifest.dump(2) << "\n";
}

void require_dim(const RunConfig& cfg, int lo, int hi) {
  if (cfg.dim < lo || cfg.dim > hi) {
    throw std::invalid_argument("--dim must lie in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] for this command");
  }
}

class WallClock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int cmd_simulate(const RunConfig& cfg) {
  WallClock clock;
  require_dim(cfg, 1, 6);
  const std::vector<std::uint64_t> ns = parse_n_spec(cfg.n_spec);
  if (ns.size() != 1) throw std::invalid_argument("simulate takes a single --n value");
  const std::uint64_t n = ns.front();
  randpoly::BodyModel model = make_model(cfg.model, cfg.dim, cfg.polytope_file);

  std::ostringstream csv;
  csv << "# schema: randpoly.simulate.v1\n";
  csv << "model,dim,method,n,reps,sub_reps,seed,quantity,value,std_error\n";
  json results;
  if (cfg.method == "hull") {
    const randpoly::HullMcSummary summary =
        randpoly::mc_hull_summary(model, n, cfg.reps, cfg.seed);
    auto row = [&](const std::string& quantity, const randpoly::EstimateCI& est) {
      csv << cfg.model << ',' << cfg.dim << ",hull," << n << ',' << cfg.reps << ",,"
          << cfg.seed << ',' << quantity << ',' << fmt_real(est.mean) << ','
          << fmt_real(est.std_error) << '\n';
    };
    for (std::size_t j = 0; j < summary.per_face_dim.size(); ++j) {
      if (summary.per_face_dim[j].has_value()) {
        row("f_" + std::to_string(j), *summary.per_face_dim[j]);
      }
    }
    row("volume", summary.volume);
    results["degenerate_draws"] = summary.degenerate_draws;
  } else if (cfg.method == "facet-prob") {
    const randpoly::FacetProbabilityEstimate est =
        randpoly::facet_probability_estimator(model, n, cfg.reps, cfg.sub_reps, cfg.seed);
    csv << cfg.model << ',' << cfg.dim << ",facet-prob," << n << ',' << cfg.reps << ','
        << cfg.sub_reps << ',' << cfg.seed << ",f_" << (cfg.dim - 1) << ','
        << fmt_real(est.facets.mean) << ',' << fmt_real(est.facets.std_error) << '\n';
    results["degenerate_draws"] = est.degenerate_tuples;
  } else {
    throw std::invalid_argument("simulate --method must be 'hull' or 'facet-prob'");
  }
  write_outputs(cfg, csv.str(), results, clock.seconds());
  return 0;
}

int cmd_integrate(const RunConfig& cfg) {
  WallClock clock;
  require_dim(cfg, 1, 8);
  if (cfg.model == "polytope") {
    throw std::invalid_argument("integrate needs a rotation invariant model");
  }
  const std::vector<std::uint64_t> ns = parse_n_spec(cfg.n_spec);
  randpoly::BodyModel model = make_model(cfg.model, cfg.dim, cfg.polytope_file);
  randpoly::FacetCalculus::Options options;
  options.rel_tol = cfg.tol;
  options.e_delta_reps = cfg.edelta_reps;
  options.e_delta_seed = cfg.seed;
  randpoly::FacetCalculus calculus(std::move(model), options);

  std::ostringstream csv;
  csv << "# schema: randpoly.integrate.v1\n";
  csv << "model,dim,method,tol,edelta_reps,seed,n,integral,expected_facets,"
         "delta_direct,delta_integrand_form\n";
  for (std::uint64_t n : ns) {
    if (n < static_cast<std::uint64_t>(cfg.dim) + 1) {
      throw std::invalid_argument("--n must be at least dim + 1");
    }
    const double integral = calculus.reduced_facet_integral(n);
    const double facets = calculus.expected_facets(n);
    const randpoly::ReducedIntegralDifference delta = calculus.reduced_integral_difference(n);
    csv << cfg.model << ',' << cfg.dim << ",quadrature," << fmt_real(cfg.tol) << ','
        << cfg.edelta_reps << ',' << cfg.seed << ',' << n << ',' << fmt_real(integral) << ','
        << fmt_real(facets) << ',' << fmt_real(delta.direct) << ','
        << fmt_real(delta.integrand_form) << '\n';
  }
  json results;
  results["edelta_relative_std_error"] = calculus.relative_std_error();
  write_outputs(cfg, csv.str(), results, clock.seconds());
  return 0;
}

int cmd_concavity(const RunConfig& cfg) {
  WallClock clock;
  require_dim(cfg, 2, 8);
  if (cfg.model == "polytope") {
    throw std::invalid_argument("concavity needs a rotation invariant model");
  }
  if (cfg.grid_points < 5) throw std::invalid_argument("--grid-points must be at least 5");
  randpoly::BodyModel model = make_model(cfg.model, cfg.dim, cfg.polytope_file);
  randpoly::FacetCalculus::Options options;
  options.rel_tol = cfg.tol;
  options.e_delta_reps = cfg.edelta_reps;
  options.e_delta_seed = cfg.seed;
  randpoly::FacetCalculus calculus(std::move(model), options);

  const randpoly::SectionProfile profile =
      calculus.profile(static_cast<std::size_t>(cfg.grid_points));
  const randpoly::ConcavityCertificate cert = randpoly::concavity_check(profile);

  std::ostringstream csv;
  csv << "# schema: randpoly.concavity.v1\n";
  csv << "model,dim,method,seed,grid_points,s,profile,second_difference\n";
  const std::size_t m = profile.grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    csv << cfg.model << ',' << cfg.dim << ",quadrature," << cfg.seed << ',' << cfg.grid_points
        << ',' << fmt_real(profile.grid[i]) << ',' << fmt_real(profile.values[i]) << ',';
    if (i > 0 && i + 1 < m) {
      const double h = profile.grid[1] - profile.grid[0];
      const double hl = profile.grid[i] - profile.grid[i - 1];
      const double hr = profile.grid[i + 1] - profile.grid[i];
      const double second = ((profile.values[i + 1] - profile.values[i]) / hr -
                             (profile.values[i] - profile.values[i - 1]) / hl) *
                            2.0 / (hl + hr) * h * h;
      csv << fmt_real(second);
    }
    csv << '\n';
  }
  json results;
  results["pass"] = cert.pass;
  results["max_second_difference"] = cert.max_second_difference;
  results["threshold"] = cert.threshold;
  results["argmax_s"] = cert.argmax_s;
  results["edelta_relative_std_error"] = calculus.relative_std_error();
  write_outputs(cfg, csv.str(), results, clock.seconds());
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  WallClock clock;
  const std::optional<randpoly::SweepMethod> parsed = randpoly::parse_sweep_method(cfg.method);
  if (!parsed.has_value()) {
    throw std::invalid_argument("sweep --method must be quadrature, hull or facet-prob");
  }
  const randpoly::SweepMethod method = *parsed;
  if (method == randpoly::SweepMethod::quadrature) {
    require_dim(cfg, 1, 8);
    if (cfg.model == "polytope") {
      throw std::invalid_argument("sweep --method quadrature needs a rotation invariant model");
    }
  } else if (method == randpoly::SweepMethod::hull) {
    require_dim(cfg, 1, 6);
  } else {
    require_dim(cfg, 1, 8);
  }
  const std::vector<std::uint64_t> ns = parse_n_spec(cfg.n_spec);
  if (ns.size() < 2) throw std::invalid_argument("sweep needs at least two --n values");
  randpoly::BodyModel model = make_model(cfg.model, cfg.dim, cfg.polytope_file);

  randpoly::SweepExtras extras;
  extras.sub_reps = cfg.sub_reps;
  extras.e_delta_reps = cfg.edelta_reps;
  extras.tol = cfg.tol;
  const randpoly::MonotonicityReport report =
      randpoly::monotonicity_sweep(model, ns, method, cfg.reps, cfg.seed, extras);

  std::ostringstream csv;
  csv << "# schema: randpoly.sweep.v1\n";
  csv << "model,dim,method,reps,sub_reps,seed,n,value,std_error,diff,diff_std_error\n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    csv << cfg.model << ',' << cfg.dim << ',' << cfg.method << ',';
    if (method != randpoly::SweepMethod::quadrature) {
      csv << cfg.reps;
    }
    csv << ',';
    if (method == randpoly::SweepMethod::facet_probability) {
      csv << cfg.sub_reps;
    }
    csv << ',' << cfg.seed << ',' << ns[i] << ',' << fmt_real(report.values[i]) << ','
        << fmt_real(report.std_errors[i]) << ',';
    if (i > 0) {
      csv << fmt_real(report.differences[i - 1]) << ','
          << fmt_real(report.diff_std_errors[i - 1]);
    } else {
      csv << ',';
    }
    csv << '\n';
  }
  json results;
  results["min_difference"] = report.min_difference;
  results["nondecreasing"] = report.nondecreasing;
  if (report.concavity.has_value()) {
    results["concavity_pass"] = report.concavity->pass;
    results["concavity_max_second_difference"] = report.concavity->max_second_difference;
    results["concavity_threshold"] = report.concavity->threshold;
  }
  write_outputs(cfg, csv.str(), results, clock.seconds());
  return 0;
}

int cmd_compare(const RunConfig& cfg) {
  WallClock clock;
  require_dim(cfg, 1, 6);
  const std::vector<std::uint64_t> ns = parse_n_spec(cfg.n_spec);
  if (ns.size() != 1) throw std::invalid_argument("compare takes a single --n value");
  const std::uint64_t n = ns.front();
  if (cfg.model_k == "gaussian" || cfg.model_l == "gaussian") {
    throw std::invalid_argument("compare needs bounded models on both sides");
  }
  randpoly::BodyModel inner = make_model(cfg.model_k, cfg.dim, cfg.polytope_k_file);
  randpoly::BodyModel outer = make_model(cfg.model_l, cfg.dim, cfg.polytope_l_file);

  const randpoly::InclusionResult result =
      randpoly::inclusion_experiment(inner, outer, n, cfg.reps, cfg.seed);

  std::ostringstream csv;
  csv << "# schema: randpoly.compare.v1\n";
  csv << "model_k,model_l,dim,method,n,reps,seed,quantity,value,std_error\n";
  auto row = [&](const std::string& quantity, double value, double se) {
    csv << cfg.model_k << ',' << cfg.model_l << ',' << cfg.dim << ",hull," << n << ','
        << cfg.reps << ',' << cfg.seed << ',' << quantity << ',' << fmt_real(value) << ','
        << fmt_real(se) << '\n';
  };
  row("volume_inner", result.volume_inner.mean, result.volume_inner.std_error);
  row("volume_outer", result.volume_outer.mean, result.volume_outer.std_error);
  row("difference", result.difference, result.difference_std_error);
  json results;
  results["containment_samples"] = result.containment_samples;
  results["difference"] = result.difference;
  results["difference_std_error"] = result.difference_std_error;
  write_outputs(cfg, csv.str(), results, clock.seconds());
  return 0;
}

int cmd_identity_checks(const RunConfig& cfg) {
  WallClock clock;
  require_dim(cfg, 1, 8);
  const std::vector<std::uint64_t> ns = parse_n_spec(cfg.n_spec);
  std::ostringstream csv;
  csv << "# schema: randpoly.identity-checks.v1\n";
  csv << "dim,method,seed,n,residual,tolerance,pass\n";
  bool all_pass = true;
  double worst = 0.0;
  for (std::uint64_t n : ns) {
    if (n < static_cast<std::uint64_t>(cfg.dim) + 1) {
      throw std::invalid_argument("--n must be at least dim + 1");
    }
    const double residual = randpoly::beta_identity_residual(n, cfg.dim);
    const double tolerance = n > 60 ? 1e-9 : 1e-10;
    const bool pass = std::abs(residual) < tolerance;
    all_pass = all_pass && pass;
    worst = std::max(worst, std::abs(residual));
    csv << cfg.dim << ",quadrature," << cfg.seed << ',' << n << ',' << fmt_real(residual) << ','
        << fmt_real(tolerance) << ',' << (pass ? "true" : "false") << '\n';
  }
  json results;
  results["all_pass"] = all_pass;
  results["worst_residual"] = worst;
  write_outputs(cfg, csv.str(), results, clock.seconds());
  if (!all_pass) {
    std::cerr << "identity-checks: residual above tolerance\n";
    return 3;
  }
  return 0;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "simulate") return cmd_simulate(cfg);
  if (cfg.command == "integrate") return cmd_integrate(cfg);
  if (cfg.command == "concavity") return cmd_concavity(cfg);
  if (cfg.command == "sweep") return cmd_sweep(cfg);
  if (cfg.command == "compare") return cmd_compare(cfg);
  if (cfg.command == "identity-checks") return cmd_identity_checks(cfg);
  throw std::invalid_argument("unknown command in manifest: " + cfg.command);
}

int cmd_rerun(const std::string& manifest_path, const std::string& output_dir) {
  std::ifstream in(manifest_path);
  if (!in) throw std::invalid_argument("cannot read manifest: " + manifest_path);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad manifest: ") + e.what());
  }
  RunConfig cfg;
  try {
    cfg = config_from_json(manifest.at("command").get<std::string>(), manifest.at("config"));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad manifest: ") + e.what());
  }
  cfg.output_dir = output_dir;
  return dispatch(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string manifest_path;
  std::string rerun_output_dir = ".";

  CLI::App app{"random polytope laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(randpoly::kVersion));

  auto add_common = [&](CLI::App* sub, bool seed_required) {
    sub->add_option("--output-dir", cfg.output_dir, "directory for CSV and manifest");
    auto* seed = sub->add_option("--seed", cfg.seed, "base seed for all randomness");
    if (seed_required) seed->required();
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo hull or facet probability run");
  simulate->add_option("--model", cfg.model, "gaussian, ball or polytope")->required();
  simulate->add_option("--polytope", cfg.polytope_file, "halfspace file for model 'polytope'");
  simulate->add_option("--dim", cfg.dim, "ambient dimension")->required();
  simulate->add_option("--n", cfg.n_spec, "points per draw")->required();
  simulate->add_option("--reps", cfg.reps, "replications")->required();
  simulate->add_option("--method", cfg.method, "hull or facet-prob")->default_val("hull");
  simulate->add_option("--sub-reps", cfg.sub_reps, "inner samples per halfspace mass");
  add_common(simulate, true);

  CLI::App* integrate = app.add_subcommand("integrate", "deterministic reduced integral");
  integrate->add_option("--model", cfg.model, "gaussian or ball")->required();
  integrate->add_option("--dim", cfg.dim, "ambient dimension")->required();
  integrate->add_option("--n", cfg.n_spec, "point count or range a:b[:step]")->required();
  integrate->add_option("--tol", cfg.tol, "relative quadrature tolerance");
  integrate->add_option("--edelta-reps", cfg.edelta_reps, "replications for the section constant");
  add_common(integrate, true);

  CLI::App* concavity = app.add_subcommand("concavity", "section profile concavity certificate");
  concavity->add_option("--model", cfg.model, "gaussian or ball")->required();
  concavity->add_option("--dim", cfg.dim, "ambient dimension")->required();
  concavity->add_option("--grid-points", cfg.grid_points, "profile grid size");
  concavity->add_option("--tol", cfg.tol, "relative quadrature tolerance");
  concavity->add_option("--edelta-reps", cfg.edelta_reps, "replications for the section constant");
  add_common(concavity, true);

  CLI::App* sweep = app.add_subcommand("sweep", "expected facet count across a range of n");
  sweep->add_option("--model", cfg.model, "gaussian, ball or polytope")->required();
  sweep->add_option("--polytope", cfg.polytope_file, "halfspace file for model 'polytope'");
  sweep->add_option("--dim", cfg.dim, "ambient dimension")->required();
  sweep->add_option("--n", cfg.n_spec, "range a:b[:step]")->required();
  sweep->add_option("--method", cfg.method, "quadrature, hull or facet-prob")->required();
  sweep->add_option("--reps", cfg.reps, "replications per n (Monte Carlo methods)");
  sweep->add_option("--sub-reps", cfg.sub_reps, "inner samples per halfspace mass");
  sweep->add_option("--edelta-reps", cfg.edelta_reps, "replications for the section constant");
  sweep->add_option("--tol", cfg.tol, "relative quadrature tolerance");
  add_common(sweep, true);

  CLI::App* compare = app.add_subcommand("compare", "expected volume for nested bodies");
  compare->add_option("--model-k", cfg.model_k, "inner body: ball or polytope")->required();
  compare->add_option("--polytope-k", cfg.polytope_k_file, "halfspace file for the inner body");
  compare->add_option("--model-l", cfg.model_l, "outer body: ball or polytope")->required();
  compare->add_option("--polytope-l", cfg.polytope_l_file, "halfspace file for the outer body");
  compare->add_option("--dim", cfg.dim, "ambient dimension")->required();
  compare->add_option("--n", cfg.n_spec, "points per draw")->required();
  compare->add_option("--reps", cfg.reps, "replications")->required();
  add_common(compare, true);

  CLI::App* identity = app.add_subcommand("identity-checks", "exact combinatorial identities");
  identity->add_option("--dim", cfg.dim, "ambient dimension")->required();
  identity->add_option("--n", cfg.n_spec, "range a:b[:step]")->required();
  add_common(identity, false);

  CLI::App* rerun = app.add_subcommand("rerun", "repeat a run from its manifest");
  rerun->add_option("--manifest", manifest_path, "manifest JSON from a previous run")->required();
  rerun->add_option("--output-dir", rerun_output_dir, "directory for CSV and manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) cfg.command = "simulate";
    if (integrate->parsed()) cfg.command = "integrate";
    if (concavity->parsed()) cfg.command = "concavity";
    if (sweep->parsed()) cfg.command = "sweep";
    if (compare->parsed()) cfg.command = "compare";
    if (identity->parsed()) cfg.command = "identity-checks";
    if (rerun->parsed()) return cmd_rerun(manifest_path, rerun_output_dir);
    return dispatch(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const randpoly::ContainmentUnverified& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const randpoly::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
