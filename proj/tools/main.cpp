// Command-line front end: parameter sweeps, figure data reproduction,
// verification runs and variance optimization.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cvmi/closed_forms.hpp"
#include "cvmi/montecarlo.hpp"
#include "cvmi/optimize.hpp"
#include "cvmi/reporting.hpp"

namespace {

using nlohmann::json;

struct CommonOptions {
  std::vector<std::string> schemes;
  double n_min = 0.0;
  double n_max = 10.0;
  int n_points = 21;
  std::vector<double> gains = {1.0};
  std::string base = "bits";
  std::string out;
  std::uint64_t seed = 12345;
  std::int64_t samples = 200000;
  int threads = 0;
  std::string config_path;
  double tolerance = 1e-9;
};

cvmi::LogBase parse_base(const std::string& base) {
  if (base == "bits") return cvmi::LogBase::Bits;
  if (base == "nats") return cvmi::LogBase::Nats;
  throw CLI::ValidationError("--base must be 'bits' or 'nats'");
}

std::vector<std::string> expand_schemes(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  for (const std::string& id : requested) {
    if (id == "all")
      for (const std::string& s : cvmi::scheme_ids()) out.push_back(s);
    else
      out.push_back(id);
  }
  return out;
}

// Registers the shared flags on a subcommand; a JSON config file mirrors all
// flags (keys without the leading dashes) and flags given on the command
// line take precedence.
void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--schemes", opts.schemes, "Scheme ids (or 'all')")->delimiter(',');
  cmd->add_option("--n-min", opts.n_min, "Smallest photon budget");
  cmd->add_option("--n-max", opts.n_max, "Largest photon budget");
  cmd->add_option("--n-points", opts.n_points, "Number of budget grid points");
  cmd->add_option("--gains", opts.gains, "Amplifier gains")->delimiter(',');
  cmd->add_option("--base", opts.base, "Logarithm base: bits or nats");
  cmd->add_option("--out", opts.out, "Output file (default: stdout)");
  cmd->add_option("--seed", opts.seed, "Monte Carlo seed");
  cmd->add_option("--samples", opts.samples, "Monte Carlo sample count");
  cmd->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--tolerance", opts.tolerance, "Verification tolerance in bits");
  cmd->add_option("--config", opts.config_path, "JSON config file mirroring the flags");
}

void apply_config(CLI::App* cmd, CommonOptions& opts) {
  if (opts.config_path.empty()) return;
  std::ifstream in(opts.config_path);
  if (!in) throw CLI::ValidationError("cannot open config file: " + opts.config_path);
  json config = json::parse(in);
  auto take = [&](const char* flag, const char* key, auto& value) {
    if (cmd->count(flag) == 0 && config.contains(key)) config.at(key).get_to(value);
  };
  take("--schemes", "schemes", opts.schemes);
  take("--n-min", "n-min", opts.n_min);
  take("--n-max", "n-max", opts.n_max);
  take("--n-points", "n-points", opts.n_points);
  take("--gains", "gains", opts.gains);
  take("--base", "base", opts.base);
  take("--out", "out", opts.out);
  take("--seed", "seed", opts.seed);
  take("--samples", "samples", opts.samples);
  take("--threads", "threads", opts.threads);
  take("--tolerance", "tolerance", opts.tolerance);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError("cannot open output file: " + path);
  out << content;
}

int run_sweep(CLI::App* cmd, CommonOptions& opts) {
  apply_config(cmd, opts);
  cvmi::SweepRequest request;
  request.schemes =
      opts.schemes.empty() ? cvmi::scheme_ids() : expand_schemes(opts.schemes);
  request.n_min = opts.n_min;
  request.n_max = opts.n_max;
  request.n_points = opts.n_points;
  request.gains = opts.gains;
  request.base = parse_base(opts.base);
  request.threads = opts.threads;
  write_output(opts.out, cvmi::run_sweep_csv(request));
  return 0;
}

int run_figure(CLI::App* cmd, CommonOptions& opts, const std::string& name) {
  apply_config(cmd, opts);
  write_output(opts.out, cvmi::figure_csv(name));
  return 0;
}

int run_verify(CLI::App* cmd, CommonOptions& opts) {
  apply_config(cmd, opts);
  cvmi::VerifyOptions options;
  options.tolerance = opts.tolerance;
  options.mc_samples = opts.samples;
  options.seed = opts.seed;
  options.threads = opts.threads;
  const std::vector<cvmi::CheckResult> results = cvmi::run_verification(options);
  bool all_pass = true;
  for (const cvmi::CheckResult& result : results) {
    std::printf("%-38s %s  %s\n", result.name.c_str(), result.pass ? "PASS" : "FAIL",
                result.detail.c_str());
    all_pass &= result.pass;
  }
  return all_pass ? 0 : 2;
}

int run_optimize(CLI::App* cmd, CommonOptions& opts) {
  apply_config(cmd, opts);
  std::vector<std::string> schemes = expand_schemes(opts.schemes);
  if (schemes.empty())
    for (const std::string& id : cvmi::scheme_ids())
      if (cvmi::has_free_variance(id)) schemes.push_back(id);

  std::ostringstream csv;
  csv << "scheme,n,g,v_opt,mi_bits,iterations\n";
  for (const std::string& id : schemes) {
    if (!cvmi::has_free_variance(id))
      throw CLI::ValidationError("scheme has no free variance: " + id);
    for (int i = 0; i < opts.n_points; ++i) {
      const double n = opts.n_points == 1
                           ? opts.n_min
                           : opts.n_min + (opts.n_max - opts.n_min) * i / (opts.n_points - 1);
      if (n <= 0.0) continue;
      for (double g : opts.gains) {
        const cvmi::OptimizationResult result = cvmi::maximize_variance(id, n, g);
        csv << id << ',' << cvmi::format_sig(n) << ',' << cvmi::format_sig(g) << ','
            << cvmi::format_sig(result.argmax) << ',' << cvmi::format_sig(result.max_mi_bits)
            << ',' << result.iterations << '\n';
      }
    }
  }
  write_output(opts.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutual information laboratory for Gaussian bosonic channels"};
  app.require_subcommand(1);

  CommonOptions sweep_opts, figure_opts, verify_opts, optimize_opts;
  std::string figure_name;

  CLI::App* sweep = app.add_subcommand("sweep", "Engine vs closed-form MI sweep to CSV");
  add_common_flags(sweep, sweep_opts);

  CLI::App* figure = app.add_subcommand("figure", "Reproduce a figure's data as CSV");
  figure->add_option("name", figure_name, "fig2, fig3 or figA1")->required();
  add_common_flags(figure, figure_opts);

  CLI::App* verify = app.add_subcommand("verify", "Run the full verification suite");
  add_common_flags(verify, verify_opts);

  CLI::App* optimize = app.add_subcommand("optimize", "Optimize free variances to CSV");
  add_common_flags(optimize, optimize_opts);

  try {
    app.parse(argc, argv);
    if (sweep->parsed()) return run_sweep(sweep, sweep_opts);
    if (figure->parsed()) return run_figure(figure, figure_opts, figure_name);
    if (verify->parsed()) return run_verify(verify, verify_opts);
    if (optimize->parsed()) return run_optimize(optimize, optimize_opts);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
