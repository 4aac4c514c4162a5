#include "alipm/bounds.hpp"
#include "alipm/complexity.hpp"
#include "alipm/config.hpp"
#include "alipm/core.hpp"
#include "alipm/hypotheses.hpp"
#include "alipm/io.hpp"
#include "alipm/ipm.hpp"
#include "alipm/query.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace alipm;

std::string iso_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  bool no_timestamp = false;
};

std::uint64_t resolve_seed(const CommonFlags& flags, std::uint64_t config_seed) {
  return flags.seed ? *flags.seed : config_seed;
}

void print_json(nlohmann::json j, const CommonFlags& flags) {
  if (!flags.no_timestamp) j["timestamp"] = iso_utc_now();
  std::cout << j.dump(2) << "\n";
}

std::string csv_comment(std::uint64_t seed, const CommonFlags& flags) {
  std::string c = "seed=" + std::to_string(seed);
  if (!flags.no_timestamp) c += " generated=" + iso_utc_now();
  return c;
}

ExperimentConfig load_config(const std::string& path, const CommonFlags& flags,
                             std::uint64_t& resolved) {
  ExperimentConfig cfg = load_config_json(path);
  resolved = resolve_seed(flags, cfg.seed);
  cfg.seed = resolved;
  return cfg;
}

int run_ipm(const std::string& a_path, const std::string& b_path,
            const std::string& generator, const std::string& method, int bins,
            const CommonFlags& flags) {
  const std::uint64_t seed = resolve_seed(flags, 0);
  std::cout << "seed=" << seed << "\n";
  const Matrix a = load_samples_csv(a_path);
  const Matrix b = load_samples_csv(b_path);
  IpmEstimate est;
  if (parse_generator(generator) == Generator::Kantorovich) {
    if (method == "closed1d") {
      if (a.cols() != 1 || b.cols() != 1)
        throw std::invalid_argument("closed1d needs 1-D samples");
      std::vector<double> av(a.data(), a.data() + a.rows());
      std::vector<double> bv(b.data(), b.data() + b.rows());
      est = kantorovich_1d(av, bv);
    } else if (method == "exact") {
      est = kantorovich_exact(a, b);
    } else {
      throw std::invalid_argument("--method must be exact or closed1d");
    }
  } else {
    est = tv_histogram(a, b, GridSpec::uniform(static_cast<int>(a.cols()), bins));
  }
  print_json(ipm_to_json(est), flags);
  return 0;
}

int run_certify(const std::string& model_path, std::optional<double> mx,
                std::optional<double> my, const CommonFlags& flags) {
  const std::uint64_t seed = resolve_seed(flags, 0);
  std::cout << "seed=" << seed << "\n";
  std::ifstream in(model_path);
  if (!in) throw std::runtime_error("cannot open " + model_path);
  nlohmann::json j;
  in >> j;
  if (mx) j["mx"] = *mx;
  if (my) j["my"] = *my;
  const Hypothesis h = hypothesis_from_json(j);
  const Certificate cert = certify(h);
  print_json(certificate_to_json(cert), flags);
  return cert.passes ? 0 : 1;
}

int run_rademacher(const std::string& config_path, const CommonFlags& flags) {
  std::uint64_t seed = 0;
  const ExperimentConfig cfg = load_config(config_path, flags, seed);
  std::cout << "seed=" << seed << "\n";
  const SyntheticTask task = make_builtin_task(cfg.task);
  const Pool data = sample_iid(task, cfg.query_size, derive_seed(seed, 1));
  RadOptions opt;
  opt.num_sigma = cfg.mc.num_sigma;
  opt.inner = cfg.mc.inner;
  opt.restarts = cfg.mc.restarts;
  opt.ascent_iters = cfg.mc.ascent_iters;
  opt.probes = cfg.mc.probes;
  opt.seed = derive_seed(seed, 2);
  opt.arch = cfg.train;
  print_json(rad_to_json(rademacher(cfg.setting, data, opt)), flags);
  return 0;
}

int run_bound(const std::string& config_path, const CommonFlags& flags) {
  std::uint64_t seed = 0;
  const ExperimentConfig cfg = load_config(config_path, flags, seed);
  std::cout << "seed=" << seed << "\n";
  print_json(bound_report_to_json(bound_experiment(cfg)), flags);
  return 0;
}

int run_al(const std::string& config_path, const std::string& out_path,
           const CommonFlags& flags) {
  std::uint64_t seed = 0;
  const ExperimentConfig cfg = load_config(config_path, flags, seed);
  std::cout << "seed=" << seed << "\n";
  const auto records = al_loop(cfg);
  save_curve_csv(records, out_path, csv_comment(seed, flags));
  std::cout << "rounds=" << records.size() << " out=" << out_path << "\n";
  return 0;
}

int run_coverage(const std::string& config_path, std::size_t reps,
                 const std::string& out_path, const CommonFlags& flags) {
  std::uint64_t seed = 0;
  const ExperimentConfig cfg = load_config(config_path, flags, seed);
  std::cout << "seed=" << seed << "\n";
  const CoverageResult result = coverage_experiment(cfg, reps);
  if (!out_path.empty())
    save_coverage_csv(result, out_path, csv_comment(seed, flags));
  std::cout << "coverage=" << format_double(result.coverage)
            << " delta=" << format_double(cfg.delta) << "\n";
  return 0;
}

int run_tasks(const CommonFlags& flags) {
  const std::uint64_t seed = resolve_seed(flags, 0);
  std::cout << "seed=" << seed << "\n";
  for (const auto& name : builtin_task_names()) {
    const SyntheticTask task = make_builtin_task(name);
    std::cout << name << " dim=" << task.dim()
              << " mx=" << format_double(task.domain_bound())
              << " my=" << format_double(task.label_bound()) << " "
              << task.description() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IPM-based active-learning bound toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global --seed / --no-timestamp after the subcommand

  CommonFlags flags;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Override the run seed");
  app.add_flag("--no-timestamp", flags.no_timestamp,
               "Suppress timestamps for byte-identical reruns");

  std::string a_path, b_path, generator = "k", method = "exact";
  int bins = 16;
  auto* ipm_cmd = app.add_subcommand("ipm", "IPM between two sample CSVs");
  ipm_cmd->add_option("a", a_path, "First sample CSV")->required();
  ipm_cmd->add_option("b", b_path, "Second sample CSV")->required();
  ipm_cmd->add_option("--generator", generator, "k|tv")->required();
  ipm_cmd->add_option("--method", method, "exact|closed1d (Kantorovich only)");
  ipm_cmd->add_option("--bins", bins, "Histogram bins per axis (TV only)");

  std::string model_path;
  std::optional<double> mx_flag, my_flag;
  double mx_value = 0.0, my_value = 0.0;
  auto* certify_cmd =
      app.add_subcommand("certify", "Generator-membership certificate");
  certify_cmd->add_option("model", model_path, "Hypothesis JSON")->required();
  auto* mx_opt = certify_cmd->add_option("--mx", mx_value, "Domain bound M_X");
  auto* my_opt = certify_cmd->add_option("--my", my_value, "Label bound M_Y");

  std::string rad_config;
  auto* rad_cmd =
      app.add_subcommand("rademacher", "Rademacher complexity estimate");
  rad_cmd->add_option("config", rad_config, "Experiment config JSON")->required();

  std::string bound_config;
  auto* bound_cmd = app.add_subcommand("bound", "Assemble one bound report");
  bound_cmd->add_option("config", bound_config, "Experiment config JSON")
      ->required();

  std::string al_config, al_out;
  auto* al_cmd = app.add_subcommand("al-run", "Active-learning loop");
  al_cmd->add_option("config", al_config, "Experiment config JSON")->required();
  al_cmd->add_option("-o,--out", al_out, "Curve CSV path")->required();

  std::string cov_config, cov_out;
  std::size_t cov_reps = 50;
  auto* cov_cmd = app.add_subcommand("coverage", "Bound coverage experiment");
  cov_cmd->add_option("config", cov_config, "Experiment config JSON")->required();
  cov_cmd->add_option("--reps", cov_reps, "Number of repetitions");
  cov_cmd->add_option("-o,--out", cov_out, "Coverage CSV path");

  auto* tasks_cmd = app.add_subcommand("tasks", "List builtin tasks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*seed_opt) flags.seed = seed_value;
  if (*mx_opt) mx_flag = mx_value;
  if (*my_opt) my_flag = my_value;

  try {
    if (*ipm_cmd) return run_ipm(a_path, b_path, generator, method, bins, flags);
    if (*certify_cmd) return run_certify(model_path, mx_flag, my_flag, flags);
    if (*rad_cmd) return run_rademacher(rad_config, flags);
    if (*bound_cmd) return run_bound(bound_config, flags);
    if (*al_cmd) return run_al(al_config, al_out, flags);
    if (*cov_cmd) return run_coverage(cov_config, cov_reps, cov_out, flags);
    if (*tasks_cmd) return run_tasks(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
