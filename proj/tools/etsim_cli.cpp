// Command line front end: run, batch, value, metrics.
#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "etsim/engine.hpp"
#include "etsim/io.hpp"
#include "etsim/lifecycle.hpp"
#include "etsim/presets.hpp"
#include "etsim/valuation.hpp"

namespace fs = std::filesystem;
using namespace etsim;

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct RunOptions {
  std::vector<std::string> presets;
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> timesteps;
  std::optional<std::string> out;
  std::vector<std::string> overrides;
  bool serial{false};
};

void add_run_options(CLI::App* cmd, RunOptions& o, bool many_presets) {
  if (many_presets) {
    cmd->add_option("--preset", o.presets, "preset name (repeatable; default: all six)");
  } else {
    cmd->add_option("--preset", o.presets, "preset name")->expected(1);
  }
  cmd->add_option("--config", o.config, "JSON config file (a summary.json works too)");
  cmd->add_option("--seed", o.seed, "base seed; run i uses seed + i");
  cmd->add_option("--runs", o.runs, "number of runs");
  cmd->add_option("--timesteps", o.timesteps, "slots per run");
  cmd->add_option("--out", o.out, "output directory (default: out/<UTC timestamp>)");
  cmd->add_option("--override", o.overrides, "key=value, applied last (repeatable)");
  cmd->add_flag("--serial", o.serial, "run sequentially");
}

std::string default_out_dir() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%d_%H-%M", &tm);
  return std::string("out/") + buf;
}

SimulationConfig resolve(const RunOptions& o, const std::optional<std::string>& preset_name) {
  std::vector<std::string> ov = o.overrides;
  // explicit flags win over everything else
  if (o.seed) ov.push_back("seed=" + std::to_string(*o.seed));
  if (o.runs) ov.push_back("runs=" + std::to_string(*o.runs));
  if (o.timesteps) ov.push_back("timesteps=" + std::to_string(*o.timesteps));
  std::optional<fs::path> cfg;
  if (o.config) cfg = fs::path(*o.config);
  return load_config(preset_name, cfg, ov);
}

void print_aggregate(const std::string& label, const Aggregate& agg) {
  std::cout << label << '\n';
  for (const auto& [name, s] : agg) {
    std::cout << fmt::format("  {:<22} mean {:>16.9f}  std {:>16.9f}  (n={})\n", name, s.mean,
                             s.std, s.count);
  }
}

void export_batch(const BatchResult& batch, const fs::path& dir) {
  for (const auto& r : batch.runs) {
    export_run(r, dir / fmt::format("run_{:02}", r.run_index));
  }
  export_batch_summary(batch, dir / "summary.json");
}

int cmd_run(const RunOptions& o) {
  if (o.presets.empty() && !o.config) throw ConfigError("preset", "give --preset or --config");
  const std::optional<std::string> name =
      o.presets.empty() ? std::nullopt : std::optional<std::string>(o.presets.front());
  const SimulationConfig cfg = resolve(o, name);
  const fs::path out = o.out ? fs::path(*o.out) : fs::path(default_out_dir());
  const BatchResult batch = run_batch(cfg, !o.serial);
  export_batch(batch, out);
  print_aggregate(fmt::format("{} ({} runs, {} slots) -> {}",
                              cfg.preset.empty() ? "config" : cfg.preset, cfg.runs, cfg.timesteps,
                              out.string()),
                  batch.aggregate);
  return 0;
}

int cmd_batch(const RunOptions& o) {
  std::vector<std::string> names = o.presets;
  if (names.empty()) {
    for (auto n : preset_names()) names.emplace_back(n);
  }
  // resolve every config first so a bad override fails before any run starts
  std::vector<SimulationConfig> configs;
  for (const auto& n : names) configs.push_back(resolve(o, n));
  const fs::path out = o.out ? fs::path(*o.out) : fs::path(default_out_dir());
  for (const auto& cfg : configs) {
    const BatchResult batch = run_batch(cfg, !o.serial);
    export_batch(batch, out / cfg.preset);
    print_aggregate(fmt::format("{} ({} runs, {} slots)", cfg.preset, cfg.runs, cfg.timesteps),
                    batch.aggregate);
  }
  return 0;
}

int cmd_metrics(const std::string& input, std::optional<std::uint64_t> spe) {
  fs::path dir = input;
  fs::path trades = dir / "trades.csv";
  if (!fs::is_directory(dir)) {
    trades = dir;
    dir = dir.parent_path();
  }
  if (!spe) {
    const fs::path summary = dir / "summary.json";
    spe = fs::exists(summary) ? load_config(std::nullopt, summary).slots_per_epoch : 32;
  }
  const auto log = read_trades_csv(trades);
  std::vector<std::optional<Currency>> prices;
  if (fs::exists(dir / "slots.csv")) prices = read_slot_prices_csv(dir / "slots.csv");
  const RunMetrics m = compute_metrics(log, prices, *spe);
  std::cout << metrics_to_json(m).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Execution ticket market simulator"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "simulate one preset or config for --runs runs");
  add_run_options(run, run_opts, false);

  RunOptions batch_opts;
  auto* batch = app.add_subcommand("batch", "simulate a runs x presets matrix");
  add_run_options(batch, batch_opts, true);

  std::string metrics_input;
  std::optional<std::uint64_t> metrics_spe;
  auto* metrics = app.add_subcommand("metrics", "recompute run metrics from an export");
  metrics->add_option("input", metrics_input, "run directory or trades.csv")->required();
  metrics->add_option("--slots-per-epoch", metrics_spe,
                      "epoch length (default: from summary.json, else 32)");

  auto* value = app.add_subcommand("value", "valuation calculators");
  value->require_subcommand(1);
  double mu_r = 0, c = 0, d = 0, annual = 0, slots_per_year = 0, p = 0;
  std::uint64_t n = 1, lookahead = 0, X = 0, Z = 0;
  std::int64_t S = 0;
  auto* perpetual = value->add_subcommand("perpetual", "(mu_r - c) / (d n + 1)");
  perpetual->add_option("--mu-r", mu_r)->required();
  perpetual->add_option("--c", c);
  perpetual->add_option("--d", d)->required();
  perpetual->add_option("--n", n)->required();
  auto* discount = value->add_subcommand("discount", "per-slot rate from an annual rate");
  discount->add_option("--annual", annual)->required();
  discount->add_option("--slots-per-year", slots_per_year)->required();
  auto* min_tickets = value->add_subcommand("min-tickets", "smallest n with (1-p)/(d p) <= n");
  min_tickets->add_option("--d", d)->required();
  min_tickets->add_option("--p", p)->required();
  auto* npv = value->add_subcommand("npv", "mu_r / d");
  npv->add_option("--mu-r", mu_r)->required();
  npv->add_option("--d", d)->required();
  auto* share = value->add_subcommand("lookahead-share", "min(1, lookahead / n)");
  share->add_option("--lookahead", lookahead)->required();
  share->add_option("--n", n)->required();
  auto* ev = value->add_subcommand("ev-factor", "1 - (1 - X/Z)^(S/X)");
  ev->add_option("-X,--per-epoch", X)->required();
  ev->add_option("-Z,--tickets", Z)->required();
  ev->add_option("-S,--slots", S)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*batch) return cmd_batch(batch_opts);
    if (*metrics) return cmd_metrics(metrics_input, metrics_spe);
    const auto print = [](double v) { std::cout << fmt::format("{:.12g}\n", v); };
    if (*perpetual) print(valuation::perpetual_ticket_value({mu_r, c, d, n}));
    if (*discount) print(valuation::slot_discount_rate(annual, slots_per_year));
    if (*min_tickets) std::cout << valuation::min_tickets_for_capture(d, p) << '\n';
    if (*npv) print(valuation::npv_all_rewards(mu_r, d));
    if (*share) print(valuation::allocated_probability_share(lookahead, n));
    if (*ev) print(expected_value_factor(X, Z, S));
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error [" << e.field() << "]: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
