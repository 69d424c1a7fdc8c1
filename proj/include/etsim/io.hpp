#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "etsim/config.hpp"
#include "etsim/engine.hpp"
#include "json.hpp"

namespace etsim {

nlohmann::json config_to_json(const SimulationConfig& config);

/// Applies the keys of `j` on top of `base`. Unknown keys and type mismatches
/// raise ConfigError naming the key. Does not validate.
SimulationConfig config_from_json(const nlohmann::json& j, SimulationConfig base = {});

/// `key=value`; the value is read as JSON and falls back to a bare string.
void apply_override(SimulationConfig& config, const std::string& assignment);

/// Preset defaults (if any), then the config file (if any), then overrides.
/// The result is validated.
SimulationConfig load_config(const std::optional<std::string>& preset_name,
                             const std::optional<std::filesystem::path>& config_path,
                             const std::vector<std::string>& overrides = {});

nlohmann::json metrics_to_json(const RunMetrics& m);
nlohmann::json aggregate_to_json(const Aggregate& a);

std::string trades_csv(const std::vector<TradeRecord>& log);
std::string slots_csv(const std::vector<SlotRecord>& series);

/// Writes trades.csv, slots.csv and summary.json into `dir` (created if
/// missing). Throws std::runtime_error when the directory is not writable.
void export_run(const RunResult& result, const std::filesystem::path& dir,
                const std::optional<Aggregate>& aggregate = std::nullopt);

/// Batch summary: config echo, base seed, per-run metrics and aggregate.
void export_batch_summary(const BatchResult& batch, const std::filesystem::path& path);

std::vector<TradeRecord> read_trades_csv(const std::filesystem::path& path);
/// Returns the quoted_price column; empty cells become nullopt.
std::vector<std::optional<Currency>> read_slot_prices_csv(const std::filesystem::path& path);

}  // namespace etsim
