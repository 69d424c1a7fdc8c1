#include "etsim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>

#include "etsim/presets.hpp"

namespace etsim {

using nlohmann::json;

namespace {

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a = {
      {"MEV_scale", "mev_scale"},
      {"EIP-1559_max_tickets", "eip1559_max_tickets"},
      {"EIP-1559_adjust_factor", "eip1559_adjust_factor"},
      {"EIP-1559_target", "eip1559_target"},
      {"AMM_adjust_factor", "amm_adjust_factor"},
      {"AMM_target_amount", "amm_target_amount"},
  };
  return a;
}

std::uint64_t get_count(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) throw ConfigError(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

double get_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

template <class T, class F>
std::optional<T> get_optional(const json& v, F&& get) {
  if (v.is_null()) return std::nullopt;
  return get();
}

void set_field(SimulationConfig& c, const std::string& raw_key, const json& v) {
  const auto alias = aliases().find(raw_key);
  const std::string key = alias == aliases().end() ? raw_key : alias->second;

  if (key == "preset") {
    c.preset = get_string(v, key);
  } else if (key == "selling_mechanism") {
    const auto m = mechanism_from_string(get_string(v, key));
    if (!m) throw ConfigError(key, "unknown mechanism " + v.dump());
    c.selling_mechanism = *m;
  } else if (key == "max_tickets") {
    c.max_tickets = get_count(v, key);
  } else if (key == "initial_ticket_price") {
    c.initial_ticket_price = get_real(v, key);
  } else if (key == "mev_scale") {
    c.mev_scale = get_real(v, key);
  } else if (key == "slots_per_epoch") {
    c.slots_per_epoch = get_count(v, key);
  } else if (key == "number_of_ticket_holders") {
    c.number_of_ticket_holders = get_count(v, key);
  } else if (key == "secondary_market") {
    c.secondary_market = get_bool(v, key);
  } else if (key == "price_vola") {
    if (v.is_null() || (v.is_boolean() && !v.get<bool>())) {
      c.price_vola.reset();
    } else if (v.is_object()) {
      VolatilityParams p = c.price_vola.value_or(VolatilityParams{});
      for (const auto& [k, x] : v.items()) {
        if (k == "mu") {
          p.mu = get_real(x, "price_vola.mu");
        } else if (k == "sigma") {
          p.sigma = get_real(x, "price_vola.sigma");
        } else {
          throw ConfigError("price_vola." + k, "unknown key");
        }
      }
      c.price_vola = p;
    } else if (v.is_array() && v.size() == 2) {
      c.price_vola = VolatilityParams{get_real(v[0], "price_vola[0]"), get_real(v[1], "price_vola[1]")};
    } else {
      throw ConfigError(key, "expected null, {\"mu\", \"sigma\"} or [mu, sigma]");
    }
  } else if (key == "agent_bidding_strategy") {
    const auto s = strategy_from_string(get_string(v, key));
    if (!s) throw ConfigError(key, "unknown strategy " + v.dump());
    c.agent_bidding_strategy = *s;
  } else if (key == "eip1559_max_tickets") {
    c.eip1559_max_tickets = get_count(v, key);
  } else if (key == "eip1559_adjust_factor") {
    c.eip1559_adjust_factor = get_real(v, key);
  } else if (key == "eip1559_target") {
    c.eip1559_target = get_count(v, key);
  } else if (key == "amm_adjust_factor") {
    c.amm_adjust_factor = get_real(v, key);
  } else if (key == "amm_target_amount") {
    c.amm_target_amount = get_count(v, key);
  } else if (key == "expiry_period") {
    c.expiry_period = get_optional<std::uint64_t>(v, [&] { return get_count(v, key); });
  } else if (key == "reimbursement_factor") {
    c.reimbursement_factor = get_optional<double>(v, [&] { return get_real(v, key); });
  } else if (key == "enhanced_lookahead") {
    c.enhanced_lookahead = get_optional<std::uint64_t>(v, [&] { return get_count(v, key); });
  } else if (key == "jit_assignment") {
    c.jit_assignment = get_bool(v, key);
  } else if (key == "timesteps") {
    c.timesteps = get_count(v, key);
  } else if (key == "runs") {
    c.runs = get_count(v, key);
  } else if (key == "seed") {
    c.seed = get_count(v, key);
  } else {
    throw ConfigError(raw_key, "unknown configuration key");
  }
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

// Rounded to the export grid so that summaries diff cleanly.
json grid(const std::optional<double>& v) {
  if (!v) return nullptr;
  return std::round(*v * 1e9) / 1e9;
}

std::string fixed(double v) { return fmt::format("{:.9f}", v); }

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return fixed(*v);
  } else {
    return std::to_string(*v);
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Minimal CSV reader for the files written above (no quoting needed).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name, const std::filesystem::path& path) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error(path.string() + ": missing column '" + name + "'");
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  t.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != t.header.size()) {
      throw std::runtime_error(fmt::format("{}:{}: expected {} fields, got {}", path.string(),
                                           lineno, t.header.size(), row.size()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

template <class T>
T parse_number(const std::string& s, const std::filesystem::path& path) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::runtime_error(path.string() + ": bad number '" + s + "'");
  }
  return v;
}

template <class T>
std::optional<T> parse_optional(const std::string& s, const std::filesystem::path& path) {
  if (s.empty()) return std::nullopt;
  return parse_number<T>(s, path);
}

}  // namespace

json config_to_json(const SimulationConfig& c) {
  json j;
  j["preset"] = c.preset;
  j["selling_mechanism"] = std::string(to_string(c.selling_mechanism));
  j["max_tickets"] = c.max_tickets;
  j["initial_ticket_price"] = c.initial_ticket_price;
  j["mev_scale"] = c.mev_scale;
  j["slots_per_epoch"] = c.slots_per_epoch;
  j["number_of_ticket_holders"] = c.number_of_ticket_holders;
  j["secondary_market"] = c.secondary_market;
  j["price_vola"] = c.price_vola ? json{{"mu", c.price_vola->mu}, {"sigma", c.price_vola->sigma}}
                                 : json(nullptr);
  j["agent_bidding_strategy"] = std::string(to_string(c.agent_bidding_strategy));
  j["eip1559_max_tickets"] = c.eip1559_max_tickets;
  j["eip1559_adjust_factor"] = c.eip1559_adjust_factor;
  j["eip1559_target"] = c.eip1559_target;
  j["amm_adjust_factor"] = c.amm_adjust_factor;
  j["amm_target_amount"] = c.amm_target_amount;
  j["expiry_period"] = opt(c.expiry_period);
  j["reimbursement_factor"] = opt(c.reimbursement_factor);
  j["enhanced_lookahead"] = opt(c.enhanced_lookahead);
  j["jit_assignment"] = c.jit_assignment;
  j["timesteps"] = c.timesteps;
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  return j;
}

SimulationConfig config_from_json(const json& j, SimulationConfig base) {
  if (!j.is_object()) throw ConfigError("<root>", "configuration must be a JSON object");
  for (const auto& [k, v] : j.items()) set_field(base, k, v);
  return base;
}

void apply_override(SimulationConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(assignment, "override must have the form key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  set_field(config, key, value);
}

SimulationConfig load_config(const std::optional<std::string>& preset_name,
                             const std::optional<std::filesystem::path>& config_path,
                             const std::vector<std::string>& overrides) {
  SimulationConfig c = preset_name ? preset(*preset_name) : SimulationConfig{};
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw ConfigError("config", "cannot read " + config_path->string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config", config_path->string() + " is not valid JSON");
    // a summary.json echo carries the config under "config"
    if (j.is_object() && j.contains("config") && j["config"].is_object()) j = j["config"];
    c = config_from_json(j, c);
  }
  for (const auto& o : overrides) apply_override(c, o);
  validate(c);
  return c;
}

json metrics_to_json(const RunMetrics& m) {
  return json{
      {"largest_market_share", grid(m.largest_market_share)},
      {"nakamoto", grid(m.nakamoto)},
      {"hhi", grid(m.hhi)},
      {"mev_share_primary", grid(m.mev_share_primary)},
      {"mev_share_combined", grid(m.mev_share_combined)},
      {"gk_measure", grid(m.gk_measure)},
      {"delta_variance", grid(m.delta_variance)},
  };
}

json aggregate_to_json(const Aggregate& a) {
  json j = json::object();
  for (const auto& [name, s] : a) {
    j[name] = json{{"mean", grid(s.mean)}, {"std", grid(s.std)}, {"count", s.count}};
  }
  return j;
}

std::string trades_csv(const std::vector<TradeRecord>& log) {
  std::string out = "slot,venue,ticket_id,buyer_id,seller_id,price,mev_available,mev_extracted\n";
  for (const auto& r : log) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", r.slot, to_string(r.venue), r.ticket_id,
                       cell(r.buyer_id), cell(r.seller_id), fixed(r.price),
                       cell(r.mev_available), cell(r.mev_extracted));
  }
  return out;
}

std::string slots_csv(const std::vector<SlotRecord>& series) {
  std::string out = "slot,quoted_price,outstanding,winner_id\n";
  for (const auto& r : series) {
    out += fmt::format("{},{},{},{}\n", r.slot, cell(r.price), r.outstanding, cell(r.winner_id));
  }
  return out;
}

void export_run(const RunResult& result, const std::filesystem::path& dir,
                const std::optional<Aggregate>& aggregate) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "trades.csv", trades_csv(result.final_state.trade_log));
  write_file(dir / "slots.csv", slots_csv(result.series));

  json summary;
  SimulationConfig echo = result.config;
  echo.seed = result.seed;
  echo.runs = 1;
  summary["config"] = config_to_json(echo);
  summary["seed"] = result.seed;
  summary["run_index"] = result.run_index;
  summary["metrics"] = metrics_to_json(result.metrics);
  summary["aggregate"] = aggregate_to_json(aggregate.value_or(aggregate_metrics({result.metrics})));
  write_file(dir / "summary.json", summary.dump(2) + "\n");
}

void export_batch_summary(const BatchResult& batch, const std::filesystem::path& path) {
  if (batch.runs.empty()) throw std::runtime_error("empty batch");
  json summary;
  summary["config"] = config_to_json(batch.runs.front().config);
  summary["seed"] = batch.runs.front().config.seed;
  json runs = json::array();
  for (const auto& r : batch.runs) {
    runs.push_back(json{{"run_index", r.run_index}, {"seed", r.seed},
                        {"metrics", metrics_to_json(r.metrics)}});
  }
  summary["runs"] = std::move(runs);
  summary["aggregate"] = aggregate_to_json(batch.aggregate);
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  write_file(path, summary.dump(2) + "\n");
}

std::vector<TradeRecord> read_trades_csv(const std::filesystem::path& path) {
  const Table t = read_table(path);
  const std::size_t c_slot = t.column("slot", path), c_venue = t.column("venue", path),
                    c_ticket = t.column("ticket_id", path), c_buyer = t.column("buyer_id", path),
                    c_seller = t.column("seller_id", path), c_price = t.column("price", path),
                    c_avail = t.column("mev_available", path),
                    c_extr = t.column("mev_extracted", path);
  std::vector<TradeRecord> log;
  log.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    TradeRecord r;
    r.slot = parse_number<Slot>(row[c_slot], path);
    const auto venue = venue_from_string(row[c_venue]);
    if (!venue) throw std::runtime_error(path.string() + ": unknown venue '" + row[c_venue] + "'");
    r.venue = *venue;
    r.ticket_id = parse_number<TicketId>(row[c_ticket], path);
    r.buyer_id = parse_optional<HolderId>(row[c_buyer], path);
    r.seller_id = parse_optional<HolderId>(row[c_seller], path);
    r.price = parse_number<double>(row[c_price], path);
    r.mev_available = parse_optional<double>(row[c_avail], path);
    r.mev_extracted = parse_optional<double>(row[c_extr], path);
    log.push_back(r);
  }
  return log;
}

std::vector<std::optional<Currency>> read_slot_prices_csv(const std::filesystem::path& path) {
  const Table t = read_table(path);
  const std::size_t c = t.column("quoted_price", path);
  std::vector<std::optional<Currency>> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) out.push_back(parse_optional<double>(row[c], path));
  return out;
}

}  // namespace etsim
