#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etsim/config.hpp"
#include "etsim/market.hpp"
#include "etsim/metrics.hpp"
#include "etsim/types.hpp"

namespace etsim {

struct SlotRecord {
  Slot slot{0};
  // Quoted price for EIP-1559/AMM, clearing price of the slot's last primary
  // auction otherwise; empty when no price formed.
  std::optional<Currency> price;
  std::size_t outstanding{0};
  // Holder that proposed (redeemed) this slot; empty for unfilled slots.
  std::optional<HolderId> winner_id;
  Currency mev{0.0};
  double volatility{1.0};
  // Outstanding count right after the primary sale sub-step.
  std::size_t outstanding_after_sale{0};
  // Non-terminal issued tickets (held, assigned or in protocol inventory).
  std::size_t circulating{0};

  friend bool operator==(const SlotRecord&, const SlotRecord&) = default;
};

struct RunResult {
  SimulationConfig config;
  std::uint64_t seed{0};
  std::size_t run_index{0};
  MarketState final_state;
  std::vector<TicketHolder> holders;
  std::vector<SlotRecord> series;
  RunMetrics metrics;
};

struct MetricStats {
  double mean{0.0};
  double std{0.0};  // sample standard deviation; 0 for a single run
  std::size_t count{0};

  friend bool operator==(const MetricStats&, const MetricStats&) = default;
};

using Aggregate = std::map<std::string, MetricStats>;

struct BatchResult {
  std::vector<RunResult> runs;
  Aggregate aggregate;
};

/// Sells the initial batch in slot 0 through the configured mechanism.
void allocate_initial(Market& market);

/// Advances one slot through the four sub-steps: market meta data, primary
/// purchases, secondary market, redemption. Returns the slot's record.
SlotRecord step(Market& market);

RunResult run(const SimulationConfig& config, std::uint64_t seed);

/// Runs `config.runs` independent runs with seeds config.seed + i. Results are
/// joined in run-index order; parallel and serial execution give identical
/// output.
BatchResult run_batch(const SimulationConfig& config, bool parallel = true);

Aggregate aggregate_metrics(const std::vector<RunMetrics>& metrics);

/// Slot price series in the form consumed by compute_metrics.
std::vector<std::optional<Currency>> price_series(const std::vector<SlotRecord>& series);

}  // namespace etsim
