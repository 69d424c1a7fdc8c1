#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "etsim/types.hpp"

namespace etsim {

/// Per-run objective metrics. An empty optional marks a metric that is
/// undefined for the run (no redemptions, no trades, too few prices).
struct RunMetrics {
  std::optional<double> largest_market_share;
  std::optional<double> nakamoto;
  std::optional<double> hhi;
  std::optional<double> mev_share_primary;
  std::optional<double> mev_share_combined;
  std::optional<double> gk_measure;
  std::optional<double> delta_variance;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

/// Share of redeemed tickets per redeeming holder.
std::optional<std::map<HolderId, double>> market_shares(std::span<const TradeRecord> log);

/// Smallest number of largest holders whose shares reach 51%.
std::size_t nakamoto(std::span<const double> shares);
std::size_t nakamoto(const std::map<HolderId, double>& shares);

/// 10000 * sum of squared shares.
double hhi(std::span<const double> shares);
double hhi(const std::map<HolderId, double>& shares);

std::optional<double> mev_share(Currency protocol_revenue, Currency total_mev_available);

struct PricePoint {
  Slot slot{0};
  Currency price{0.0};
};

/// Executed primary prices in log order.
std::vector<PricePoint> primary_prices(std::span<const TradeRecord> log);

/// Mean over epochs of the Garman-Klass estimator built from each epoch's
/// open/high/low/close primary price. Epochs without trades are skipped.
std::optional<double> gk_measure(std::span<const PricePoint> prices, std::uint64_t slots_per_epoch);

/// Population variance of consecutive price differences; needs >= 3 prices.
std::optional<double> delta_variance(std::span<const double> prices);

/// All metrics from a trade log and the per-slot price series (one entry per
/// slot, empty where the slot had no price).
RunMetrics compute_metrics(std::span<const TradeRecord> log,
                           std::span<const std::optional<Currency>> slot_prices,
                           std::uint64_t slots_per_epoch);

}  // namespace etsim
