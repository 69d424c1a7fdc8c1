#include "etsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace etsim {

std::optional<std::map<HolderId, double>> market_shares(std::span<const TradeRecord> log) {
  std::map<HolderId, std::uint64_t> counts;
  std::uint64_t total = 0;
  for (const auto& r : log) {
    if (r.venue != Venue::redemption || !r.seller_id) continue;
    ++counts[*r.seller_id];
    ++total;
  }
  if (total == 0) return std::nullopt;
  std::map<HolderId, double> shares;
  for (const auto& [id, n] : counts) {
    shares[id] = static_cast<double>(n) / static_cast<double>(total);
  }
  return shares;
}

std::size_t nakamoto(std::span<const double> shares) {
  std::vector<double> sorted(shares.begin(), shares.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double acc = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    acc += sorted[k];
    if (acc >= 0.51 - 1e-12) return k + 1;
  }
  return sorted.size();
}

namespace {

std::vector<double> values_of(const std::map<HolderId, double>& shares) {
  std::vector<double> v;
  v.reserve(shares.size());
  for (const auto& [id, s] : shares) v.push_back(s);
  return v;
}

}  // namespace

std::size_t nakamoto(const std::map<HolderId, double>& shares) {
  const auto v = values_of(shares);
  return nakamoto(std::span<const double>(v));
}

double hhi(std::span<const double> shares) {
  double sum = 0.0;
  for (double s : shares) sum += s * s;
  return 10000.0 * sum;
}

double hhi(const std::map<HolderId, double>& shares) {
  const auto v = values_of(shares);
  return hhi(std::span<const double>(v));
}

std::optional<double> mev_share(Currency protocol_revenue, Currency total_mev_available) {
  if (!(total_mev_available > 0.0)) return std::nullopt;
  return std::max(0.0, protocol_revenue / total_mev_available);
}

std::vector<PricePoint> primary_prices(std::span<const TradeRecord> log) {
  std::vector<PricePoint> out;
  for (const auto& r : log) {
    if (r.venue == Venue::primary) out.push_back({r.slot, r.price});
  }
  return out;
}

std::optional<double> gk_measure(std::span<const PricePoint> prices, std::uint64_t slots_per_epoch) {
  if (slots_per_epoch == 0) return std::nullopt;
  const double k = 2.0 * std::log(2.0) - 1.0;
  double sum = 0.0;
  std::size_t epochs = 0;
  std::size_t i = 0;
  while (i < prices.size()) {
    const Epoch e = prices[i].slot / slots_per_epoch;
    const double open = prices[i].price;
    double hi = open, lo = open, close = open;
    std::size_t j = i;
    for (; j < prices.size() && prices[j].slot / slots_per_epoch == e; ++j) {
      hi = std::max(hi, prices[j].price);
      lo = std::min(lo, prices[j].price);
      close = prices[j].price;
    }
    i = j;
    // log prices need a strictly positive range
    if (!(lo > 0.0) || !(open > 0.0)) continue;
    const double hl = std::log(hi / lo);
    const double co = std::log(close / open);
    sum += 0.5 * hl * hl - k * co * co;
    ++epochs;
  }
  if (epochs == 0) return std::nullopt;
  return sum / static_cast<double>(epochs);
}

std::optional<double> delta_variance(std::span<const double> prices) {
  if (prices.size() < 3) return std::nullopt;
  std::vector<double> d(prices.size() - 1);
  for (std::size_t i = 0; i + 1 < prices.size(); ++i) d[i] = prices[i + 1] - prices[i];
  const double n = static_cast<double>(d.size());
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  return ss / n;
}

RunMetrics compute_metrics(std::span<const TradeRecord> log,
                           std::span<const std::optional<Currency>> slot_prices,
                           std::uint64_t slots_per_epoch) {
  RunMetrics m;
  if (const auto shares = market_shares(log)) {
    double largest = 0.0;
    for (const auto& [id, s] : *shares) largest = std::max(largest, s);
    m.largest_market_share = largest;
    m.nakamoto = static_cast<double>(nakamoto(*shares));
    m.hhi = hhi(*shares);
  }

  Currency revenue = 0.0;
  Currency available = 0.0;
  Currency premium = 0.0;
  std::unordered_map<TicketId, Currency> basis;
  for (const auto& r : log) {
    switch (r.venue) {
      case Venue::primary:
        revenue += r.price;
        basis[r.ticket_id] = r.price;
        break;
      case Venue::refund:
        revenue -= r.price;
        break;
      case Venue::secondary: {
        auto& b = basis[r.ticket_id];
        premium += std::max(0.0, r.price - b);
        b = r.price;
        break;
      }
      case Venue::redemption:
        available += r.mev_available.value_or(0.0);
        break;
    }
  }
  m.mev_share_primary = mev_share(revenue, available);
  m.mev_share_combined = mev_share(revenue + premium, available);

  const auto prices = primary_prices(log);
  m.gk_measure = gk_measure(prices, slots_per_epoch);

  std::vector<double> series;
  for (const auto& p : slot_prices) {
    if (p) series.push_back(*p);
  }
  m.delta_variance = delta_variance(series);
  return m;
}

}  // namespace etsim
