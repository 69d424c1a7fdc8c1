#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "etsim/config.hpp"
#include "etsim/engine.hpp"
#include "etsim/lifecycle.hpp"
#include "etsim/market.hpp"
#include "etsim/presets.hpp"
#include "etsim/types.hpp"

namespace etsim::test {

inline TicketHolder make_holder(HolderId id, double capture = 1.0, double aggressiveness = 0.0,
                                double funds = 1000.0, double vola_spec = 1.0) {
  TicketHolder h;
  h.id = id;
  h.mev_capture_rate = capture;
  h.aggressiveness = aggressiveness;
  h.available_funds = funds;
  h.vola_spec_factor = vola_spec;
  return h;
}

inline SimulationConfig small_config(SellingMechanism m) {
  SimulationConfig c;
  c.selling_mechanism = m;
  c.agent_bidding_strategy = (m == SellingMechanism::fpa)   ? BiddingStrategy::capture_aware
                             : (m == SellingMechanism::spa) ? BiddingStrategy::truthful
                                                            : BiddingStrategy::quoted_threshold;
  c.timesteps = 50;
  c.runs = 1;
  return c;
}

// Market whose holders are replaced by `holders` (ids must be 1..n).
inline Market market_with(SimulationConfig c, std::vector<TicketHolder> holders,
                          std::uint64_t seed = 1) {
  c.number_of_ticket_holders = holders.size();
  Market m = new_market(c, seed);
  m.holders = std::move(holders);
  return m;
}

inline RunResult short_run(const std::string& name, std::uint64_t timesteps, std::uint64_t seed,
                           std::function<void(SimulationConfig&)> tweak = {}) {
  SimulationConfig c = preset(name);
  c.timesteps = timesteps;
  if (tweak) tweak(c);
  return run(c, seed);
}

// Two-sided Kolmogorov-Smirnov statistic of `xs` against `cdf`.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

// Asymptotic KS critical value at alpha = 0.01.
inline double ks_critical_01(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

}  // namespace etsim::test
