#include "etsim/agents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace etsim {

std::vector<TicketHolder> seed_holders(std::uint64_t n, Rng& rng) {
  if (n == 0) throw ConfigError("number_of_ticket_holders", "must be >= 1");
  std::vector<TicketHolder> holders;
  holders.reserve(n);
  const double nd = static_cast<double>(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    TicketHolder h;
    h.id = static_cast<HolderId>(i);
    const double id = static_cast<double>(i);
    if (id <= nd * 0.2) {
      h.tier = Tier::top;
      h.available_funds = rng.uniform(400, 1000);
      h.mev_capture_rate = rng.uniform(0.85, 0.95);
    } else if (id <= nd * 0.6) {
      h.tier = Tier::middle;
      h.available_funds = rng.uniform(300, 700);
      h.mev_capture_rate = rng.uniform(0.75, 0.85);
    } else {
      h.tier = Tier::tail;
      h.available_funds = rng.uniform(200, 500);
      h.mev_capture_rate = rng.uniform(0.6, 0.75);
    }
    h.aggressiveness = rng.normal(0.15, 0.02);
    h.vola_spec_factor = rng.normal(1.0, 0.5);
    if (h.vola_spec_factor <= 0.0) h.vola_spec_factor = 0.1;
    holders.push_back(std::move(h));
  }
  return holders;
}

double volatility_adjustment(double vola_slot, double expected_vola, double vola_spec_factor) {
  return std::max(0.0, 1.0 + (vola_slot - expected_vola) * vola_spec_factor);
}

namespace {

double context_factor(const TicketHolder& holder, const TicketContext& ctx) {
  double f = ctx.expiry_discount;
  if (ctx.volatility) {
    f *= volatility_adjustment(*ctx.volatility, ctx.expected_volatility, holder.vola_spec_factor);
  }
  return f;
}

}  // namespace

Currency intrinsic_valuation(const TicketHolder& holder, Currency mev_scale_estimate,
                             const TicketContext& ctx) {
  return mev_scale_estimate * holder.mev_capture_rate * (1.0 - holder.aggressiveness) *
         context_factor(holder, ctx);
}

Currency strategy_valuation(const TicketHolder& holder, BiddingStrategy strategy,
                            Currency mev_scale_estimate, const TicketContext& ctx, Rng& rng) {
  switch (strategy) {
    case BiddingStrategy::uniform_around_median: {
      // median of an exponential with mean s is s * ln 2
      const double median = mev_scale_estimate * std::numbers::ln2;
      return rng.uniform(0.5 * median, 1.5 * median) * context_factor(holder, ctx);
    }
    case BiddingStrategy::naive_historical:
      return mev_scale_estimate * (1.0 - holder.aggressiveness) * context_factor(holder, ctx);
    case BiddingStrategy::capture_aware:
    case BiddingStrategy::competition_adjusted:
    case BiddingStrategy::truthful:
    case BiddingStrategy::quoted_threshold:
      return intrinsic_valuation(holder, mev_scale_estimate, ctx);
  }
  return 0.0;
}

Currency bid_fpa(const TicketHolder& holder, Currency valuation, BiddingStrategy strategy,
                 std::size_t n_bidders) {
  Currency bid = std::max(0.0, valuation);
  if (strategy == BiddingStrategy::competition_adjusted) {
    const double n = static_cast<double>(std::max<std::size_t>(n_bidders, 2));
    bid *= (n - 1.0) / n;
  }
  return std::min(bid, holder.available_funds);
}

Currency bid_spa(const TicketHolder& holder, Currency valuation) {
  return std::min(std::max(0.0, valuation), holder.available_funds);
}

bool quoted_decision(const TicketHolder& holder, Currency quoted_price, Currency valuation) {
  return quoted_price < valuation && quoted_price <= holder.available_funds;
}

}  // namespace etsim
