#include "etsim/config.hpp"

#include <cmath>

namespace etsim {

std::string_view to_string(SellingMechanism m) {
  switch (m) {
    case SellingMechanism::fpa: return "FPA";
    case SellingMechanism::spa: return "SPA";
    case SellingMechanism::eip1559: return "EIP1559";
    case SellingMechanism::amm: return "AMM";
  }
  return "unknown";
}

std::string_view to_string(BiddingStrategy s) {
  switch (s) {
    case BiddingStrategy::uniform_around_median: return "uniform_around_median";
    case BiddingStrategy::naive_historical: return "naive_historical";
    case BiddingStrategy::capture_aware: return "capture_aware";
    case BiddingStrategy::competition_adjusted: return "competition_adjusted";
    case BiddingStrategy::truthful: return "truthful";
    case BiddingStrategy::quoted_threshold: return "quoted_threshold";
  }
  return "unknown";
}

std::optional<SellingMechanism> mechanism_from_string(std::string_view s) {
  if (s == "FPA" || s == "fpa") return SellingMechanism::fpa;
  if (s == "SPA" || s == "spa") return SellingMechanism::spa;
  if (s == "EIP1559" || s == "eip1559" || s == "EIP-1559") return SellingMechanism::eip1559;
  if (s == "AMM" || s == "amm") return SellingMechanism::amm;
  return std::nullopt;
}

std::optional<BiddingStrategy> strategy_from_string(std::string_view s) {
  for (auto v : {BiddingStrategy::uniform_around_median, BiddingStrategy::naive_historical,
                 BiddingStrategy::capture_aware, BiddingStrategy::competition_adjusted,
                 BiddingStrategy::truthful, BiddingStrategy::quoted_threshold}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const SimulationConfig& c) {
  require(c.max_tickets >= 1, "max_tickets", "must be >= 1");
  require(positive_finite(c.initial_ticket_price), "initial_ticket_price", "must be > 0");
  require(positive_finite(c.mev_scale), "mev_scale", "must be > 0");
  require(c.slots_per_epoch >= 1, "slots_per_epoch", "must be >= 1");
  require(c.number_of_ticket_holders >= 1, "number_of_ticket_holders", "must be >= 1");
  if (c.price_vola) {
    require(std::isfinite(c.price_vola->mu), "price_vola", "mu must be finite");
    require(std::isfinite(c.price_vola->sigma) && c.price_vola->sigma >= 0.0, "price_vola",
            "sigma must be >= 0");
  }
  require(c.eip1559_max_tickets >= 1, "eip1559_max_tickets", "must be >= 1");
  require(positive_finite(c.eip1559_adjust_factor), "eip1559_adjust_factor", "must be > 0");
  require(c.eip1559_target >= 1, "eip1559_target", "must be >= 1");
  require(positive_finite(c.amm_adjust_factor), "amm_adjust_factor", "must be > 0");
  require(c.amm_target_amount >= 1, "amm_target_amount", "must be >= 1");
  if (c.expiry_period) require(*c.expiry_period >= 1, "expiry_period", "must be >= 1");
  if (c.reimbursement_factor) {
    require(std::isfinite(*c.reimbursement_factor) && *c.reimbursement_factor >= 0.0 &&
                *c.reimbursement_factor <= 1.0,
            "reimbursement_factor", "must lie in [0, 1]");
    require(!c.expiry_period, "reimbursement_factor",
            "expiring and refundable tickets cannot be combined");
  }
  require(c.runs >= 1, "runs", "must be >= 1");
  require(!(c.jit_assignment && c.lookahead() > 0), "jit_assignment",
          "cannot be combined with enhanced_lookahead");

  using S = BiddingStrategy;
  const auto s = c.agent_bidding_strategy;
  switch (c.selling_mechanism) {
    case SellingMechanism::fpa:
      require(s == S::uniform_around_median || s == S::naive_historical ||
                  s == S::capture_aware || s == S::competition_adjusted,
              "agent_bidding_strategy", "not usable with FPA");
      break;
    case SellingMechanism::spa:
      require(s == S::uniform_around_median || s == S::naive_historical ||
                  s == S::capture_aware || s == S::truthful,
              "agent_bidding_strategy", "not usable with SPA");
      break;
    case SellingMechanism::eip1559:
    case SellingMechanism::amm:
      require(s == S::quoted_threshold, "agent_bidding_strategy",
              "quoted mechanisms require quoted_threshold");
      break;
  }
}

}  // namespace etsim
