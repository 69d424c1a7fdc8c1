#include "etsim/presets.hpp"

#include <string>

namespace etsim {

const std::vector<std::string_view>& preset_names() {
  static const std::vector<std::string_view> names = {
      "simple-fpa", "jit-spa", "flexible-1559", "fixed-spa", "flexible-amm", "fixed-fpa-resale",
  };
  return names;
}

SimulationConfig preset(std::string_view name) {
  SimulationConfig c;  // shared defaults: 10 holders, mev_scale 0.05, vola (0, 0.2)
  c.preset = std::string(name);

  if (name == "simple-fpa") {
    c.selling_mechanism = SellingMechanism::fpa;
    c.max_tickets = 32;
    // tickets bought in epoch n-1 must be used within epoch n
    c.expiry_period = 2 * c.slots_per_epoch;
    c.agent_bidding_strategy = BiddingStrategy::capture_aware;
  } else if (name == "jit-spa") {
    c.selling_mechanism = SellingMechanism::spa;
    c.max_tickets = 1;
    c.expiry_period = 1;
    c.jit_assignment = true;
    c.secondary_market = true;
    c.agent_bidding_strategy = BiddingStrategy::truthful;
  } else if (name == "flexible-1559") {
    c.selling_mechanism = SellingMechanism::eip1559;
    c.max_tickets = 32;
    // not given by the table; 4 tickets per holder
    c.eip1559_target = c.number_of_ticket_holders * 4;
    c.eip1559_max_tickets = 4;
    c.eip1559_adjust_factor = 8.0;
    c.enhanced_lookahead = 32;
    c.secondary_market = true;
    c.agent_bidding_strategy = BiddingStrategy::quoted_threshold;
  } else if (name == "fixed-spa") {
    c.selling_mechanism = SellingMechanism::spa;
    c.max_tickets = 1024;
    c.enhanced_lookahead = 32;
    c.agent_bidding_strategy = BiddingStrategy::truthful;
  } else if (name == "flexible-amm") {
    c.selling_mechanism = SellingMechanism::amm;
    c.max_tickets = 32;
    c.amm_adjust_factor = 25.0;
    c.amm_target_amount = 1;  // b via derive_b; not given by the table
    c.reimbursement_factor = 0.2;
    c.agent_bidding_strategy = BiddingStrategy::quoted_threshold;
  } else if (name == "fixed-fpa-resale") {
    c.selling_mechanism = SellingMechanism::fpa;
    c.max_tickets = 1024;
    c.secondary_market = true;
    c.agent_bidding_strategy = BiddingStrategy::capture_aware;
  } else {
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
  }
  return c;
}

}  // namespace etsim
