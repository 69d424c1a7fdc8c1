#include "etsim/market.hpp"

#include "etsim/agents.hpp"
#include "etsim/environment.hpp"
#include "etsim/lifecycle.hpp"
#include "etsim/mechanisms.hpp"

namespace etsim {

const SlotEnvironment& Market::env(Slot slot) const {
  if (slot == 0 || slot > environment.size()) {
    throw InvariantViolation("no environment for slot " + std::to_string(slot));
  }
  return environment[slot - 1];
}

Market new_market(const SimulationConfig& config, std::uint64_t seed) {
  validate(config);
  Market m;
  m.config = config;
  m.seed = seed;
  m.rng = Rng(seed);
  m.environment = draw_environment(config, m.rng);
  m.holders = seed_holders(config.number_of_ticket_holders, m.rng);
  m.expected_vola = expected_volatility(config.price_vola);
  issue_initial(m);
  switch (config.selling_mechanism) {
    case SellingMechanism::eip1559:
      m.state.quoted_price = config.initial_ticket_price;
      break;
    case SellingMechanism::amm:
      m.state.quoted_price = amm_price(0, config.amm_adjust_factor, amm_b(config));
      break;
    default:
      break;
  }
  return m;
}

}  // namespace etsim
