#pragma once

#include <cstdint>
#include <vector>

#include "etsim/config.hpp"
#include "etsim/types.hpp"

namespace etsim {

/// Everything one run mutates. Confined to a single thread; runs never
/// share a Market.
struct Market {
  SimulationConfig config;
  std::uint64_t seed{0};
  MarketState state;
  std::vector<TicketHolder> holders;
  // environment[t - 1] is slot t
  std::vector<SlotEnvironment> environment;
  double expected_vola{1.0};
  Rng rng{0};

  const SlotEnvironment& env(Slot slot) const;
};

/// Builds the initial state: validates the config, then consumes the run's
/// random stream in fixed order (environment for every slot, then holder
/// seeding) and issues the initial unsold ticket batch.
Market new_market(const SimulationConfig& config, std::uint64_t seed);

}  // namespace etsim
