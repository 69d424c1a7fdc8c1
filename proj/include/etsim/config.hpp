#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "etsim/types.hpp"

namespace etsim {

enum class SellingMechanism { fpa, spa, eip1559, amm };

enum class BiddingStrategy {
  uniform_around_median,
  naive_historical,
  capture_aware,
  competition_adjusted,  // FPA only
  truthful,              // SPA only
  quoted_threshold,      // EIP-1559 / AMM
};

std::string_view to_string(SellingMechanism m);
std::string_view to_string(BiddingStrategy s);
std::optional<SellingMechanism> mechanism_from_string(std::string_view s);
std::optional<BiddingStrategy> strategy_from_string(std::string_view s);

// Log-normal (mu, sigma) of the per-slot volatility.
struct VolatilityParams {
  double mu{0.0};
  double sigma{0.2};

  friend bool operator==(const VolatilityParams&, const VolatilityParams&) = default;
};

struct SimulationConfig {
  std::string preset;  // identity only; empty for hand-built configs

  SellingMechanism selling_mechanism{SellingMechanism::fpa};
  std::uint64_t max_tickets{32};
  Currency initial_ticket_price{0.05};
  Currency mev_scale{0.05};
  std::uint64_t slots_per_epoch{32};
  std::uint64_t number_of_ticket_holders{10};
  bool secondary_market{false};
  std::optional<VolatilityParams> price_vola{VolatilityParams{}};
  BiddingStrategy agent_bidding_strategy{BiddingStrategy::capture_aware};
  std::uint64_t eip1559_max_tickets{4};
  double eip1559_adjust_factor{8.0};
  std::uint64_t eip1559_target{40};
  double amm_adjust_factor{6.0};
  std::uint64_t amm_target_amount{1};
  std::optional<std::uint64_t> expiry_period;
  std::optional<double> reimbursement_factor;
  std::optional<std::uint64_t> enhanced_lookahead;
  // Run the lottery after the primary sale so the ticket sold in a slot
  // proposes that same slot.
  bool jit_assignment{false};
  std::uint64_t timesteps{1000};
  std::uint64_t runs{10};
  std::uint64_t seed{0};

  bool fixed_supply() const noexcept {
    return selling_mechanism == SellingMechanism::fpa ||
           selling_mechanism == SellingMechanism::spa;
  }
  bool quoted() const noexcept { return !fixed_supply(); }
  bool refundable() const noexcept { return reimbursement_factor.has_value(); }
  std::uint64_t lookahead() const noexcept { return enhanced_lookahead.value_or(0); }

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// Throws ConfigError naming the first offending field.
void validate(const SimulationConfig& config);

}  // namespace etsim
