#pragma once

#include <cstdint>

#include "etsim/types.hpp"

namespace etsim::valuation {

struct PerpetualParams {
  Currency mu_r{0.0};  // expected reward per slot
  Currency c{0.0};     // carry cost per period
  double d{0.0};       // per-slot discount rate
  std::uint64_t n{1};  // tickets outstanding
};

/// (mu_r - c) / (d n + 1). Negative when carry exceeds reward.
Currency perpetual_ticket_value(const PerpetualParams& p);

/// Compound-equivalent per-slot rate: (1 + annual)^(1 / slots_per_year) - 1.
double slot_discount_rate(double annual_rate, double slots_per_year);

/// Smallest n with (1 - p) / (d p) <= n.
std::uint64_t min_tickets_for_capture(double d, double p_var);

/// mu_r / d. Throws ConfigError for d <= 0.
Currency npv_all_rewards(Currency mu_r, double d);

/// min(1, lookahead_slots / n)
double allocated_probability_share(std::uint64_t lookahead_slots, std::uint64_t n);

}  // namespace etsim::valuation
