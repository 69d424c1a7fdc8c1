#include "etsim/valuation.hpp"

#include <algorithm>
#include <cmath>

namespace etsim::valuation {

Currency perpetual_ticket_value(const PerpetualParams& p) {
  if (p.n < 1) throw ConfigError("n", "must be >= 1");
  if (p.d < 0.0) throw ConfigError("d", "must be >= 0");
  const double denom = p.d * static_cast<double>(p.n) + 1.0;
  return (p.mu_r - p.c) / denom;
}

double slot_discount_rate(double annual_rate, double slots_per_year) {
  if (!(annual_rate > -1.0)) throw ConfigError("annual_rate", "must be > -1");
  if (!(slots_per_year > 0.0)) throw ConfigError("slots_per_year", "must be > 0");
  return std::expm1(std::log1p(annual_rate) / slots_per_year);
}

std::uint64_t min_tickets_for_capture(double d, double p_var) {
  if (!(p_var > 0.0 && p_var < 1.0)) throw ConfigError("p_var", "must lie in (0, 1)");
  if (!(d > 0.0)) throw ConfigError("d", "must be > 0");
  return static_cast<std::uint64_t>(std::ceil((1.0 - p_var) / (d * p_var)));
}

Currency npv_all_rewards(Currency mu_r, double d) {
  if (!(d > 0.0)) throw ConfigError("d", "must be > 0 (value is unbounded otherwise)");
  return mu_r / d;
}

double allocated_probability_share(std::uint64_t lookahead_slots, std::uint64_t n) {
  if (n < 1) throw ConfigError("n", "must be >= 1");
  return std::min(1.0, static_cast<double>(lookahead_slots) / static_cast<double>(n));
}

}  // namespace etsim::valuation
