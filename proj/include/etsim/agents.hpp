#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "etsim/config.hpp"
#include "etsim/types.hpp"

namespace etsim {

/// What a holder knows about a particular ticket when valuing it.
struct TicketContext {
  // Probability-weighted expiry discount; 1 for non-expiring or assigned tickets.
  double expiry_discount{1.0};
  // Volatility of the slot the ticket proposes, when that is already known
  // (same-slot sales only).
  std::optional<double> volatility;
  double expected_volatility{1.0};
};

/// Seeds holders 1..n with the top/middle/tail split at 20% / 60% of n.
std::vector<TicketHolder> seed_holders(std::uint64_t n, Rng& rng);

/// max(0, 1 + (vola_slot - expected_vola) * vola_spec_factor)
double volatility_adjustment(double vola_slot, double expected_vola, double vola_spec_factor);

/// scale * capture * (1 - aggressiveness) * expiry_discount * volatility adjustment
Currency intrinsic_valuation(const TicketHolder& holder, Currency mev_scale_estimate,
                             const TicketContext& ctx);

// Valuation under a given strategy's information set. Only
// uniform_around_median draws from `rng`.
Currency strategy_valuation(const TicketHolder& holder, BiddingStrategy strategy,
                            Currency mev_scale_estimate, const TicketContext& ctx, Rng& rng);

/// Sealed FPA bid. competition_adjusted shades by (n-1)/n with n floored at
/// 2; every bid is capped at the holder's funds.
Currency bid_fpa(const TicketHolder& holder, Currency valuation, BiddingStrategy strategy,
                 std::size_t n_bidders);

Currency bid_spa(const TicketHolder& holder, Currency valuation);

bool quoted_decision(const TicketHolder& holder, Currency quoted_price, Currency valuation);

}  // namespace etsim
