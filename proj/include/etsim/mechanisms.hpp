#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "etsim/market.hpp"
#include "etsim/types.hpp"

namespace etsim {

struct Bid {
  HolderId holder_id{0};
  Currency amount{0.0};
};

struct AuctionOutcome {
  std::optional<HolderId> winner_id;
  Currency clearing_price{0.0};
  std::vector<Bid> all_bids;       // accepted bids, as submitted
  std::vector<Bid> rejected_bids;  // negative or non-finite
};

/// Sealed-bid first-price auction. Highest bid wins and pays its bid; ties
/// go to the lowest holder id.
AuctionOutcome run_fpa(std::vector<Bid> bids);

/// Sealed-bid second-price auction with reserve. The highest bid at or above
/// `reserve` wins and pays max(second-highest bid, reserve).
AuctionOutcome run_spa(std::vector<Bid> bids, Currency reserve = 0.0);

inline constexpr Currency kEip1559PriceFloor = 1e-6;

/// price * (1 + (outstanding - target) / target / adjust_factor), floored
/// at kEip1559PriceFloor.
Currency eip1559_update_price(Currency price, std::uint64_t outstanding, std::uint64_t target,
                              double adjust_factor);

/// Marginal bonding-curve price of the next ticket:
/// e^b * (e^((excess + 1) / q) - e^(excess / q)).
Currency amm_price(std::uint64_t excess_tickets_held, double adjust_quotient, double b);

/// ln(target_price) / target_amount
double derive_b(Currency target_price, std::uint64_t target_amount);

/// Curve offset used by a market's AMM.
double amm_b(const SimulationConfig& config);

/// Sells the whole protocol inventory through sequential single-ticket
/// auctions (FPA or SPA per config).
std::vector<TradeRecord> auction_sell(Market& market, bool sold_for_current_slot = false);

/// Batch sale at the current quoted price: at most one ticket per holder,
/// at most `max_per_slot` in total, holders visited in random order.
/// The price is not updated inside the batch.
std::vector<TradeRecord> eip1559_sell(Market& market, std::uint64_t max_per_slot);

/// Continuous bonding-curve sale. Holders in random order buy while the
/// curve price is below their valuation; each purchase moves the curve.
/// `limit` caps the number of tickets sold in this call.
std::vector<TradeRecord> amm_sell(Market& market, std::optional<std::uint64_t> limit = {});

}  // namespace etsim
