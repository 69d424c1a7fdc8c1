#pragma once

#include <optional>
#include <vector>

#include "etsim/market.hpp"
#include "etsim/types.hpp"

namespace etsim {

struct ResaleOffer {
  HolderId seller_id{0};
  TicketId ticket_id{0};
  Currency min_price{0.0};  // seller's own adjusted valuation
};

/// A holder's value for a specific live ticket right now: intrinsic valuation
/// times the expiry factor over the remaining validity, times the volatility
/// adjustment when the ticket proposes the current slot.
Currency price_resale_ticket(const Market& market, const TicketHolder& buyer, const Ticket& ticket);

/// The ticket a holder lists this round: its lowest-valued live ticket,
/// priced at that valuation. Tickets in `exclude` are skipped.
std::optional<ResaleOffer> choose_offer(const Market& market, const TicketHolder& seller,
                                        const std::vector<TicketId>& exclude = {});

/// One secondary round: every holder may list one ticket, all other holders
/// bid their valuation in a second-price auction with the seller's value as
/// reserve. Proceeds go to the seller.
std::vector<TradeRecord> run_secondary_round(Market& market);

}  // namespace etsim
