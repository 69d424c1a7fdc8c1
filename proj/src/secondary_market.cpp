#include "etsim/secondary_market.hpp"

#include <algorithm>

#include "etsim/agents.hpp"
#include "etsim/lifecycle.hpp"
#include "etsim/mechanisms.hpp"

namespace etsim {

Currency price_resale_ticket(const Market& m, const TicketHolder& buyer, const Ticket& t) {
  if (t.terminal() || t.state == TicketState::unsold) return 0.0;
  return intrinsic_valuation(buyer, m.config.mev_scale, ticket_context(m, t));
}

std::optional<ResaleOffer> choose_offer(const Market& m, const TicketHolder& seller,
                                        const std::vector<TicketId>& exclude) {
  std::optional<ResaleOffer> best;
  for (TicketId id : seller.tickets) {
    if (std::find(exclude.begin(), exclude.end(), id) != exclude.end()) continue;
    const Ticket& t = m.state.ticket(id);
    if (!t.outstanding()) continue;
    const Currency v = price_resale_ticket(m, seller, t);
    if (!best || v < best->min_price || (v == best->min_price && id < best->ticket_id)) {
      best = ResaleOffer{seller.id, id, v};
    }
  }
  return best;
}

std::vector<TradeRecord> run_secondary_round(Market& m) {
  std::vector<TradeRecord> out;
  if (!m.config.secondary_market) return out;

  std::vector<TicketId> traded;
  for (std::size_t s = 0; s < m.holders.size(); ++s) {
    const auto offer = choose_offer(m, m.holders[s], traded);
    if (!offer) continue;
    const Ticket& t = m.state.ticket(offer->ticket_id);

    std::vector<Bid> bids;
    for (const auto& buyer : m.holders) {
      if (buyer.id == offer->seller_id) continue;
      const Currency v = std::min(price_resale_ticket(m, buyer, t), buyer.available_funds);
      if (v > 0.0) bids.push_back({buyer.id, v});
    }
    const AuctionOutcome outcome = run_spa(bids, offer->min_price);
    if (!outcome.winner_id) continue;
    const auto winning = std::find_if(outcome.all_bids.begin(), outcome.all_bids.end(),
                                      [&](const Bid& b) { return b.holder_id == *outcome.winner_id; });
    // the seller is indifferent at equality
    if (winning->amount <= offer->min_price) continue;

    const Currency price = to_gwei_grid(outcome.clearing_price);
    TicketHolder& seller = holder_ref(m.holders, offer->seller_id);
    TicketHolder& buyer = holder_ref(m.holders, *outcome.winner_id);
    Ticket& ticket = m.state.ticket(offer->ticket_id);
    seller.remove_ticket(ticket.id);
    seller.available_funds += price;
    seller.secondary_received += price;
    seller.accumulated_earnings += price;
    buyer.add_ticket(ticket.id);
    buyer.available_funds -= price;
    buyer.secondary_paid += price;
    buyer.accumulated_costs += price;
    ticket.owner_id = buyer.id;
    ticket.purchase_price = price;
    traded.push_back(ticket.id);

    TradeRecord r;
    r.slot = m.state.slot;
    r.venue = Venue::secondary;
    r.ticket_id = ticket.id;
    r.buyer_id = buyer.id;
    r.seller_id = seller.id;
    r.price = price;
    m.state.trade_log.push_back(r);
    out.push_back(r);
  }
  return out;
}

}  // namespace etsim
