#include "etsim/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "etsim/agents.hpp"
#include "etsim/lifecycle.hpp"

namespace etsim {

namespace {

// Splits valid from rejected bids and returns valid ones ordered by
// (amount desc, holder id asc).
std::vector<Bid> rank_bids(std::vector<Bid>& bids, AuctionOutcome& out) {
  std::vector<Bid> valid;
  for (const auto& b : bids) {
    if (!std::isfinite(b.amount) || b.amount < 0.0) {
      out.rejected_bids.push_back(b);
    } else {
      valid.push_back(b);
    }
  }
  out.all_bids = valid;
  std::stable_sort(valid.begin(), valid.end(), [](const Bid& a, const Bid& b) {
    if (a.amount != b.amount) return a.amount > b.amount;
    return a.holder_id < b.holder_id;
  });
  return valid;
}

}  // namespace

AuctionOutcome run_fpa(std::vector<Bid> bids) {
  AuctionOutcome out;
  const auto ranked = rank_bids(bids, out);
  if (ranked.empty()) return out;
  out.winner_id = ranked.front().holder_id;
  out.clearing_price = ranked.front().amount;
  return out;
}

AuctionOutcome run_spa(std::vector<Bid> bids, Currency reserve) {
  AuctionOutcome out;
  const auto ranked = rank_bids(bids, out);
  if (ranked.empty() || ranked.front().amount < reserve) return out;
  out.winner_id = ranked.front().holder_id;
  const Currency second = ranked.size() > 1 ? ranked[1].amount : 0.0;
  out.clearing_price = std::max(second, reserve);
  return out;
}

Currency eip1559_update_price(Currency price, std::uint64_t outstanding, std::uint64_t target,
                              double adjust_factor) {
  const double t = static_cast<double>(target);
  const double delta = (static_cast<double>(outstanding) - t) / t;
  return std::max(kEip1559PriceFloor, price * (1.0 + delta / adjust_factor));
}

Currency amm_price(std::uint64_t excess, double q, double b) {
  if (!(q > 0.0)) throw ConfigError("amm_adjust_factor", "must be > 0");
  const double x = static_cast<double>(excess);
  // e^(x/q) * (e^(1/q) - 1), with expm1 for the small increment
  return std::exp(b + x / q) * std::expm1(1.0 / q);
}

double derive_b(Currency target_price, std::uint64_t target_amount) {
  if (!(target_price > 0.0)) throw ConfigError("target_price", "must be > 0");
  if (target_amount < 1) throw ConfigError("target_amount", "must be >= 1");
  return std::log(target_price) / static_cast<double>(target_amount);
}

double amm_b(const SimulationConfig& config) {
  return derive_b(config.initial_ticket_price, config.amm_target_amount);
}

std::vector<TradeRecord> auction_sell(Market& m, bool sold_for_current_slot) {
  std::vector<TradeRecord> out;
  const auto strategy = m.config.agent_bidding_strategy;
  while (!m.state.inventory.empty()) {
    const TicketId id = m.state.inventory.front();
    const TicketContext ctx = ticket_context(m, m.state.ticket(id), sold_for_current_slot);

    std::vector<Currency> values(m.holders.size());
    std::size_t active = 0;
    for (std::size_t i = 0; i < m.holders.size(); ++i) {
      values[i] = strategy_valuation(m.holders[i], strategy, m.config.mev_scale, ctx, m.rng);
      if (values[i] > 0.0 && m.holders[i].available_funds > 0.0) ++active;
    }

    std::vector<Bid> bids;
    for (std::size_t i = 0; i < m.holders.size(); ++i) {
      const auto& h = m.holders[i];
      const Currency amount = m.config.selling_mechanism == SellingMechanism::fpa
                                  ? bid_fpa(h, values[i], strategy, active)
                                  : bid_spa(h, values[i]);
      if (amount > 0.0) bids.push_back({h.id, amount});
    }

    const AuctionOutcome outcome = m.config.selling_mechanism == SellingMechanism::fpa
                                       ? run_fpa(std::move(bids))
                                       : run_spa(std::move(bids));
    if (!outcome.winner_id) break;
    out.push_back(record_primary_sale(m, id, *outcome.winner_id, outcome.clearing_price));
  }
  return out;
}

namespace {

// Context for whatever the protocol would hand over next, without minting.
TicketContext offered_context(const Market& m) {
  if (!m.state.inventory.empty()) {
    return ticket_context(m, m.state.ticket(m.state.inventory.front()));
  }
  Ticket prospective;
  prospective.issued_slot = m.state.slot;
  if (m.config.expiry_period) prospective.expiry_slot = m.state.slot + *m.config.expiry_period;
  return ticket_context(m, prospective);
}

std::vector<HolderId> shuffled_holders(Market& m) {
  std::vector<HolderId> order(m.holders.size());
  std::iota(order.begin(), order.end(), HolderId{1});
  m.rng.shuffle(order);
  return order;
}

}  // namespace

std::vector<TradeRecord> eip1559_sell(Market& m, std::uint64_t max_per_slot) {
  std::vector<TradeRecord> out;
  const Currency price = to_gwei_grid(m.state.quoted_price);
  for (HolderId hid : shuffled_holders(m)) {
    if (out.size() >= max_per_slot) break;
    const TicketHolder& h = holder_ref(m.holders, hid);
    const Currency value = strategy_valuation(h, m.config.agent_bidding_strategy,
                                              m.config.mev_scale, offered_context(m), m.rng);
    if (!quoted_decision(h, price, value)) continue;
    out.push_back(record_primary_sale(m, next_for_sale(m), hid, price));
  }
  return out;
}

std::vector<TradeRecord> amm_sell(Market& m, std::optional<std::uint64_t> limit) {
  std::vector<TradeRecord> out;
  const double q = m.config.amm_adjust_factor;
  const double b = amm_b(m.config);
  for (HolderId hid : shuffled_holders(m)) {
    while (!limit || out.size() < *limit) {
      const TicketHolder& h = holder_ref(m.holders, hid);
      const Currency price = to_gwei_grid(amm_price(m.state.excess_tickets_held, q, b));
      const Currency value = strategy_valuation(h, m.config.agent_bidding_strategy,
                                                m.config.mev_scale, offered_context(m), m.rng);
      if (!quoted_decision(h, price, value)) break;
      out.push_back(record_primary_sale(m, next_for_sale(m), hid, price));
      ++m.state.excess_tickets_held;
    }
  }
  m.state.quoted_price = amm_price(m.state.excess_tickets_held, q, b);
  return out;
}

}  // namespace etsim
