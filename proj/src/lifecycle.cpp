#include "etsim/lifecycle.hpp"

#include <algorithm>
#include <cmath>

#include "etsim/agents.hpp"
#include "etsim/environment.hpp"

namespace etsim {

double expected_value_factor(double x, double z, double s) {
  if (!(x >= 1.0)) throw ConfigError("expected_value_factor", "X must be >= 1");
  if (z < x) throw ConfigError("expected_value_factor", "Z must be >= X");
  if (s < 0.0) throw ConfigError("expected_value_factor", "S must be >= 0");
  return 1.0 - std::pow(1.0 - x / z, s / x);
}

namespace {

Ticket make_ticket(Market& m, Slot issued, std::optional<Slot> expiry) {
  Ticket t;
  t.id = m.state.current_ticket_id++;
  t.state = TicketState::unsold;
  t.issued_slot = issued;
  t.expiry_slot = expiry;
  return t;
}

void retire_from_curve(Market& m) {
  if (m.config.selling_mechanism == SellingMechanism::amm && m.state.excess_tickets_held > 0) {
    --m.state.excess_tickets_held;
  }
}

}  // namespace

std::vector<TicketId> issue_initial(Market& m) {
  std::vector<TicketId> ids;
  ids.reserve(m.config.max_tickets);
  for (std::uint64_t i = 0; i < m.config.max_tickets; ++i) {
    std::optional<Slot> expiry;
    if (m.config.expiry_period) expiry = m.state.current_ticket_id + *m.config.expiry_period;
    Ticket t = make_ticket(m, m.state.slot, expiry);
    ids.push_back(t.id);
    m.state.inventory.push_back(t.id);
    m.state.tickets.push_back(std::move(t));
  }
  return ids;
}

TicketId mint_ticket(Market& m) {
  std::optional<Slot> expiry;
  if (m.config.expiry_period) expiry = m.state.slot + *m.config.expiry_period;
  Ticket t = make_ticket(m, m.state.slot, expiry);
  const TicketId id = t.id;
  m.state.tickets.push_back(std::move(t));
  m.state.inventory.push_back(id);
  return id;
}

TicketId next_for_sale(Market& m) {
  if (m.state.inventory.empty()) mint_ticket(m);
  return m.state.inventory.front();
}

TradeRecord record_primary_sale(Market& m, TicketId id, HolderId buyer, Currency price) {
  auto& inv = m.state.inventory;
  auto it = std::find(inv.begin(), inv.end(), id);
  if (it == inv.end()) throw InvariantViolation("ticket " + std::to_string(id) + " not for sale");
  inv.erase(it);

  price = to_gwei_grid(price);
  Ticket& t = m.state.ticket(id);
  TicketHolder& h = holder_ref(m.holders, buyer);
  t.owner_id = buyer;
  t.state = TicketState::held;
  t.purchase_price = price;
  h.add_ticket(id);
  h.available_funds -= price;
  h.primary_paid += price;
  h.accumulated_costs += price;
  m.state.total_mev_captured += price;
  ++m.state.outstanding;

  TradeRecord r;
  r.slot = m.state.slot;
  r.venue = Venue::primary;
  r.ticket_id = id;
  r.buyer_id = buyer;
  r.price = price;
  m.state.trade_log.push_back(r);
  return r;
}

std::optional<TicketId> lottery_assign(Market& m, Slot target_slot) {
  std::vector<TicketId> eligible;
  for (const auto& t : m.state.tickets) {
    if (t.state == TicketState::held) eligible.push_back(t.id);
  }
  if (eligible.empty()) return std::nullopt;
  const TicketId pick = eligible[m.rng.index(eligible.size())];
  Ticket& t = m.state.ticket(pick);
  t.state = TicketState::assigned;
  t.assigned_slot = target_slot;
  t.assigned_epoch = target_slot / m.config.slots_per_epoch;
  m.state.assignments[target_slot] = pick;
  return pick;
}

void fill_assignments(Market& m) {
  const Slot last = m.state.slot + m.config.lookahead();
  for (Slot s = m.state.slot; s <= last; ++s) {
    if (m.state.assignments.contains(s)) continue;
    if (!lottery_assign(m, s)) break;
  }
}

TradeRecord redeem(Market& m, TicketId id, const SlotEnvironment& env) {
  Ticket& t = m.state.ticket(id);
  if (t.state != TicketState::assigned || t.assigned_slot != m.state.slot || !t.owner_id) {
    throw InvariantViolation("ticket " + std::to_string(id) + " is not assigned to slot " +
                             std::to_string(m.state.slot) + " (state " +
                             std::string(to_string(t.state)) + ")");
  }
  TicketHolder& h = holder_ref(m.holders, *t.owner_id);
  const double adj = volatility_adjustment(env.volatility, m.expected_vola, h.vola_spec_factor);
  const Currency earned = to_gwei_grid(env.available_mev * h.mev_capture_rate * adj);

  t.state = TicketState::redeemed;
  t.redeemed_slot = m.state.slot;
  t.redeemed_epoch = m.state.epoch;
  h.remove_ticket(id);
  h.available_funds += earned;
  h.redemption_earnings += earned;
  h.accumulated_earnings += earned;
  m.state.total_mev_available += env.available_mev;
  --m.state.outstanding;
  m.state.assignments.erase(m.state.slot);
  retire_from_curve(m);

  TradeRecord r;
  r.slot = m.state.slot;
  r.venue = Venue::redemption;
  r.ticket_id = id;
  r.seller_id = h.id;
  r.price = 0.0;
  r.mev_available = env.available_mev;
  r.mev_extracted = earned;
  m.state.trade_log.push_back(r);
  return r;
}

std::size_t expire_tickets(Market& m) {
  if (!m.config.expiry_period) return 0;
  std::size_t n = 0;
  for (auto& t : m.state.tickets) {
    if (t.state != TicketState::held && t.state != TicketState::unsold) continue;
    if (!t.expiry_slot || *t.expiry_slot >= m.state.slot) continue;
    if (t.state == TicketState::held) {
      holder_ref(m.holders, *t.owner_id).remove_ticket(t.id);
      --m.state.outstanding;
      retire_from_curve(m);
    } else {
      auto& inv = m.state.inventory;
      inv.erase(std::remove(inv.begin(), inv.end(), t.id), inv.end());
    }
    t.state = TicketState::expired;
    ++n;
  }
  return n;
}

TradeRecord refund(Market& m, HolderId holder, TicketId id) {
  if (!m.config.reimbursement_factor) {
    throw ConfigError("reimbursement_factor", "refunds are disabled");
  }
  Ticket& t = m.state.ticket(id);
  if (t.state != TicketState::held || t.owner_id != holder) {
    throw ConfigError("refund", "only unallocated tickets held by the caller can be refunded");
  }
  const Currency amount = to_gwei_grid(t.purchase_price * (1.0 - *m.config.reimbursement_factor));
  TicketHolder& h = holder_ref(m.holders, holder);
  h.remove_ticket(id);
  h.available_funds += amount;
  h.refunds_received += amount;
  h.accumulated_costs -= amount;
  t.state = TicketState::refunded;
  m.state.total_mev_captured -= amount;
  --m.state.outstanding;
  retire_from_curve(m);

  // The right to propose goes back on sale ahead of newly minted supply.
  Ticket replacement = make_ticket(m, m.state.slot, std::nullopt);
  m.state.inventory.insert(m.state.inventory.begin(), replacement.id);
  m.state.tickets.push_back(std::move(replacement));

  TradeRecord r;
  r.slot = m.state.slot;
  r.venue = Venue::refund;
  r.ticket_id = id;
  r.seller_id = holder;
  r.price = amount;
  m.state.trade_log.push_back(r);
  return r;
}

TicketContext ticket_context(const Market& m, const Ticket& t, bool sold_for_current_slot) {
  TicketContext ctx;
  ctx.expected_volatility = m.expected_vola;
  const bool proposes_now =
      sold_for_current_slot ||
      (t.state == TicketState::assigned && t.assigned_slot == m.state.slot);
  if (proposes_now) {
    if (m.config.price_vola && m.state.slot >= 1 && m.state.slot <= m.environment.size()) {
      ctx.volatility = m.env(m.state.slot).volatility;
    }
    return ctx;
  }
  if (t.state == TicketState::assigned || !t.expiry_slot) return ctx;

  const Slot now = m.state.slot;
  const double remaining = *t.expiry_slot >= now ? static_cast<double>(*t.expiry_slot - now) : 0.0;
  const double circulation =
      m.config.fixed_supply()
          ? static_cast<double>(m.config.max_tickets)
          : static_cast<double>(std::max<std::size_t>(m.state.outstanding, 1));
  const double window = std::min(static_cast<double>(m.config.slots_per_epoch), circulation);
  ctx.expiry_discount = expected_value_factor(window, circulation, remaining);
  return ctx;
}

bool wants_refund(const Market& m, const TicketHolder& h, const Ticket& t) {
  if (!m.config.reimbursement_factor || t.state != TicketState::held) return false;
  const Currency amount = t.purchase_price * (1.0 - *m.config.reimbursement_factor);
  return amount > intrinsic_valuation(h, m.config.mev_scale, ticket_context(m, t));
}

std::size_t count_outstanding(const MarketState& s) {
  return static_cast<std::size_t>(
      std::count_if(s.tickets.begin(), s.tickets.end(), [](const Ticket& t) { return t.outstanding(); }));
}

}  // namespace etsim
