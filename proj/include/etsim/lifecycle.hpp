#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "etsim/agents.hpp"
#include "etsim/market.hpp"
#include "etsim/types.hpp"

namespace etsim {

/// Probability that an unassigned ticket is drawn before it expires:
/// 1 - (1 - X/Z)^(S/X), with X slots per assignment window, Z tickets in
/// circulation and S remaining validity slots. Throws ConfigError when
/// Z < X or X < 1.
double expected_value_factor(double slots_per_window, double tickets_in_circulation,
                             double remaining_slots);

/// Creates the initial unsold batch at slot 0. With expiry enabled ticket i
/// expires at slot i + expiry_period.
std::vector<TicketId> issue_initial(Market& market);

/// Mints one unsold ticket at the current slot and appends it to inventory.
TicketId mint_ticket(Market& market);

/// Next ticket the protocol offers: inventory front, or a freshly minted one.
TicketId next_for_sale(Market& market);

/// Transfers an inventory ticket to `buyer` at `price` and books it.
TradeRecord record_primary_sale(Market& market, TicketId id, HolderId buyer, Currency price);

/// Selects one held ticket uniformly at random and assigns it to
/// `target_slot`. Returns nothing when no ticket is eligible.
std::optional<TicketId> lottery_assign(Market& market, Slot target_slot);

/// Ensures every slot in [slot, slot + lookahead] has an assigned ticket
/// where one is available.
void fill_assignments(Market& market);

/// Redeems the ticket assigned to the current slot. Throws
/// InvariantViolation if the ticket is not assigned to this slot.
TradeRecord redeem(Market& market, TicketId id, const SlotEnvironment& env);

/// Expires every held or unsold ticket whose expiry slot has passed.
std::size_t expire_tickets(Market& market);

/// Refunds an unallocated ticket at purchase_price * (1 - reimbursement_factor).
/// The refunded ticket is retired and a fresh ticket takes its place at the
/// front of the protocol inventory.
TradeRecord refund(Market& market, HolderId holder, TicketId id);

/// Whether `holder` would rather take the refund than keep `id`.
bool wants_refund(const Market& market, const TicketHolder& holder, const Ticket& ticket);

/// Valuation context for a ticket at the current slot. `sold_for_current_slot`
/// marks a primary sale whose ticket proposes this very slot.
TicketContext ticket_context(const Market& market, const Ticket& ticket,
                             bool sold_for_current_slot = false);

/// Counts held/assigned tickets by full scan.
std::size_t count_outstanding(const MarketState& state);

}  // namespace etsim
