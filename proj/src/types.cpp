#include "etsim/types.hpp"

#include <algorithm>
#include <cmath>

namespace etsim {

Currency to_gwei_grid(Currency amount) {
  return std::round(amount * 1e9) / 1e9;
}

std::string_view to_string(TicketState s) {
  switch (s) {
    case TicketState::unsold: return "unsold";
    case TicketState::held: return "held";
    case TicketState::assigned: return "assigned";
    case TicketState::redeemed: return "redeemed";
    case TicketState::expired: return "expired";
    case TicketState::refunded: return "refunded";
  }
  return "unknown";
}

std::string_view to_string(Tier t) {
  switch (t) {
    case Tier::top: return "top";
    case Tier::middle: return "middle";
    case Tier::tail: return "tail";
  }
  return "unknown";
}

std::string_view to_string(Venue v) {
  switch (v) {
    case Venue::primary: return "primary";
    case Venue::secondary: return "secondary";
    case Venue::refund: return "refund";
    case Venue::redemption: return "redemption";
  }
  return "unknown";
}

std::optional<Venue> venue_from_string(std::string_view s) {
  if (s == "primary") return Venue::primary;
  if (s == "secondary") return Venue::secondary;
  if (s == "refund") return Venue::refund;
  if (s == "redemption") return Venue::redemption;
  return std::nullopt;
}

void TicketHolder::add_ticket(TicketId id) {
  tickets.push_back(id);
}

void TicketHolder::remove_ticket(TicketId id) {
  auto it = std::find(tickets.begin(), tickets.end(), id);
  if (it == tickets.end()) {
    throw InvariantViolation("holder " + std::to_string(this->id) + " does not own ticket " +
                             std::to_string(id));
  }
  tickets.erase(it);
}

Ticket& MarketState::ticket(TicketId id) {
  if (id >= tickets.size()) throw InvariantViolation("unknown ticket " + std::to_string(id));
  return tickets[id];
}

const Ticket& MarketState::ticket(TicketId id) const {
  if (id >= tickets.size()) throw InvariantViolation("unknown ticket " + std::to_string(id));
  return tickets[id];
}

TicketHolder& holder_ref(std::vector<TicketHolder>& holders, HolderId id) {
  if (id == 0 || id > holders.size()) {
    throw InvariantViolation("unknown holder " + std::to_string(id));
  }
  return holders[id - 1];
}

const TicketHolder& holder_ref(const std::vector<TicketHolder>& holders, HolderId id) {
  if (id == 0 || id > holders.size()) {
    throw InvariantViolation("unknown holder " + std::to_string(id));
  }
  return holders[id - 1];
}

}  // namespace etsim
