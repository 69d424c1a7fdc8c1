#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace etsim {

// Abstract ETH amount.
using Currency = double;
using Slot = std::uint64_t;
using Epoch = std::uint64_t;
using HolderId = std::uint32_t;
using TicketId = std::uint64_t;

// Traded amounts are kept on a 1e-9 (gwei) grid so that exported
// fixed-point values read back to the identical double.
Currency to_gwei_grid(Currency amount);

/// Raised for any invalid configuration or parameter. `field()` names the
/// offending key.
class ConfigError : public std::invalid_argument {
public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// An internal consistency check failed; the current run is aborted.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

enum class TicketState { unsold, held, assigned, redeemed, expired, refunded };
std::string_view to_string(TicketState s);

struct Ticket {
  TicketId id{0};
  std::optional<HolderId> owner_id;  // empty while owned by the protocol
  TicketState state{TicketState::unsold};
  Slot issued_slot{0};
  std::optional<Slot> expiry_slot;
  std::optional<Slot> assigned_slot;
  std::optional<Epoch> assigned_epoch;
  std::optional<Slot> redeemed_slot;
  std::optional<Epoch> redeemed_epoch;
  Currency purchase_price{0.0};

  bool terminal() const noexcept {
    return state == TicketState::redeemed || state == TicketState::expired ||
           state == TicketState::refunded;
  }
  bool outstanding() const noexcept {
    return state == TicketState::held || state == TicketState::assigned;
  }
};

enum class Tier { top, middle, tail };
std::string_view to_string(Tier t);

struct TicketHolder {
  HolderId id{0};
  Tier tier{Tier::tail};
  Currency available_funds{0.0};
  double mev_capture_rate{1.0};
  double aggressiveness{0.0};
  double vola_spec_factor{1.0};
  std::vector<TicketId> tickets;
  Currency accumulated_earnings{0.0};
  Currency accumulated_costs{0.0};

  // Ledger breakdown behind the two accumulators.
  Currency primary_paid{0.0};
  Currency secondary_paid{0.0};
  Currency secondary_received{0.0};
  Currency refunds_received{0.0};
  Currency redemption_earnings{0.0};

  void add_ticket(TicketId id);
  void remove_ticket(TicketId id);
};

struct SlotEnvironment {
  Slot slot{0};
  Currency available_mev{0.0};
  double volatility{1.0};
};

enum class Venue { primary, secondary, refund, redemption };
std::string_view to_string(Venue v);
std::optional<Venue> venue_from_string(std::string_view s);

/// One ledger entry. Primary sales have no seller (the protocol sells).
/// Redemptions and refunds carry the surrendering holder in `seller_id`.
struct TradeRecord {
  Slot slot{0};
  Venue venue{Venue::primary};
  TicketId ticket_id{0};
  std::optional<HolderId> buyer_id;
  std::optional<HolderId> seller_id;
  Currency price{0.0};
  std::optional<Currency> mev_available;
  std::optional<Currency> mev_extracted;

  friend bool operator==(const TradeRecord&, const TradeRecord&) = default;
};

struct MarketState {
  Slot slot{0};
  Epoch epoch{0};
  TicketId current_ticket_id{0};
  std::size_t outstanding{0};
  Currency quoted_price{0.0};
  std::uint64_t excess_tickets_held{0};
  Currency total_mev_captured{0.0};
  Currency total_mev_available{0.0};
  std::vector<TradeRecord> trade_log;

  // Every ticket ever issued, indexed by id.
  std::vector<Ticket> tickets;
  // Unsold protocol inventory, offered front to back.
  std::vector<TicketId> inventory;
  // slot -> ticket selected to propose in that slot
  std::map<Slot, TicketId> assignments;
  std::uint64_t unfilled_slots{0};

  Ticket& ticket(TicketId id);
  const Ticket& ticket(TicketId id) const;
};

/// Holder ids are 1-indexed; `holders[id - 1]` is holder `id`.
TicketHolder& holder_ref(std::vector<TicketHolder>& holders, HolderId id);
const TicketHolder& holder_ref(const std::vector<TicketHolder>& holders, HolderId id);

/// Single random stream for a run. All draws go through here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal(double mean, double sd) {
    return std::normal_distribution<double>(mean, sd)(engine_);
  }
  double exponential(double mean) {
    return std::exponential_distribution<double>(1.0 / mean)(engine_);
  }
  double lognormal(double mu, double sigma) {
    return std::lognormal_distribution<double>(mu, sigma)(engine_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

  std::mt19937_64& engine() noexcept { return engine_; }

private:
  std::mt19937_64 engine_;
};

}  // namespace etsim
