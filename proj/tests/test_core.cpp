#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace etsim;
using namespace etsim::test;

namespace {

void check_conservation(const RunResult& r) {
  const auto& st = r.final_state;
  Currency primary = 0.0, refunds = 0.0, paid = 0.0, refunded = 0.0, sec_paid = 0.0,
           sec_received = 0.0;
  for (const auto& t : st.trade_log) {
    if (t.venue == Venue::primary) primary += t.price;
    if (t.venue == Venue::refund) refunds += t.price;
  }
  for (const auto& h : r.holders) {
    paid += h.primary_paid;
    refunded += h.refunds_received;
    sec_paid += h.secondary_paid;
    sec_received += h.secondary_received;
    CHECK(h.accumulated_costs ==
          doctest::Approx(h.primary_paid + h.secondary_paid - h.refunds_received).epsilon(1e-12));
  }
  CHECK(std::abs((primary - refunds) - st.total_mev_captured) <= 1e-9);
  CHECK(std::abs((paid - refunded) - st.total_mev_captured) <= 1e-9);
  CHECK(std::abs(sec_paid - sec_received) <= 1e-9);
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("new_market for simple-fpa seeds 32 unsold tickets and 10 holders") {
    const Market m = new_market(preset("simple-fpa"), 7);
    CHECK(m.holders.size() == 10);
    CHECK(m.state.tickets.size() == 32);
    CHECK(m.state.inventory.size() == 32);
    CHECK(m.state.outstanding == 0);
    for (const auto& t : m.state.tickets) CHECK(t.state == TicketState::unsold);
    CHECK(m.environment.size() == preset("simple-fpa").timesteps);
  }

  TEST_CASE("zero holders is a configuration error naming the field") {
    SimulationConfig c = preset("fixed-spa");
    c.number_of_ticket_holders = 0;
    try {
      (void)new_market(c, 1);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "number_of_ticket_holders");
    }
  }

  TEST_CASE("replay determinism for every preset") {
    for (auto name : preset_names()) {
      CAPTURE(name);
      const auto a = short_run(std::string(name), 150, 11);
      const auto b = short_run(std::string(name), 150, 11);
      CHECK(a.final_state.trade_log == b.final_state.trade_log);
      CHECK(a.series == b.series);
      CHECK(a.metrics == b.metrics);
      REQUIRE(a.holders.size() == b.holders.size());
      for (std::size_t i = 0; i < a.holders.size(); ++i) {
        CHECK(a.holders[i].available_funds == b.holders[i].available_funds);
        CHECK(a.holders[i].tickets == b.holders[i].tickets);
      }
    }
  }

  TEST_CASE("conservation holds for every preset") {
    for (auto name : preset_names()) {
      CAPTURE(name);
      check_conservation(short_run(std::string(name), 300, 3));
    }
  }

  TEST_CASE("ledger closure: one primary, redemption and refund record per ticket at most") {
    for (auto name : preset_names()) {
      CAPTURE(name);
      const auto r = short_run(std::string(name), 300, 5);
      std::map<std::pair<TicketId, Venue>, int> seen;
      for (const auto& t : r.final_state.trade_log) {
        if (t.venue != Venue::secondary) CHECK(++seen[{t.ticket_id, t.venue}] == 1);
      }
    }
  }

  TEST_CASE("ticket ownership is unique and matches holder lists") {
    for (auto name : preset_names()) {
      CAPTURE(name);
      const auto r = short_run(std::string(name), 200, 9);
      std::set<TicketId> owned;
      for (const auto& h : r.holders) {
        for (TicketId id : h.tickets) {
          CHECK(owned.insert(id).second);
          const Ticket& t = r.final_state.ticket(id);
          CHECK(t.owner_id == h.id);
          CHECK(t.outstanding());
        }
      }
      for (const auto& t : r.final_state.tickets) {
        if (t.outstanding()) CHECK(owned.contains(t.id));
      }
      CHECK(owned.size() == r.final_state.outstanding);
    }
  }

  TEST_CASE("gwei grid rounding") {
    CHECK(to_gwei_grid(0.1234567894) == 0.123456789);
    CHECK(to_gwei_grid(0.1234567896) == 0.12345679);
    CHECK(to_gwei_grid(0.0) == 0.0);
  }

  TEST_CASE("holder_ref is 1-indexed and remove_ticket rejects unknown ids") {
    std::vector<TicketHolder> hs{make_holder(1), make_holder(2)};
    CHECK(holder_ref(hs, 2).id == 2);
    hs[0].add_ticket(4);
    hs[0].remove_ticket(4);
    CHECK(hs[0].tickets.empty());
    CHECK_THROWS_AS(hs[0].remove_ticket(4), InvariantViolation);
  }

  TEST_CASE("rng shuffle is a deterministic permutation") {
    Rng a(5), b(5);
    std::vector<int> x{1, 2, 3, 4, 5, 6, 7, 8}, y = x;
    a.shuffle(x);
    b.shuffle(y);
    CHECK(x == y);
    std::sort(x.begin(), x.end());
    CHECK(x == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
  }
}
