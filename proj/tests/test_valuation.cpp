#include "doctest.h"
#include "etsim/valuation.hpp"

using namespace etsim;
using namespace etsim::valuation;

TEST_SUITE("valuation") {
  TEST_CASE("perpetual ticket value") {
    CHECK(perpetual_ticket_value({0.05, 0.0, 0.0, 1}) == 0.05);
    CHECK(perpetual_ticket_value({0.05, 0.0, 0.0, 1000000}) == 0.05);
    CHECK(perpetual_ticket_value({0.05, 0.05, 1e-3, 10}) == 0.0);
    CHECK(perpetual_ticket_value({0.05, 0.0, 2.03732e-8, 1000000}) ==
          doctest::Approx(0.05 / 1.0203732).epsilon(1e-12));
    CHECK(perpetual_ticket_value({0.05, 0.0, 2.03732e-8, 1000000}) ==
          doctest::Approx(0.049002).epsilon(1e-5));
    CHECK_THROWS_AS(perpetual_ticket_value({0.05, 0.0, 0.1, 0}), ConfigError);
  }

  TEST_CASE("perpetual value is decreasing in n and d, increasing in mu") {
    const PerpetualParams base{0.05, 0.01, 1e-4, 100};
    const double v = perpetual_ticket_value(base);
    auto p = base;
    p.n = 200;
    CHECK(perpetual_ticket_value(p) < v);
    p = base;
    p.d = 2e-4;
    CHECK(perpetual_ticket_value(p) < v);
    p = base;
    p.mu_r = 0.06;
    CHECK(perpetual_ticket_value(p) > v);
  }

  TEST_CASE("slot discount rate") {
    CHECK(slot_discount_rate(0.055, 2628000) == doctest::Approx(2.03732e-8).epsilon(1e-5));
    CHECK(slot_discount_rate(0.0, 2628000) == 0.0);
    CHECK(slot_discount_rate(0.20, 2628000) == doctest::Approx(6.9374e-8).epsilon(1e-4));
    CHECK(std::pow(1 + slot_discount_rate(0.2, 1000), 1000) == doctest::Approx(1.2));
  }

  TEST_CASE("minimum tickets for capture") {
    const double d = 2.03732e-8;
    CHECK(static_cast<double>(min_tickets_for_capture(d, 0.05)) ==
          doctest::Approx(932597726).epsilon(1e-8));
    CHECK(static_cast<double>(min_tickets_for_capture(d, 0.5)) ==
          doctest::Approx(49084091).epsilon(1e-7));
    CHECK(static_cast<double>(min_tickets_for_capture(d, 0.9)) ==
          doctest::Approx(5453787).epsilon(1e-6));
    CHECK_THROWS_AS(min_tickets_for_capture(d, 0.0), ConfigError);
    CHECK_THROWS_AS(min_tickets_for_capture(d, 1.0), ConfigError);
  }

  TEST_CASE("NPV of all rewards") {
    CHECK(npv_all_rewards(175, 2.03732e-8) == doctest::Approx(8589715901.0).epsilon(1e-9));
    CHECK(npv_all_rewards(0, 0.01) == 0.0);
    const double d20 = slot_discount_rate(0.20, 2628000);
    CHECK(npv_all_rewards(175, d20) == doctest::Approx(175 / d20));
    CHECK_THROWS_AS(npv_all_rewards(175, 0.0), ConfigError);
  }

  TEST_CASE("lookahead probability share") {
    CHECK(allocated_probability_share(32, 1024) == 0.03125);
    CHECK(allocated_probability_share(0, 1024) == 0.0);
    CHECK(allocated_probability_share(2048, 1024) == 1.0);
  }

  TEST_CASE("n tickets together approach the NPV once n is large enough") {
    const double d = slot_discount_rate(0.055, 2628000);
    const double mu = 175;
    for (double p : {0.05, 0.5, 0.9}) {
      CAPTURE(p);
      const auto n = min_tickets_for_capture(d, p);
      const double total = static_cast<double>(n) * perpetual_ticket_value({mu, 0.0, d, n});
      const double npv = npv_all_rewards(mu, d);
      CHECK(std::abs(total - npv) / npv < p);
      // one ticket fewer is not enough
      const double fewer = static_cast<double>(n - 1) * perpetual_ticket_value({mu, 0.0, d, n - 1});
      CHECK(std::abs(fewer - npv) / npv >= p - 1e-9);
    }
  }
}
