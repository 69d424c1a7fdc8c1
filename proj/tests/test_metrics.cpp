#include <numbers>

#include "doctest.h"
#include "etsim/metrics.hpp"
#include "helpers.hpp"

using namespace etsim;
using namespace etsim::test;

namespace {

TradeRecord redemption(Slot slot, HolderId who, double mev) {
  TradeRecord r;
  r.slot = slot;
  r.venue = Venue::redemption;
  r.seller_id = who;
  r.mev_available = mev;
  r.mev_extracted = mev;
  return r;
}

TradeRecord primary(Slot slot, TicketId id, double price) {
  TradeRecord r;
  r.slot = slot;
  r.venue = Venue::primary;
  r.ticket_id = id;
  r.buyer_id = 1;
  r.price = price;
  return r;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("market shares") {
    std::vector<TradeRecord> log{redemption(1, 4, 0.1), redemption(2, 4, 0.1)};
    auto s = market_shares(log);
    REQUIRE(s);
    CHECK(s->size() == 1);
    CHECK(s->at(4) == 1.0);
    log = {redemption(1, 1, 0), redemption(2, 1, 0), redemption(3, 2, 0), redemption(4, 1, 0),
           primary(1, 0, 0.3)};
    s = market_shares(log);
    CHECK(s->at(1) == 0.75);
    CHECK(s->at(2) == 0.25);
    CHECK_FALSE(market_shares(std::vector<TradeRecord>{primary(1, 0, 1)}));
  }

  TEST_CASE("nakamoto coefficient") {
    CHECK(nakamoto(std::vector<double>{0.6, 0.2, 0.2}) == 1);
    CHECK(nakamoto(std::vector<double>{0.2, 0.2, 0.2, 0.2, 0.2}) == 3);
    CHECK(nakamoto(std::vector<double>{1.0}) == 1);
    CHECK(nakamoto(std::vector<double>{0.51, 0.49}) == 1);
    CHECK(nakamoto(std::vector<double>{0.5, 0.5}) == 2);
  }

  TEST_CASE("nakamoto weakly decreases as the largest share grows") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> s(2 + rng.index(8));
      double total = 0.0;
      for (auto& x : s) total += (x = rng.uniform(0.01, 1));
      for (auto& x : s) x /= total;
      std::size_t prev = nakamoto(s);
      const auto big = std::max_element(s.begin(), s.end()) - s.begin();
      for (int k = 0; k < 20; ++k) {
        // move a slice from a random other holder to the largest
        const auto j = rng.index(s.size());
        if (static_cast<long>(j) == big) continue;
        const double d = s[j] * 0.5;
        s[j] -= d;
        s[big] += d;
        const std::size_t now = nakamoto(s);
        CHECK(now <= prev);
        prev = now;
      }
    }
  }

  TEST_CASE("HHI") {
    CHECK(hhi(std::vector<double>{1.0}) == 10000);
    CHECK(hhi(std::vector<double>{0.5, 0.3, 0.2}) == doctest::Approx(3800));
    for (int n = 1; n <= 20; ++n) {
      CHECK(hhi(std::vector<double>(n, 1.0 / n)) == doctest::Approx(10000.0 / n));
    }
  }

  TEST_CASE("HHI strictly decreases under mean-preserving equalization") {
    Rng rng(8);
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<double> s(2 + rng.index(6));
      double total = 0.0;
      for (auto& x : s) total += (x = rng.uniform(0.01, 1));
      for (auto& x : s) x /= total;
      const auto i = rng.index(s.size());
      auto j = rng.index(s.size());
      if (i == j || s[i] == s[j]) continue;
      auto t = s;
      const double mid = 0.5 * (s[i] + s[j]);
      const double lambda = rng.uniform(0.01, 1.0);
      t[i] = s[i] + lambda * (mid - s[i]);
      t[j] = s[j] + lambda * (mid - s[j]);
      CHECK(hhi(t) < hhi(s));
    }
  }

  TEST_CASE("MEV share") {
    CHECK(mev_share(50, 100) == 0.5);
    CHECK(mev_share(0, 100) == 0.0);
    CHECK_FALSE(mev_share(10, 0));
  }

  TEST_CASE("Garman-Klass measure") {
    std::vector<PricePoint> flat;
    for (Slot s = 0; s < 96; ++s) flat.push_back({s, 0.04});
    CHECK(*gk_measure(flat, 32) == 0.0);
    // one epoch with O = C = 1, H = e, L = 1
    const std::vector<PricePoint> one{{32, 1.0}, {33, std::numbers::e}, {34, 1.0}};
    CHECK(*gk_measure(one, 32) == doctest::Approx(0.5));
    // two epochs average
    std::vector<PricePoint> two = one;
    two.push_back({64, 2.0});
    two.push_back({65, 2.0});
    CHECK(*gk_measure(two, 32) == doctest::Approx(0.25));
    CHECK_FALSE(gk_measure(std::vector<PricePoint>{}, 32));
  }

  TEST_CASE("Garman-Klass oracle on random OHLC epochs") {
    Rng rng(6);
    std::vector<PricePoint> pts;
    double expect = 0.0;
    const int epochs = 20;
    for (int e = 0; e < epochs; ++e) {
      std::vector<double> p(5);
      for (auto& x : p) x = rng.uniform(0.5, 2.0);
      for (int i = 0; i < 5; ++i) pts.push_back({static_cast<Slot>(e * 32 + i * 3), p[i]});
      const double h = *std::max_element(p.begin(), p.end());
      const double l = *std::min_element(p.begin(), p.end());
      expect += 0.5 * std::pow(std::log(h / l), 2) -
                (2 * std::log(2.0) - 1) * std::pow(std::log(p[4] / p[0]), 2);
    }
    CHECK(*gk_measure(pts, 32) == doctest::Approx(expect / epochs).epsilon(1e-12));
  }

  TEST_CASE("delta variance") {
    CHECK(*delta_variance(std::vector<double>{3, 3, 3, 3}) == 0.0);
    CHECK(*delta_variance(std::vector<double>{1, 2, 3, 4, 5}) == 0.0);
    CHECK(*delta_variance(std::vector<double>{1, 2, 1, 2}) == doctest::Approx(8.0 / 9.0));
    CHECK_FALSE(delta_variance(std::vector<double>{1, 2}));
  }

  TEST_CASE("GK and delta variance ignore appended trade-free epochs") {
    const auto r = short_run("jit-spa", 256, 3);
    const auto prices = price_series(r.series);
    auto log = r.final_state.trade_log;
    auto extended = prices;
    extended.resize(prices.size() + 5 * 32);  // empty slots
    const auto a = compute_metrics(log, prices, 32);
    const auto b = compute_metrics(log, extended, 32);
    CHECK(a.gk_measure == b.gk_measure);
    CHECK(a.delta_variance == b.delta_variance);
    CHECK(a == b);
  }

  TEST_CASE("combined MEV share counts resale premia over cost basis") {
    std::vector<TradeRecord> log{primary(1, 7, 0.02), redemption(2, 1, 0.1)};
    TradeRecord sec;
    sec.slot = 1;
    sec.venue = Venue::secondary;
    sec.ticket_id = 7;
    sec.price = 0.05;
    log.insert(log.begin() + 1, sec);
    const auto m = compute_metrics(log, {}, 32);
    CHECK(*m.mev_share_primary == doctest::Approx(0.2));
    CHECK(*m.mev_share_combined == doctest::Approx(0.5));
  }

  TEST_CASE("no redemptions leaves concentration metrics undefined") {
    const auto m = compute_metrics(std::vector<TradeRecord>{}, {}, 32);
    CHECK_FALSE(m.largest_market_share);
    CHECK_FALSE(m.nakamoto);
    CHECK_FALSE(m.hhi);
    CHECK_FALSE(m.mev_share_primary);
    CHECK_FALSE(m.gk_measure);
    CHECK_FALSE(m.delta_variance);
  }
}
