#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "etsim/io.hpp"
#include "helpers.hpp"

using namespace etsim;
using namespace etsim::test;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("etsim_io_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("presets load with the table values") {
    const auto c = load_config("simple-fpa", std::nullopt);
    CHECK(c.selling_mechanism == SellingMechanism::fpa);
    CHECK(c.max_tickets == 32);
    CHECK(c.expiry_period.has_value());
    CHECK_FALSE(c.secondary_market);
    CHECK(load_config("fixed-spa", std::nullopt).max_tickets == 1024);
    CHECK(load_config("flexible-amm", std::nullopt).amm_adjust_factor == 25);
    CHECK(load_config("flexible-1559", std::nullopt).eip1559_target == 40);
    CHECK(load_config("jit-spa", std::nullopt).jit_assignment);
    for (auto n : preset_names()) CHECK_NOTHROW(validate(preset(n)));
    CHECK_THROWS_AS(preset("nope"), ConfigError);
  }

  TEST_CASE("overrides merge onto presets") {
    const auto c = load_config("fixed-spa", std::nullopt, {"secondary_market=true"});
    CHECK(c.secondary_market);
    CHECK(c.max_tickets == 1024);
    const auto d = load_config("simple-fpa", std::nullopt,
                               {"MEV_scale=0.1", "price_vola=null", "selling_mechanism=SPA",
                                "agent_bidding_strategy=truthful", "expiry_period=null"});
    CHECK(d.mev_scale == 0.1);
    CHECK_FALSE(d.price_vola);
    CHECK(d.selling_mechanism == SellingMechanism::spa);
    CHECK_FALSE(d.expiry_period);
    const auto e = load_config("jit-spa", std::nullopt, {"price_vola={\"sigma\":0.3}"});
    CHECK(e.price_vola->sigma == 0.3);
    CHECK(e.price_vola->mu == 0.0);
  }

  TEST_CASE("configuration errors name the key") {
    auto field_of = [](auto&& f) -> std::string {
      try {
        f();
      } catch (const ConfigError& e) {
        return e.field();
      }
      return "<no error>";
    };
    CHECK(field_of([] { load_config("flexible-amm", std::nullopt, {"expiry_period=64"}); }) ==
          "reimbursement_factor");
    CHECK(field_of([] { load_config("simple-fpa", std::nullopt, {"bogus=1"}); }) == "bogus");
    CHECK(field_of([] { load_config("simple-fpa", std::nullopt, {"max_tickets=\"many\""}); }) ==
          "max_tickets");
    CHECK(field_of([] { load_config("simple-fpa", std::nullopt, {"max_tickets=-3"}); }) ==
          "max_tickets");
    CHECK(field_of([] { load_config("simple-fpa", std::nullopt, {"secondary_market=1"}); }) ==
          "secondary_market");
    CHECK(field_of([] { load_config("simple-fpa", std::nullopt, {"noequals"}); }) == "noequals");
    CHECK(field_of([] { load_config("simple-fpa", std::nullopt, {"selling_mechanism=DUTCH"}); }) ==
          "selling_mechanism");
    CHECK(field_of([] { load_config("simple-fpa", std::nullopt, {"number_of_ticket_holders=0"}); }) ==
          "number_of_ticket_holders");
  }

  TEST_CASE("config JSON round trip and file loading") {
    for (auto n : preset_names()) {
      const auto c = preset(n);
      CHECK(config_from_json(config_to_json(c)) == c);
    }
    const fs::path dir = scratch("cfg");
    fs::create_directories(dir);
    std::ofstream(dir / "c.json") << R"({"selling_mechanism": "AMM", "AMM_adjust_factor": 12,
      "agent_bidding_strategy": "quoted_threshold", "reimbursement_factor": 0.3})";
    const auto c = load_config(std::nullopt, dir / "c.json");
    CHECK(c.selling_mechanism == SellingMechanism::amm);
    CHECK(c.amm_adjust_factor == 12);
    CHECK(c.reimbursement_factor == 0.3);
    std::ofstream(dir / "bad.json") << R"({"selling_mechanism": "AMM", "typo_key": 1})";
    CHECK_THROWS_AS(load_config(std::nullopt, dir / "bad.json"), ConfigError);
    std::ofstream(dir / "broken.json") << "{not json";
    CHECK_THROWS_AS(load_config(std::nullopt, dir / "broken.json"), ConfigError);
  }

  TEST_CASE("export: schema, redemption rows and byte-identical re-export") {
    const auto r = short_run("simple-fpa", 1000, 42);
    const fs::path a = scratch("a"), b = scratch("b");
    export_run(r, a);
    export_run(r, b);
    for (auto f : {"trades.csv", "slots.csv", "summary.json"}) {
      CHECK(slurp(a / f) == slurp(b / f));
      CHECK(slurp(a / f).find('\r') == std::string::npos);
    }
    const std::string trades = slurp(a / "trades.csv");
    CHECK(trades.rfind("slot,venue,ticket_id,buyer_id,seller_id,price,mev_available,mev_extracted\n", 0) == 0);
    CHECK(slurp(a / "slots.csv").rfind("slot,quoted_price,outstanding,winner_id\n", 0) == 0);
    std::size_t redemptions = 0;
    for (std::size_t pos = 0; (pos = trades.find(",redemption,", pos)) != std::string::npos; ++pos) {
      ++redemptions;
    }
    CHECK(redemptions >= 1000);
  }

  TEST_CASE("metrics recomputed from the CSV export are exact") {
    for (auto n : preset_names()) {
      CAPTURE(n);
      const auto r = short_run(std::string(n), 400, 8);
      const fs::path dir = scratch("rt");
      export_run(r, dir);
      const auto log = read_trades_csv(dir / "trades.csv");
      CHECK(log == r.final_state.trade_log);
      const auto prices = read_slot_prices_csv(dir / "slots.csv");
      CHECK(prices == price_series(r.series));
      CHECK(compute_metrics(log, prices, r.config.slots_per_epoch) == r.metrics);
    }
  }

  TEST_CASE("the summary config echo reproduces the run") {
    const auto r = short_run("flexible-amm", 300, 77);
    const fs::path dir = scratch("echo");
    export_run(r, dir);
    const auto cfg = load_config(std::nullopt, dir / "summary.json");
    const auto again = run(cfg, cfg.seed);
    CHECK(again.final_state.trade_log == r.final_state.trade_log);
  }

  TEST_CASE("unwritable destinations and truncated files are reported") {
    const auto r = short_run("simple-fpa", 10, 1);
    const fs::path file = scratch("blocker");
    std::ofstream(file) << "x";
    CHECK_THROWS_AS(export_run(r, file / "sub"), std::runtime_error);
    const fs::path dir = scratch("trunc");
    fs::create_directories(dir);
    std::ofstream(dir / "trades.csv") << "slot,venue,ticket_id\n1,primary,0\n";
    CHECK_THROWS_WITH_AS(read_trades_csv(dir / "trades.csv"), doctest::Contains("buyer_id"),
                         std::runtime_error);
  }
}
