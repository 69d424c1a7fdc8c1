#include "etsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <thread>

#include "etsim/agents.hpp"
#include "etsim/lifecycle.hpp"
#include "etsim/mechanisms.hpp"
#include "etsim/secondary_market.hpp"

namespace etsim {

namespace {

void initial_quoted_sale(Market& m) {
  const Currency price = to_gwei_grid(m.state.quoted_price);
  std::vector<HolderId> order(m.holders.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<HolderId>(i + 1);
  m.rng.shuffle(order);
  bool sold = true;
  while (sold && !m.state.inventory.empty()) {
    sold = false;
    for (HolderId hid : order) {
      if (m.state.inventory.empty()) break;
      const TicketHolder& h = holder_ref(m.holders, hid);
      const TicketId id = m.state.inventory.front();
      const Currency value = strategy_valuation(h, m.config.agent_bidding_strategy,
                                                m.config.mev_scale,
                                                ticket_context(m, m.state.ticket(id)), m.rng);
      if (!quoted_decision(h, price, value)) continue;
      record_primary_sale(m, id, hid, price);
      sold = true;
    }
  }
}

void process_refunds(Market& m) {
  if (!m.config.refundable()) return;
  for (auto& h : m.holders) {
    for (TicketId id : h.tickets) {
      if (wants_refund(m, h, m.state.ticket(id))) {
        refund(m, h.id, id);
        break;
      }
    }
  }
}

void top_up_fixed_supply(Market& m) {
  const auto& st = m.state;
  const std::size_t due =
      (!m.config.jit_assignment && st.assignments.contains(st.slot)) ? 1 : 0;
  std::size_t circulating = st.outstanding - due + st.inventory.size();
  while (circulating < m.config.max_tickets) {
    mint_ticket(m);
    ++circulating;
  }
}

void check_invariants(const Market& m) {
  const auto& st = m.state;
  if (st.epoch != st.slot / m.config.slots_per_epoch) {
    throw InvariantViolation("epoch out of sync with slot");
  }
  const std::size_t scanned = count_outstanding(st);
  if (scanned != st.outstanding) {
    throw InvariantViolation("outstanding counter " + std::to_string(st.outstanding) +
                             " != scanned " + std::to_string(scanned));
  }
  for (const auto& h : m.holders) {
    if (h.available_funds < -1e-9) {
      throw InvariantViolation("holder " + std::to_string(h.id) + " has negative funds");
    }
  }
  if (st.total_mev_captured < -1e-9) throw InvariantViolation("negative protocol revenue");
}

std::size_t circulating(const MarketState& st) {
  return static_cast<std::size_t>(std::count_if(
      st.tickets.begin(), st.tickets.end(), [](const Ticket& t) { return !t.terminal(); }));
}

}  // namespace

void allocate_initial(Market& m) {
  switch (m.config.selling_mechanism) {
    case SellingMechanism::fpa:
    case SellingMechanism::spa:
      auction_sell(m);
      break;
    case SellingMechanism::eip1559:
      initial_quoted_sale(m);
      break;
    case SellingMechanism::amm:
      amm_sell(m, m.config.max_tickets);
      break;
  }
  check_invariants(m);
}

SlotRecord step(Market& m) {
  auto& st = m.state;
  const auto& cfg = m.config;

  // 1. market meta data
  ++st.slot;
  st.epoch = st.slot / cfg.slots_per_epoch;
  const SlotEnvironment& env = m.env(st.slot);
  expire_tickets(m);
  if (!cfg.jit_assignment) fill_assignments(m);
  if (cfg.fixed_supply()) top_up_fixed_supply(m);

  // 2. primary market
  process_refunds(m);
  SlotRecord rec;
  rec.slot = st.slot;
  rec.mev = env.available_mev;
  rec.volatility = env.volatility;
  switch (cfg.selling_mechanism) {
    case SellingMechanism::fpa:
    case SellingMechanism::spa: {
      const auto trades = auction_sell(m, cfg.jit_assignment);
      if (!trades.empty()) rec.price = trades.back().price;
      break;
    }
    case SellingMechanism::eip1559:
      rec.price = to_gwei_grid(st.quoted_price);
      eip1559_sell(m, cfg.eip1559_max_tickets);
      break;
    case SellingMechanism::amm:
      rec.price = to_gwei_grid(st.quoted_price);
      amm_sell(m);
      break;
  }
  rec.outstanding_after_sale = st.outstanding;
  if (cfg.jit_assignment) fill_assignments(m);

  // 3. secondary market
  run_secondary_round(m);

  // 4. redemption
  if (const auto it = st.assignments.find(st.slot); it != st.assignments.end()) {
    const TradeRecord r = redeem(m, it->second, env);
    rec.winner_id = r.seller_id;
  } else {
    ++st.unfilled_slots;
  }
  if (cfg.selling_mechanism == SellingMechanism::eip1559) {
    st.quoted_price = eip1559_update_price(st.quoted_price, st.outstanding, cfg.eip1559_target,
                                           cfg.eip1559_adjust_factor);
  }

  rec.outstanding = st.outstanding;
  rec.circulating = circulating(st);
  check_invariants(m);
  return rec;
}

std::vector<std::optional<Currency>> price_series(const std::vector<SlotRecord>& series) {
  std::vector<std::optional<Currency>> out;
  out.reserve(series.size());
  for (const auto& r : series) out.push_back(r.price);
  return out;
}

RunResult run(const SimulationConfig& config, std::uint64_t seed) {
  Market m = new_market(config, seed);
  RunResult result;
  result.config = config;
  result.seed = seed;
  try {
    allocate_initial(m);
    result.series.reserve(config.timesteps);
    for (std::uint64_t t = 0; t < config.timesteps; ++t) result.series.push_back(step(m));
  } catch (const InvariantViolation& e) {
    std::cerr << "run aborted (preset '" << config.preset << "', seed " << seed << ", slot "
              << m.state.slot << "): " << e.what() << '\n';
    throw;
  }
  const auto prices = price_series(result.series);
  result.metrics = compute_metrics(m.state.trade_log, prices, config.slots_per_epoch);
  result.final_state = std::move(m.state);
  result.holders = std::move(m.holders);
  return result;
}

Aggregate aggregate_metrics(const std::vector<RunMetrics>& metrics) {
  using Field = std::optional<double> RunMetrics::*;
  const std::pair<const char*, Field> fields[] = {
      {"largest_market_share", &RunMetrics::largest_market_share},
      {"nakamoto", &RunMetrics::nakamoto},
      {"hhi", &RunMetrics::hhi},
      {"mev_share_primary", &RunMetrics::mev_share_primary},
      {"mev_share_combined", &RunMetrics::mev_share_combined},
      {"gk_measure", &RunMetrics::gk_measure},
      {"delta_variance", &RunMetrics::delta_variance},
  };
  Aggregate agg;
  for (const auto& [name, field] : fields) {
    std::vector<double> v;
    for (const auto& m : metrics) {
      if (m.*field) v.push_back(*(m.*field));
    }
    MetricStats s;
    s.count = v.size();
    if (!v.empty()) {
      double sum = 0.0;
      for (double x : v) sum += x;
      s.mean = sum / static_cast<double>(v.size());
      if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
      }
    }
    agg[name] = s;
  }
  return agg;
}

BatchResult run_batch(const SimulationConfig& config, bool parallel) {
  validate(config);
  BatchResult out;
  out.runs.resize(config.runs);

  auto do_run = [&](std::size_t i) {
    out.runs[i] = run(config, config.seed + i);
    out.runs[i].run_index = i;
  };

  const std::size_t workers =
      parallel ? std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), config.runs)
               : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < config.runs; ++i) do_run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < config.runs && !failed; i = next++) {
          try {
            do_run(i);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<RunMetrics> metrics;
  for (const auto& r : out.runs) metrics.push_back(r.metrics);
  out.aggregate = aggregate_metrics(metrics);
  return out;
}

}  // namespace etsim
