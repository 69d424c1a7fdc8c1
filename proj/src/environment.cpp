#include "etsim/environment.hpp"

#include <cmath>

namespace etsim {

Currency draw_mev(Currency mev_scale, Rng& rng) {
  if (!(mev_scale > 0.0) || !std::isfinite(mev_scale)) {
    throw ConfigError("mev_scale", "must be > 0");
  }
  return rng.exponential(mev_scale);
}

double draw_volatility(const std::optional<VolatilityParams>& price_vola, Rng& rng) {
  if (!price_vola) return 1.0;
  if (price_vola->sigma < 0.0) throw ConfigError("price_vola", "sigma must be >= 0");
  if (price_vola->sigma == 0.0) return std::exp(price_vola->mu);
  return rng.lognormal(price_vola->mu, price_vola->sigma);
}

double expected_volatility(const VolatilityParams& v) {
  return std::exp(v.mu + 0.5 * v.sigma * v.sigma);
}

double expected_volatility(const std::optional<VolatilityParams>& v) {
  return v ? expected_volatility(*v) : 1.0;
}

std::vector<SlotEnvironment> draw_environment(const SimulationConfig& config, Rng& rng) {
  std::vector<SlotEnvironment> env(config.timesteps);
  for (std::size_t i = 0; i < env.size(); ++i) {
    env[i].slot = i + 1;
    env[i].available_mev = to_gwei_grid(draw_mev(config.mev_scale, rng));
  }
  for (auto& e : env) e.volatility = draw_volatility(config.price_vola, rng);
  return env;
}

}  // namespace etsim
