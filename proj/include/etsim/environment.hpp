#pragma once

#include <optional>
#include <vector>

#include "etsim/config.hpp"
#include "etsim/types.hpp"

namespace etsim {

/// One Exponential draw with mean `mev_scale`.
Currency draw_mev(Currency mev_scale, Rng& rng);

/// One LogNormal(mu, sigma) draw, or exactly 1.0 when disabled. Consumes no
/// randomness when disabled.
double draw_volatility(const std::optional<VolatilityParams>& price_vola, Rng& rng);

/// Analytic log-normal mean exp(mu + sigma^2 / 2).
double expected_volatility(const VolatilityParams& price_vola);

/// Benchmark used by holders; 1.0 when volatility is disabled.
double expected_volatility(const std::optional<VolatilityParams>& price_vola);

/// Pre-draws the environment for slots 1..timesteps. All MEV draws are
/// taken before any volatility draw, so the MEV path does not depend on
/// whether volatility is enabled.
std::vector<SlotEnvironment> draw_environment(const SimulationConfig& config, Rng& rng);

}  // namespace etsim
