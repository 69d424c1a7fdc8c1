#pragma once

#include <string_view>
#include <vector>

#include "etsim/config.hpp"

namespace etsim {

/// The six mechanism designs of the evaluation table. Ticket counts follow the
/// table; they can be lowered with overrides for quick runs.
SimulationConfig preset(std::string_view name);

const std::vector<std::string_view>& preset_names();

}  // namespace etsim
