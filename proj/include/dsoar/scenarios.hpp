#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsoar/sim.hpp"

namespace dsoar {

/// The built-in experiment registry: gliding cases 1-5 for both controller
/// structures, the two benchmark loops, and the still-air drag baseline.
/// Names: case1-esc1 .. case5-esc2, toy-classic, toy-augmented, baseline-still.
const std::vector<Scenario>& builtin_scenarios();

/// Registry lookup by exact name.
std::optional<Scenario> find_scenario(const std::string& name);

/// The augmented-loop design used by the toy tracking benchmark:
/// F_i = (s-1)/(s^2+3s+2), F_0 = 1/(s+1), block1 = s/(s+5),
/// block2 = 50(s-4)/(s-0.01), omega = 5, a = 0.05, phase 0.8 folded into the
/// engine's b sin(omega t - phi_phase) convention.
EscAugmentedDesign toy_augmented_design();

}  // namespace dsoar
