#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dsoar/esc_augmented.hpp"
#include "dsoar/esc_classic.hpp"
#include "dsoar/flight.hpp"
#include "dsoar/lti.hpp"
#include "dsoar/wind.hpp"

namespace dsoar {

/// Thrown (internally converted to an aborted record) when the integrated
/// state stops being finite.
struct NonFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Multiplicative measurement noise: J_measured = J_clean * (1 + eta) with
/// eta ~ uniform(-relative_amplitude, +relative_amplitude), piecewise
/// constant over hold_interval, drawn from a SplitMix64 stream so records
/// are reproducible across platforms.
struct DisturbanceConfig {
    double relative_amplitude = 0.05;
    double hold_interval = 0.0;  // seconds; 0 means one draw per integration step
    std::uint64_t seed = 0;
};

/// SplitMix64 mixer; the portable PRNG behind the disturbance stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Which performance index the controller measures on the gliding plant.
enum class DsObjective {
    EnergyGainRate,  // J1: wind-harvesting term of the specific-energy rate
    TotalEnergy      // J2: specific total energy z + V^2/2g
};

/// The 3-DOF gliding plant with a fixed lift coefficient; bank angle is the
/// steered parameter.
struct DynamicSoaringPlant {
    VehicleParams vehicle = VehicleParams::albatross();
    WindModel wind = StillAir{};
    double lift_coefficient = 1.5;
    DsObjective objective = DsObjective::TotalEnergy;
};

/// Two-state benchmark plant x1dot = -x1 + x2, x2dot = x2 + u with inner
/// feedback u = -x1 - 4 x2 + theta, measured through the quartic objective
/// J(y) = -y^4 + (8/15) y^3 + (5/6) y^2 + 10 at y = 4 x1 (the equilibrium
/// map sends theta to y = theta). Global maximum 10.41 at theta = 0.88.
struct ToyClassicPlant {};

/// Tracking benchmark: input dynamics F_i, time-varying quadratic objective
/// J = J*(t) + (theta - theta*(t))^2 with theta*(t) = 0.01 e^{0.01 t} and a
/// 0.01 step in J* at t = 10 s, measured through output dynamics F_0.
struct ToyAugmentedPlant {
    TransferFunction input_dynamics;   // strictly proper
    TransferFunction output_dynamics;  // strictly proper

    static double theta_star(double t);
    static double j_star(double t);
    static double objective_map(double t, double theta);
};

struct OpenLoopController {
    double phi = 0.0;
};

struct Esc1Controller {
    EscClassicParams params;
    double theta_hat0 = 0.0;
    /// Start the high pass settled: eta(0) = J at the initial state. Kills
    /// the artificial DC transient of an all-zero filter start.
    bool settle_high_pass = true;
};

struct Esc2Controller {
    EscAugmentedDesign design;
    /// Start block1 at its DC equilibrium for J at the initial state.
    bool settle_block1 = true;
    /// Explicit initial filter states [block1..., block2...]; overrides the
    /// settle policy when non-empty.
    std::vector<double> initial_state;
};

using PlantConfig = std::variant<DynamicSoaringPlant, ToyClassicPlant, ToyAugmentedPlant>;
using ControllerConfig = std::variant<OpenLoopController, Esc1Controller, Esc2Controller>;

/// A fully specified closed-loop experiment.
struct Scenario {
    std::string name;
    std::string description;
    PlantConfig plant;
    ControllerConfig controller;
    std::vector<double> x0;  // plant initial state
    double duration = 10.0;  // s
    double dt = 1e-3;        // s
    std::optional<DisturbanceConfig> disturbance;
    std::uint64_t seed = 0;

    void validate() const;
};

struct StateExtremum {
    std::string name;
    double min;
    double max;
    double final;
};

struct EnergyStats {
    double te_initial;
    double te_final;
    double te_min;
    double te_max;
    double relative_span;      // (te_max - te_min) / |te_initial|
    double rate_identity_rms;  // RMS(d e/dt FD - analytic) / RMS(analytic)
};

struct RunSummary {
    bool aborted = false;
    std::string abort_reason;
    double objective_initial = 0.0;  // J_clean at t = 0
    double objective_final = 0.0;    // J_clean at the last recorded row
    std::optional<EnergyStats> energy;
    std::vector<StateExtremum> controller_extrema;
};

/// Time series plus summary of one run. Column sets per plant:
///   dynamic soaring: t,x,y,z,V,gamma,psi,phi,J_measured,J_clean,e,TE,KE,PE,W,Wdot,n
///   toy classic:     t,x1,x2,theta,theta_hat,J_measured,J_clean
///   toy augmented:   t,theta,theta_star,J,J_star,J_measured,u_cmd
struct RunRecord {
    std::string scenario_name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    RunSummary summary;
};

/// Integrates the coupled plant + controller ODE with a fixed-step RK4.
/// Rows are recorded at every step boundary (duration/dt + 1 of them). The
/// measurement disturbance, when configured, is sampled once per step and
/// held through the step's stages. Identical (scenario, seed) pairs produce
/// bit-identical records. A SingularState or non-finite state aborts with a
/// partial record and the abort flag set.
RunRecord run(const Scenario& sc);

/// Still-air open-loop (phi = 0) copy of a dynamic-soaring scenario with
/// identical initial state, duration, and step: the drag-only yardstick that
/// harvesting runs are compared against.
Scenario matched_still_baseline(const Scenario& sc);

}  // namespace dsoar
