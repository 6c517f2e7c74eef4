#pragma once

#include <stdexcept>

#include "dsoar/wind.hpp"

namespace dsoar {

/// Thrown when the point-mass model reaches a state where its equations are
/// singular (airspeed or flight-path-angle guard violated). Signals a
/// physically invalid run, not a numerical bug.
struct SingularState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Airspeed below which the V and cos(gamma) divisions are considered
/// untrustworthy, m/s.
inline constexpr double kAirspeedGuard = 0.5;
/// Flight-path-angle magnitude guard, rad (89 degrees).
inline constexpr double kFlightPathAngleGuard = 89.0 * 3.14159265358979323846 / 180.0;

/// Point-mass state: position in the East-North-Up frame, air-relative speed
/// and angles.
struct FlightState {
    double x;      // m East
    double y;      // m North
    double z;      // m altitude
    double v;      // m/s airspeed
    double gamma;  // rad air-relative flight path angle, nose-up positive
    double psi;    // rad air-relative heading, measured from East
};

struct ControlInput {
    double phi;  // rad bank angle
    double cl;   // lift coefficient
};

struct VehicleParams {
    double mass;          // kg
    double wing_area;     // m^2
    double cd0;           // zero-lift drag coefficient
    double induced_drag;  // induced drag factor K in CD = CD0 + K CL^2
    double rho;           // kg/m^3 air density
    double gravity;       // m/s^2

    /// Wandering-albatross constants used throughout the study.
    static VehicleParams albatross() { return {8.5, 0.65, 0.033, 0.019, 1.225, 9.8}; }
};

struct AeroForces {
    double lift;  // N
    double drag;  // N
};

/// L = q S CL, D = q S (CD0 + K CL^2) with q = rho V^2 / 2.
AeroForces aero_forces(const FlightState& s, const ControlInput& u, const VehicleParams& p);

/// Right-hand side of the 3-DOF gliding equations in shear wind. The wind
/// blows from North to South; Wdot enters through the chain rule with the
/// climb rate. Throws SingularState if the guards are violated.
FlightState dynamics_rhs(const FlightState& s, const ControlInput& u, const VehicleParams& p,
                         const WindModel& w);

/// Energy bookkeeping for one state. e is the air-relative specific total
/// energy z + V^2/2g; e_dot_analytic is its exact rate along the dynamics,
/// -DV/(mg) + V Wdot cos(gamma) sin(psi) / g. j1 is the wind-harvesting term
/// of that rate, j2 = e. n is the load factor L/(mg), reported as a
/// diagnostic only (never enforced).
struct EnergyReport {
    double e;                // m
    double te;               // J
    double ke;               // J
    double pe;               // J
    double e_dot_analytic;   // m/s
    double j1;               // m/s
    double j2;               // m
    double load_factor;      // dimensionless
};

EnergyReport energy_report(const FlightState& s, const ControlInput& u, const VehicleParams& p,
                           const WindModel& w);

}  // namespace dsoar
