#include "dsoar/flight.hpp"

#include <cmath>
#include <string>

namespace dsoar {

AeroForces aero_forces(const FlightState& s, const ControlInput& u, const VehicleParams& p) {
    const double q = 0.5 * p.rho * s.v * s.v * p.wing_area;
    const double cd = p.cd0 + p.induced_drag * u.cl * u.cl;
    return {q * u.cl, q * cd};
}

FlightState dynamics_rhs(const FlightState& s, const ControlInput& u, const VehicleParams& p,
                         const WindModel& w) {
    if (s.v < kAirspeedGuard)
        throw SingularState("airspeed " + std::to_string(s.v) + " m/s below guard");
    if (std::abs(s.gamma) >= kFlightPathAngleGuard)
        throw SingularState("flight path angle " + std::to_string(s.gamma) + " rad beyond guard");

    const auto [lift, drag] = aero_forces(s, u, p);
    const double sg = std::sin(s.gamma), cg = std::cos(s.gamma);
    const double sp = std::sin(s.psi), cp = std::cos(s.psi);
    const double wind = wind_speed(w, s.z);
    const double z_dot = s.v * sg;
    const double w_dot = wind_time_derivative(w, s.z, z_dot);
    const double m = p.mass, g = p.gravity;

    FlightState d;
    d.x = s.v * cg * cp;
    d.y = s.v * cg * sp - wind;
    d.z = z_dot;
    d.v = (-drag - m * g * sg + m * w_dot * cg * sp) / m;
    d.gamma = (lift * std::cos(u.phi) - m * g * cg - m * w_dot * sg * sp) / (m * s.v);
    d.psi = (lift * std::sin(u.phi) + m * w_dot * cp) / (m * s.v * cg);
    return d;
}

EnergyReport energy_report(const FlightState& s, const ControlInput& u, const VehicleParams& p,
                           const WindModel& w) {
    const auto [lift, drag] = aero_forces(s, u, p);
    const double m = p.mass, g = p.gravity;
    const double w_dot = wind_time_derivative(w, s.z, s.v * std::sin(s.gamma));

    EnergyReport r;
    r.e = s.z + s.v * s.v / (2.0 * g);
    r.ke = 0.5 * m * s.v * s.v;
    r.pe = m * g * s.z;
    r.te = r.ke + r.pe;
    r.j1 = s.v * w_dot * std::cos(s.gamma) * std::sin(s.psi) / g;
    r.e_dot_analytic = -drag * s.v / (m * g) + r.j1;
    r.j2 = r.e;
    r.load_factor = lift / (m * g);
    return r;
}

}  // namespace dsoar
