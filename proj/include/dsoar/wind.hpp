#pragma once

#include <stdexcept>
#include <variant>

namespace dsoar {

/// Zero wind everywhere; the drag-dissipation baseline.
struct StillAir {};

/// W(z) = w0 / (1 + exp(-(z - zm)/delta)). Sigmoid shear layer of thickness
/// delta centered at altitude zm.
struct LogisticShear {
    double w0;     // free-stream wind speed, m/s
    double delta;  // shear layer thickness, m (> 0)
    double zm;     // altitude of the layer midpoint, m

    LogisticShear(double w0_, double delta_, double zm_) : w0(w0_), delta(delta_), zm(zm_) {
        if (!(delta > 0.0)) throw std::invalid_argument("logistic shear: delta must be > 0");
    }
};

/// W(z) = v_ref * ln(z/z0) / ln(z_ref/z0), clamped to 0 for z <= z0 so the
/// profile stays defined (and non-negative) down to the surface.
struct LogarithmicShear {
    double v_ref;  // wind speed at the reference altitude, m/s
    double z_ref;  // reference altitude, m
    double z0;     // surface roughness height, m (0 < z0 < z_ref)

    LogarithmicShear(double v_ref_, double z_ref_, double z0_)
        : v_ref(v_ref_), z_ref(z_ref_), z0(z0_) {
        if (!(z0 > 0.0 && z_ref > z0))
            throw std::invalid_argument("logarithmic shear: need z_ref > z0 > 0");
    }
};

using WindModel = std::variant<StillAir, LogisticShear, LogarithmicShear>;

/// Horizontal wind speed at altitude z, m/s.
double wind_speed(const WindModel& model, double z);

/// dW/dz at altitude z, 1/s. Zero in the clamped region of the logarithmic
/// profile (one-sided limit from below; avoids the 1/z spike at the clamp).
double wind_gradient(const WindModel& model, double z);

/// Wdot = dW/dz * zdot, the chain-rule term entering the flight dynamics.
double wind_time_derivative(const WindModel& model, double z, double z_dot);

}  // namespace dsoar
