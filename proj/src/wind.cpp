#include "dsoar/wind.hpp"

#include <cmath>

namespace dsoar {

double wind_speed(const WindModel& model, double z) {
    return std::visit(
        [z](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, StillAir>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, LogisticShear>) {
                return m.w0 / (1.0 + std::exp(-(z - m.zm) / m.delta));
            } else {
                if (z <= m.z0) return 0.0;
                return m.v_ref * std::log(z / m.z0) / std::log(m.z_ref / m.z0);
            }
        },
        model);
}

double wind_gradient(const WindModel& model, double z) {
    return std::visit(
        [z](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, StillAir>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, LogisticShear>) {
                const double u = std::exp(-(z - m.zm) / m.delta);
                const double denom = 1.0 + u;
                return m.w0 * u / (m.delta * denom * denom);
            } else {
                if (z <= m.z0) return 0.0;
                return m.v_ref / (z * std::log(m.z_ref / m.z0));
            }
        },
        model);
}

double wind_time_derivative(const WindModel& model, double z, double z_dot) {
    return wind_gradient(model, z) * z_dot;
}

}  // namespace dsoar
