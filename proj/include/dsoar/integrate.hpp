#pragma once

#include <cstddef>
#include <vector>

namespace dsoar {

/// Scratch buffers for the fixed-step integrator, reused across steps.
struct Rk4Workspace {
    std::vector<double> k1, k2, k3, k4, tmp;

    void resize(std::size_t n) {
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        tmp.resize(n);
    }
};

/// Classical 4-stage Runge-Kutta update of the augmented state vector.
/// `rhs(t, x, dxdt)` fills dxdt; exceptions from it propagate.
template <typename Rhs>
void rk4_step(Rhs&& rhs, std::vector<double>& x, double t, double dt, Rk4Workspace& ws) {
    const std::size_t n = x.size();
    ws.resize(n);
    const double half = dt / 2.0;

    rhs(t, x, ws.k1);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + half * ws.k1[i];
    rhs(t + half, ws.tmp, ws.k2);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + half * ws.k2[i];
    rhs(t + half, ws.tmp, ws.k3);
    for (std::size_t i = 0; i < n; ++i) ws.tmp[i] = x[i] + dt * ws.k3[i];
    rhs(t + dt, ws.tmp, ws.k4);
    for (std::size_t i = 0; i < n; ++i)
        x[i] += dt / 6.0 * (ws.k1[i] + 2.0 * ws.k2[i] + 2.0 * ws.k3[i] + ws.k4[i]);
}

}  // namespace dsoar
