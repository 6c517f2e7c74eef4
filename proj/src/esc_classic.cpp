#include "dsoar/esc_classic.hpp"

#include <cmath>

namespace dsoar {

double esc1_control(const EscClassicState& st, const EscClassicParams& p, double t) {
    return st.theta_hat + p.a * std::sin(p.omega * t);
}

EscClassicState esc1_rhs(const EscClassicState& st, const EscClassicParams& p, double j_measured,
                         double t) {
    EscClassicState d;
    const double high_passed = p.use_high_pass ? j_measured - st.eta : j_measured;
    const double demodulated = high_passed * p.b * std::sin(p.omega * t - p.phi_phase);

    d.eta = p.use_high_pass ? p.omega_h * (j_measured - st.eta) : 0.0;
    if (p.use_low_pass) {
        d.xi = p.omega_l * (demodulated - st.xi);
        d.theta_hat = p.k * st.xi;
    } else {
        d.xi = 0.0;
        d.theta_hat = p.k * demodulated;
    }
    return d;
}

}  // namespace dsoar
