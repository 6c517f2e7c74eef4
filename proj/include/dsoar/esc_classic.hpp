#pragma once

#include <stdexcept>

namespace dsoar {

/// Parameters of the classic perturbation-based extremum-seeking loop:
/// modulation a sin(wt), demodulation b sin(wt - phi_phase), optional
/// high-pass s/(s+omega_h) on the measurement, optional low-pass
/// omega_l/(s+omega_l) on the demodulated signal, integrator gain k.
struct EscClassicParams {
    double a;                   // modulation amplitude
    double b = 1.0;             // demodulation amplitude
    double omega;               // rad/s perturbation frequency
    double phi_phase = 0.0;     // rad demodulation phase lag
    double k = 1.0;             // integrator gain (positive for maximization)
    double omega_h = 0.0;       // rad/s high-pass corner
    double omega_l = 0.0;       // rad/s low-pass corner
    bool use_high_pass = true;
    bool use_low_pass = false;

    void validate() const {
        if (!(a > 0.0)) throw std::invalid_argument("esc1: modulation amplitude must be > 0");
        if (!(omega > 0.0)) throw std::invalid_argument("esc1: omega must be > 0");
        if (use_high_pass && !(omega_h > 0.0))
            throw std::invalid_argument("esc1: omega_h must be > 0 when the high pass is on");
        if (use_low_pass && !(omega_l > 0.0))
            throw std::invalid_argument("esc1: omega_l must be > 0 when the low pass is on");
    }
};

/// Loop states: the parameter estimate and the two intermediate filter
/// states. xi is unused when the low pass is off; eta is frozen when the
/// high pass is off.
struct EscClassicState {
    double theta_hat = 0.0;
    double xi = 0.0;
    double eta = 0.0;
};

/// Steered parameter: theta_hat + a sin(omega t).
double esc1_control(const EscClassicState& st, const EscClassicParams& p, double t);

/// Time derivative of the loop states given the measured objective:
///   eta_dot       = -omega_h eta + omega_h J            (high pass on)
///   demodulated   = (J - eta) b sin(omega t - phi_phase)
///   xi_dot        = -omega_l xi + omega_l demodulated   (low pass on)
///   theta_hat_dot = k xi          (low pass on)
///                 = k demodulated (low pass off)
/// With the high pass off, (J - eta) is replaced by J and eta is frozen.
EscClassicState esc1_rhs(const EscClassicState& st, const EscClassicParams& p, double j_measured,
                         double t);

}  // namespace dsoar
