#include "dsoar/esc_augmented.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

namespace dsoar {

namespace {

std::string poles_to_string(const std::vector<std::complex<double>>& roots) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (i) os << ", ";
        os << roots[i].real();
        if (roots[i].imag() != 0.0) os << (roots[i].imag() > 0 ? "+" : "") << roots[i].imag() << "j";
    }
    os << "}";
    return os.str();
}

bool root_among(const std::complex<double>& r, const std::vector<std::complex<double>>& set,
                double tol = 1e-6) {
    for (const auto& s : set)
        if (std::abs(r - s) <= tol * std::max(1.0, std::abs(r))) return true;
    return false;
}

std::vector<std::complex<double>> non_hurwitz(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> out;
    for (const auto& r : roots)
        if (r.real() >= -kStabilityMargin) out.push_back(r);
    return out;
}

}  // namespace

EscAugmentedDesign build_ds_design(const DsCompensatorConstants& c, double k2, double a, double b,
                                   double omega, double phi_phase) {
    const double sc2 = std::sin(c.c2), cc2 = std::cos(c.c2);
    const double sc0 = std::sin(c.c0), cc0 = std::cos(c.c0);

    TransferFunction gamma_phi({sc2, c.c1 * cc2}, {1.0, 0.0, c.c1 * c.c1});
    TransferFunction gamma_j({sc0, c.c3 * cc0}, {1.0, 0.0, c.c3 * c.c3});

    const std::vector<double> c0_den = polynomial_multiply(
        polynomial_multiply({1.0, c.c4}, {1.0, c.c5}), {1.0, c.c6});

    EscAugmentedDesign d;
    d.input_dynamics = TransferFunction();   // F_i = 1
    d.output_dynamics = TransferFunction();  // F_0 = 1
    d.input_compensator = TransferFunction();
    d.output_compensator = TransferFunction({sc0, c.c3 * cc0}, c0_den);
    d.reference = {gamma_phi, gamma_j, 1.0, 1.0};
    d.block1 = TransferFunction({1.0, 0.0, c.c3 * c.c3}, c0_den);
    d.block2 = k2 * TransferFunction({sc2, c.c1 * cc2}, {1.0, 0.0, c.c1 * c.c1});
    d.a = a;
    d.b = b;
    d.omega = omega;
    d.phi_phase = phi_phase;
    d.k2 = k2;
    d.constants = {c.c0, c.c1, c.c2, c.c3, c.c4, c.c5, c.c6};

    if (!d.block1.is_proper())
        throw InvalidDesign("block 1 " + d.block1.to_string() + " is improper");
    if (!d.block2.is_proper())
        throw InvalidDesign("block 2 " + d.block2.to_string() + " is improper");
    return d;
}

DesignReport validate_design(const EscAugmentedDesign& d, std::optional<double> curvature) {
    DesignReport r;

    {  // C1: F_i, F_0 asymptotically stable and proper.
        const bool fi_ok = d.input_dynamics.is_hurwitz() && d.input_dynamics.is_proper();
        const bool f0_ok = d.output_dynamics.is_hurwitz() && d.output_dynamics.is_proper();
        r.c1.ok = fi_ok && f0_ok;
        std::ostringstream os;
        os << "F_i poles " << poles_to_string(d.input_dynamics.poles())
           << (fi_ok ? " stable/proper" : " FAIL") << "; F_0 poles "
           << poles_to_string(d.output_dynamics.poles()) << (f0_ok ? " stable/proper" : " FAIL");
        r.c1.evidence = os.str();
    }

    {  // C2: references strictly proper; unstable poles of Gamma_phi not zeros of C_i.
        const bool strict = d.reference.gamma_j.is_strictly_proper() &&
                            d.reference.gamma_phi.is_strictly_proper();
        const auto unstable_poles = non_hurwitz(d.reference.gamma_phi.poles());
        const auto ci_zeros = d.input_compensator.zeros();
        bool cancelled = false;
        for (const auto& p : unstable_poles)
            if (root_among(p, ci_zeros)) cancelled = true;
        r.c2.ok = strict && !cancelled;
        std::ostringstream os;
        os << "Gamma_J deg " << d.reference.gamma_j.numerator_degree() << "/"
           << d.reference.gamma_j.denominator_degree() << ", Gamma_phi deg "
           << d.reference.gamma_phi.numerator_degree() << "/"
           << d.reference.gamma_phi.denominator_degree()
           << (strict ? " strictly proper" : " NOT strictly proper")
           << "; non-Hurwitz Gamma_phi poles " << poles_to_string(unstable_poles)
           << (cancelled ? " CANCELLED by C_i zeros " : " not cancelled by C_i zeros ")
           << poles_to_string(ci_zeros);
        r.c2.evidence = os.str();
    }

    {  // C3: unstable zeros of Gamma_J are zeros of C_0.
        const auto unstable_zeros = non_hurwitz(d.reference.gamma_j.zeros());
        const auto c0_zeros = d.output_compensator.zeros();
        bool all_covered = true;
        for (const auto& z : unstable_zeros)
            if (!root_among(z, c0_zeros)) all_covered = false;
        r.c3.ok = all_covered;
        std::ostringstream os;
        os << "non-Hurwitz Gamma_J zeros " << poles_to_string(unstable_zeros)
           << (all_covered ? " covered by" : " NOT covered by") << " C_0 zeros "
           << poles_to_string(c0_zeros);
        r.c3.evidence = os.str();
    }

    {  // C4: C_0/Gamma_J and C_i Gamma_phi proper.
        const TransferFunction ci_gamma = d.input_compensator * d.reference.gamma_phi;
        const bool b1_ok = d.block1.is_proper();
        const bool b2_ok = ci_gamma.is_proper();
        r.c4.ok = b1_ok && b2_ok;
        std::ostringstream os;
        os << "C_0/Gamma_J deg " << d.block1.numerator_degree() << "/"
           << d.block1.denominator_degree() << (b1_ok ? " proper" : " IMPROPER")
           << "; C_i*Gamma_phi deg " << ci_gamma.numerator_degree() << "/"
           << ci_gamma.denominator_degree() << (b2_ok ? " proper" : " IMPROPER");
        r.c4.evidence = os.str();
    }

    {  // C5 stability part: C_0 asymptotically stable.
        r.c5_stability.ok = d.output_compensator.is_hurwitz();
        r.c5_stability.evidence = "C_0 poles " + poles_to_string(d.output_compensator.poles()) +
                                  (r.c5_stability.ok ? " all stable" : " NOT all stable");
    }

    if (!curvature) {  // C5 loop part: gated on a curvature estimate.
        r.c5_loop.checked = false;
        r.c5_loop.evidence = "not checked (curvature f'' absent)";
    } else {
        // Quasi-static reading of the loop transfer: L(s) ~ kappa * H_i(s)
        // with kappa = -a b f''/4 * Re(e^{j phi0} F_i(jw) H_0(jw)); phi0 is
        // taken as the demodulation phase and the demodulated product closes
        // the loop through a sign inversion. Interpretation-dependent.
        const std::complex<double> jw(0.0, d.omega);
        const std::complex<double> h0 = d.block1.evaluate(jw) * d.output_dynamics.evaluate(jw);
        const std::complex<double> rot =
            std::exp(std::complex<double>(0.0, d.phi_phase)) * d.input_dynamics.evaluate(jw) * h0;
        const double kappa = -d.a * d.b * *curvature / 4.0 * rot.real();

        const TransferFunction h_i =
            d.k2 * (d.input_compensator * d.reference.gamma_phi * d.input_dynamics);
        // Characteristic polynomial of 1/(1+L): den(H_i) + kappa num(H_i).
        std::vector<double> charpoly = h_i.den();
        const auto& num = h_i.num();
        for (std::size_t i = 0; i < num.size(); ++i)
            charpoly[charpoly.size() - num.size() + i] += kappa * num[i];
        const auto roots = polynomial_roots(charpoly);
        bool stable = true;
        for (const auto& root : roots)
            if (root.real() >= -kStabilityMargin) stable = false;
        r.c5_loop.ok = stable;
        std::ostringstream os;
        os << "interpretation-dependent (phi0 = demodulation phase): kappa = " << kappa
           << ", closed-loop roots " << poles_to_string(roots)
           << (stable ? " all stable" : " NOT all stable");
        r.c5_loop.evidence = os.str();
    }

    return r;
}

std::string DesignReport::to_string() const {
    auto line = [](const char* name, const ConditionCheck& c) {
        std::string status = !c.checked ? "SKIP" : (c.ok ? "PASS" : "FAIL");
        return std::string(name) + ": " + status + "  " + c.evidence + "\n";
    };
    std::string out;
    out += line("C1", c1);
    out += line("C2", c2);
    out += line("C3", c3);
    out += line("C4", c4);
    out += line("C5 (C_0 stability)", c5_stability);
    out += line("C5 (loop condition)", c5_loop);
    out += std::string("overall: ") + (overall() ? "PASS" : "FAIL") + "\n";
    return out;
}

Esc2Loop::Esc2Loop(const EscAugmentedDesign& design)
    : design_(design), block1_(design.block1), block2_(design.block2) {}

double Esc2Loop::demodulated(double t, Eigen::Ref<const Eigen::VectorXd> state,
                             double j_measured) const {
    const double y1 = block1_.output(state.head(block1_.order()), j_measured);
    return y1 * design_.b * std::sin(design_.omega * t - design_.phi_phase);
}

double Esc2Loop::control(double t, Eigen::Ref<const Eigen::VectorXd> state,
                         double j_measured) const {
    const double y2 = demodulated(t, state, j_measured);
    const double y3 = block2_.output(state.tail(block2_.order()), y2);
    return y3 + design_.a * std::sin(design_.omega * t);
}

void Esc2Loop::derivative(double t, Eigen::Ref<const Eigen::VectorXd> state, double j_measured,
                          Eigen::Ref<Eigen::VectorXd> state_derivative) const {
    const int n1 = block1_.order();
    const double y2 = demodulated(t, state, j_measured);
    block1_.derivative(state.head(n1), j_measured, state_derivative.head(n1));
    block2_.derivative(state.tail(block2_.order()), y2, state_derivative.tail(block2_.order()));
}

}  // namespace dsoar
