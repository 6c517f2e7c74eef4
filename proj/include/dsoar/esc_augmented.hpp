#pragma once

#include <array>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "dsoar/lti.hpp"

namespace dsoar {

/// Thrown by design construction when a composite block cannot be realized.
struct InvalidDesign : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Laplace-domain shapes of the assumed optimal input theta*(t) and optimal
/// output J*(t), with their scale factors.
struct ReferenceSignalModel {
    TransferFunction gamma_phi;  // shape of theta*(t)
    TransferFunction gamma_j;    // shape of J*(t)
    double lambda_phi = 1.0;
    double lambda_j = 1.0;
};

/// Complete augmented-loop design: plant-side input/output dynamics,
/// compensators, reference models, the two realizable composite blocks, and
/// the modulation/demodulation settings.
///
/// block1 = C_0 / Gamma_J feeds on the measured objective; its output is
/// demodulated by b sin(omega t - phi_phase) and shaped by
/// block2 = k2 C_i Gamma_phi, whose output plus the dither a sin(omega t)
/// is the steered parameter.
struct EscAugmentedDesign {
    TransferFunction input_dynamics;     // F_i
    TransferFunction output_dynamics;    // F_0
    TransferFunction input_compensator;  // C_i
    TransferFunction output_compensator; // C_0
    ReferenceSignalModel reference;
    TransferFunction block1;
    TransferFunction block2;
    double a;          // modulation amplitude
    double b;          // demodulation amplitude
    double omega;      // rad/s
    double phi_phase;  // rad, demodulation written as b sin(omega t - phi_phase)
    double k2;         // loop gain folded into block2
    std::array<double, 7> constants{};  // c0..c6 for sinusoid-reference designs
};

/// Constants of the dynamic-soaring customization. The optimal input and
/// output are guessed as sin(c1 t + c2) and sin(c3 t + c0); c4..c6 place the
/// poles of the output compensator.
struct DsCompensatorConstants {
    double c0 = 1.5707963267948966;  // pi/2 unless a scenario specifies otherwise
    double c1, c2, c3, c4, c5, c6;
};

/// Builds the dynamic-soaring design: C_i = 1,
/// C_0 = (c3 cos c0 + s sin c0)/((s+c4)(s+c5)(s+c6)),
/// block1 = (s^2+c3^2)/((s+c4)(s+c5)(s+c6)),
/// block2 = k2 (c1 cos c2 + s sin c2)/(s^2+c1^2), F_i = F_0 = 1.
/// The shared non-Hurwitz numerator factor of C_0 and Gamma_J cancels by
/// construction; no polynomial cancellation is performed at runtime.
EscAugmentedDesign build_ds_design(const DsCompensatorConstants& c, double k2, double a, double b,
                                   double omega, double phi_phase);

/// One stability/properness condition with its evidence.
struct ConditionCheck {
    bool ok = true;
    bool checked = true;  // false when the check did not run (missing input)
    std::string evidence;
};

/// Outcome of the compensator-design conditions C1..C5. The C5 loop
/// condition runs only when a curvature estimate f'' is supplied; its result
/// is interpretation-dependent (the demodulation phase stands in for the
/// otherwise-undefined phi_0) and is labeled as such in the evidence.
struct DesignReport {
    ConditionCheck c1;            // F_i, F_0 stable and proper
    ConditionCheck c2;            // references strictly proper; Gamma_phi poles not cancelled
    ConditionCheck c3;            // unstable zeros of Gamma_J are zeros of C_0
    ConditionCheck c4;            // composite blocks proper
    ConditionCheck c5_stability;  // C_0 Hurwitz
    ConditionCheck c5_loop;       // 1/(1+L) stable, gated on curvature

    /// Conjunction of the performed checks.
    bool overall() const {
        auto good = [](const ConditionCheck& c) { return !c.checked || c.ok; };
        return good(c1) && good(c2) && good(c3) && good(c4) && good(c5_stability) && good(c5_loop);
    }

    std::string to_string() const;
};

/// Checks conditions C1..C5 on a design. `curvature` is the objective's
/// second derivative at the operating point, needed only for the C5 loop
/// condition.
DesignReport validate_design(const EscAugmentedDesign& d,
                             std::optional<double> curvature = std::nullopt);

/// Runtime form of the augmented loop: the two composite blocks realized as
/// filters operating on an externally owned state slice laid out as
/// [block1 states, block2 states].
class Esc2Loop {
  public:
    explicit Esc2Loop(const EscAugmentedDesign& design);

    const EscAugmentedDesign& design() const { return design_; }
    const LinearFilter& block1() const { return block1_; }
    const LinearFilter& block2() const { return block2_; }

    int order() const { return block1_.order() + block2_.order(); }

    /// Steered parameter y3 + a sin(omega t) where y3 is block2's output.
    double control(double t, Eigen::Ref<const Eigen::VectorXd> state, double j_measured) const;

    /// Filter state derivatives for the measured objective.
    void derivative(double t, Eigen::Ref<const Eigen::VectorXd> state, double j_measured,
                    Eigen::Ref<Eigen::VectorXd> state_derivative) const;

    /// Demodulated block1 output (block2's input) at this instant.
    double demodulated(double t, Eigen::Ref<const Eigen::VectorXd> state, double j_measured) const;

  private:
    EscAugmentedDesign design_;
    LinearFilter block1_;
    LinearFilter block2_;
};

}  // namespace dsoar
