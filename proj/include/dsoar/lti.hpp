#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dsoar {

/// Thrown when a transfer function with degree(num) > degree(den) is asked
/// for a state-space realization.
struct ImproperTransferFunction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when the companion-matrix eigensolver does not converge.
struct RootFindingFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Margin separating "asymptotically stable" from marginally stable poles.
/// Imaginary-axis roots (e.g. the oscillator poles of the reference models)
/// must not be classified as stable.
inline constexpr double kStabilityMargin = 1e-9;

/// Proper or improper rational function of the Laplace variable, stored as
/// numerator/denominator coefficients in descending powers of s. The leading
/// denominator coefficient is normalized to 1 on construction. No pole-zero
/// cancellation is ever performed.
class TransferFunction {
  public:
    /// num/den in descending powers. den must be non-empty with a nonzero
    /// leading coefficient. Improper functions are admitted (needed for
    /// intermediate compensator algebra) but cannot be realized.
    TransferFunction(std::vector<double> num, std::vector<double> den);

    /// Unity gain 1/1.
    TransferFunction() : TransferFunction({1.0}, {1.0}) {}

    /// Constructs and rejects improper functions up front.
    static TransferFunction proper(std::vector<double> num, std::vector<double> den);

    /// Constant gain k/1.
    static TransferFunction gain(double k) { return TransferFunction({k}, {1.0}); }

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }

    int numerator_degree() const { return static_cast<int>(num_.size()) - 1; }
    int denominator_degree() const { return static_cast<int>(den_.size()) - 1; }

    bool is_proper() const { return numerator_degree() <= denominator_degree(); }
    bool is_strictly_proper() const { return numerator_degree() < denominator_degree(); }

    /// Roots of the denominator (companion-matrix eigenvalues).
    std::vector<std::complex<double>> poles() const;
    /// Roots of the numerator.
    std::vector<std::complex<double>> zeros() const;

    /// True iff every pole has real part < -margin.
    bool is_hurwitz(double margin = kStabilityMargin) const;

    std::complex<double> evaluate(std::complex<double> s) const;

    /// num(0)/den(0); infinite when den(0) == 0.
    double dc_gain() const;

    /// Polynomial convolution of numerators and denominators; common factors
    /// are kept uncancelled.
    friend TransferFunction operator*(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator*(double k, const TransferFunction& tf);

    std::string to_string() const;

  private:
    std::vector<double> num_;  // descending powers of s
    std::vector<double> den_;  // monic, descending powers of s
};

/// Roots of a real polynomial given in descending powers (companion matrix).
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

/// Polynomial product, coefficients in descending powers.
std::vector<double> polynomial_multiply(const std::vector<double>& a, const std::vector<double>& b);

/// Controllable-canonical state-space realization of a proper transfer
/// function. The filter never advances its own clock: it only exposes the
/// state derivative and the output so the simulation engine can integrate it
/// inside the global ODE.
class LinearFilter {
  public:
    /// Throws ImproperTransferFunction if degree(num) > degree(den).
    explicit LinearFilter(const TransferFunction& source);

    int order() const { return static_cast<int>(a_.rows()); }

    const Eigen::MatrixXd& A() const { return a_; }
    const Eigen::VectorXd& B() const { return b_; }
    const Eigen::RowVectorXd& C() const { return c_; }
    double D() const { return d_; }
    const TransferFunction& source() const { return source_; }

    /// xdot = A x + B u for an externally owned state slice.
    void derivative(Eigen::Ref<const Eigen::VectorXd> state, double input,
                    Eigen::Ref<Eigen::VectorXd> state_derivative) const;

    /// y = C x + D u.
    double output(Eigen::Ref<const Eigen::VectorXd> state, double input) const;

    /// State at which xdot = 0 for a constant input (requires A invertible,
    /// i.e. no pole at the origin). Used to start filters settled.
    Eigen::VectorXd equilibrium_state(double input) const;

    /// Convenience owned state for standalone use (tests, single filters).
    Eigen::VectorXd& state() { return state_; }
    const Eigen::VectorXd& state() const { return state_; }
    void derivative(double input, Eigen::Ref<Eigen::VectorXd> state_derivative) const {
        derivative(state_, input, state_derivative);
    }
    double output(double input) const { return output(state_, input); }

  private:
    TransferFunction source_;
    Eigen::MatrixXd a_;
    Eigen::VectorXd b_;
    Eigen::RowVectorXd c_;
    double d_ = 0.0;
    Eigen::VectorXd state_;
};

/// Realizes a proper transfer function in controllable canonical form.
inline LinearFilter realize(const TransferFunction& tf) { return LinearFilter(tf); }

}  // namespace dsoar
