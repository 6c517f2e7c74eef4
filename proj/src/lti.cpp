#include "dsoar/lti.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace dsoar {

namespace {

std::vector<double> trim_leading_zeros(std::vector<double> coeffs) {
    std::size_t first = 0;
    while (first + 1 < coeffs.size() && coeffs[first] == 0.0) ++first;
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(first));
    return coeffs;
}

std::complex<double> evaluate_poly(const std::vector<double>& coeffs, std::complex<double> s) {
    std::complex<double> acc = 0.0;
    for (double c : coeffs) acc = acc * s + c;
    return acc;
}

}  // namespace

TransferFunction::TransferFunction(std::vector<double> num, std::vector<double> den) {
    if (den.empty()) throw std::invalid_argument("transfer function: empty denominator");
    den = trim_leading_zeros(std::move(den));
    if (den.front() == 0.0)
        throw std::invalid_argument("transfer function: zero leading denominator coefficient");
    if (num.empty()) num = {0.0};
    num = trim_leading_zeros(std::move(num));

    const double lead = den.front();
    for (double& c : den) c /= lead;
    for (double& c : num) c /= lead;
    num_ = std::move(num);
    den_ = std::move(den);
}

TransferFunction TransferFunction::proper(std::vector<double> num, std::vector<double> den) {
    TransferFunction tf(std::move(num), std::move(den));
    if (!tf.is_proper())
        throw ImproperTransferFunction("transfer function: numerator degree " +
                                       std::to_string(tf.numerator_degree()) +
                                       " exceeds denominator degree " +
                                       std::to_string(tf.denominator_degree()));
    return tf;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    std::vector<double> p = trim_leading_zeros(coeffs);
    if (p.size() <= 1) return {};
    const int n = static_cast<int>(p.size()) - 1;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) companion(i, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) companion(n - 1, j) = -p[static_cast<std::size_t>(n - j)] / p[0];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw RootFindingFailure("companion-matrix eigensolver did not converge");
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

std::vector<double> polynomial_multiply(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<std::complex<double>> TransferFunction::poles() const { return polynomial_roots(den_); }

std::vector<std::complex<double>> TransferFunction::zeros() const { return polynomial_roots(num_); }

bool TransferFunction::is_hurwitz(double margin) const {
    for (const auto& p : poles())
        if (p.real() >= -margin) return false;
    return true;
}

std::complex<double> TransferFunction::evaluate(std::complex<double> s) const {
    return evaluate_poly(num_, s) / evaluate_poly(den_, s);
}

double TransferFunction::dc_gain() const {
    const double n0 = num_.back();
    const double d0 = den_.back();
    if (d0 == 0.0) return n0 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return n0 / d0;
}

TransferFunction operator*(const TransferFunction& a, const TransferFunction& b) {
    return TransferFunction(polynomial_multiply(a.num_, b.num_), polynomial_multiply(a.den_, b.den_));
}

TransferFunction operator*(double k, const TransferFunction& tf) {
    std::vector<double> num = tf.num_;
    for (double& c : num) c *= k;
    return TransferFunction(std::move(num), tf.den_);
}

std::string TransferFunction::to_string() const {
    auto poly = [](const std::vector<double>& c) {
        std::ostringstream os;
        const int deg = static_cast<int>(c.size()) - 1;
        bool first = true;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0.0 && c.size() > 1) continue;
            if (!first) os << (c[i] < 0 ? " - " : " + ");
            else if (c[i] < 0)
                os << "-";
            const double mag = std::abs(c[i]);
            const int p = deg - static_cast<int>(i);
            if (mag != 1.0 || p == 0) os << mag;
            if (p > 0) os << "s";
            if (p > 1) os << "^" << p;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    };
    return "(" + poly(num_) + ") / (" + poly(den_) + ")";
}

LinearFilter::LinearFilter(const TransferFunction& source) : source_(source) {
    if (!source.is_proper())
        throw ImproperTransferFunction("cannot realize improper transfer function " +
                                       source.to_string());
    const auto& den = source.den();  // monic by construction
    const int n = source.denominator_degree();

    // Pad numerator to n+1 coefficients: b0 s^n + ... + bn.
    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    const auto& num = source.num();
    std::copy(num.begin(), num.end(), b.end() - static_cast<std::ptrdiff_t>(num.size()));

    d_ = b[0];
    a_.setZero(n, n);
    b_.setZero(n);
    c_.setZero(n);
    state_.setZero(n);
    if (n == 0) return;

    for (int i = 0; i + 1 < n; ++i) a_(i, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) a_(n - 1, j) = -den[static_cast<std::size_t>(n - j)];
    b_(n - 1) = 1.0;
    for (int j = 0; j < n; ++j)
        c_(j) = b[static_cast<std::size_t>(n - j)] - den[static_cast<std::size_t>(n - j)] * d_;
}

void LinearFilter::derivative(Eigen::Ref<const Eigen::VectorXd> state, double input,
                              Eigen::Ref<Eigen::VectorXd> state_derivative) const {
    if (order() == 0) return;
    state_derivative.noalias() = a_ * state;
    state_derivative.noalias() += b_ * input;
}

double LinearFilter::output(Eigen::Ref<const Eigen::VectorXd> state, double input) const {
    double y = d_ * input;
    if (order() > 0) y += c_.dot(state);
    return y;
}

Eigen::VectorXd LinearFilter::equilibrium_state(double input) const {
    if (order() == 0) return Eigen::VectorXd();
    return a_.fullPivLu().solve(-b_ * input);
}

}  // namespace dsoar
