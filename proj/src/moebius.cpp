#include "mobrkhs/moebius.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mobrkhs::moebius {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kIdentityTol = 1e-14;

double wrap_angle(double theta) noexcept {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

void require_in_disc(Complex z) {
    if (std::abs(z) >= 1.0) {
        throw std::domain_error("moebius: evaluation point must satisfy |z| < 1");
    }
}

}  // namespace

double fold_angle(double theta) noexcept {
    double t = std::remainder(theta, kTwoPi);
    if (t <= -std::numbers::pi) t += kTwoPi;
    return t;
}

MoebiusTransform::MoebiusTransform(double theta, Complex a)
    : theta_(wrap_angle(theta)), a_(a) {
    if (std::abs(a) >= 1.0) {
        throw std::domain_error("moebius: parameter a must satisfy |a| < 1");
    }
}

MoebiusTransform MoebiusTransform::rotation(double theta) {
    return MoebiusTransform(theta, Complex(0.0, 0.0));
}

MoebiusTransform MoebiusTransform::involution_at(Complex z) {
    require_in_disc(z);
    // (z - w)/(1 - conj(z) w) = e^{i pi} (w - z)/(1 - conj(z) w)
    return MoebiusTransform(std::numbers::pi, z);
}

bool MoebiusTransform::is_identity() const noexcept {
    const double t = std::abs(fold_angle(theta_));
    return std::abs(a_) < kIdentityTol && t < kIdentityTol;
}

Complex MoebiusTransform::operator()(Complex z) const {
    require_in_disc(z);
    return std::polar(1.0, theta_) * (z - a_) / (1.0 - std::conj(a_) * z);
}

Complex MoebiusTransform::derivative(Complex z) const {
    require_in_disc(z);
    const Complex den = 1.0 - std::conj(a_) * z;
    return std::polar(1.0, theta_) * (1.0 - std::norm(a_)) / (den * den);
}

Complex MoebiusTransform::derivative_n(Complex z, int k) const {
    require_in_disc(z);
    if (k < 1) throw std::invalid_argument("moebius: derivative order must be >= 1");
    const Complex den = 1.0 - std::conj(a_) * z;
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    return std::polar(1.0, theta_) * (1.0 - std::norm(a_)) * kfact *
           std::pow(std::conj(a_), k - 1) / std::pow(den, k + 1);
}

Complex MoebiusTransform::log_derivative(Complex z) const {
    require_in_disc(z);
    if (is_identity()) return Complex(0.0, 0.0);
    // Re(1 - conj(a) z) > 0 on the disc, so the principal Log is safe.
    return Complex(0.0, fold_angle(theta_)) + std::log1p(-std::norm(a_)) -
           2.0 * std::log(1.0 - std::conj(a_) * z);
}

MoebiusTransform MoebiusTransform::inverse() const {
    // phi^{-1}(w) = e^{-i theta}(w + e^{i theta} a)/(1 + conj(a) e^{-i theta} w)
    return MoebiusTransform(-theta_, -std::polar(1.0, theta_) * a_);
}

MoebiusTransform compose(const MoebiusTransform& phi, const MoebiusTransform& psi) {
    // chi = phi o psi maps a_chi = psi^{-1}(a_phi) to 0, and
    // chi'(a_chi) = e^{i theta_chi} / (1 - |a_chi|^2) fixes the rotation part.
    const Complex a_chi = psi.inverse()(phi.a());
    Complex u = phi.derivative(psi(a_chi)) * psi.derivative(a_chi) * (1.0 - std::norm(a_chi));
    u /= std::abs(u);
    return MoebiusTransform(std::arg(u), a_chi);
}

Complex cocycle_eval(double lambda, const MoebiusTransform& phi, Complex z) {
    if (lambda <= 0.0) throw std::invalid_argument("moebius: cocycle power must be positive");
    return std::exp(0.5 * lambda * phi.log_derivative(z));
}

}  // namespace mobrkhs::moebius
