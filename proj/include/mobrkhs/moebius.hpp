#pragma once

#include <complex>
#include <vector>

namespace mobrkhs::moebius {

using Complex = std::complex<double>;

/// Biholomorphic automorphism of the unit disc in the canonical form
///   phi(z) = e^{i theta} (z - a) / (1 - conj(a) z),   |a| < 1.
///
/// theta is stored in [0, 2*pi). All evaluation points must lie in the
/// open disc; evaluations at or beyond the boundary throw std::domain_error.
class MoebiusTransform {
public:
    /// Identity transform.
    MoebiusTransform() = default;

    /// Throws std::domain_error if |a| >= 1.
    MoebiusTransform(double theta, Complex a);

    /// Pure rotation z -> e^{i theta} z.
    static MoebiusTransform rotation(double theta);

    /// The unique involution phi_z(w) = (z - w)/(1 - conj(z) w) swapping z and 0.
    static MoebiusTransform involution_at(Complex z);

    double theta() const noexcept { return theta_; }
    Complex a() const noexcept { return a_; }

    /// True when the parameters are within 1e-14 of the identity element.
    bool is_identity() const noexcept;

    Complex operator()(Complex z) const;

    /// phi'(z) = e^{i theta} (1 - |a|^2) / (1 - conj(a) z)^2; never zero on the disc.
    Complex derivative(Complex z) const;

    /// k-th derivative, k >= 1 (closed form).
    Complex derivative_n(Complex z, int k) const;

    /// Holomorphic branch  i theta' + ln(1 - |a|^2) - 2 Log(1 - conj(a) z),
    /// where Log is the principal logarithm and theta' is theta folded into
    /// (-pi, pi]. Satisfies exp(log_derivative(z)) == derivative(z) and
    /// vanishes identically for the identity transform.
    Complex log_derivative(Complex z) const;

    MoebiusTransform inverse() const;

private:
    double theta_ = 0.0;
    Complex a_{0.0, 0.0};
};

/// Group composition, renormalized to canonical (theta, a) form:
/// compose(phi, psi)(z) = phi(psi(z)).
MoebiusTransform compose(const MoebiusTransform& phi, const MoebiusTransform& psi);

/// Power cocycle c^(lambda)(phi, z) = exp((lambda/2) log phi'(z)).
/// Requires lambda > 0 and |z| < 1; non-vanishing and holomorphic in z.
Complex cocycle_eval(double lambda, const MoebiusTransform& phi, Complex z);

/// theta folded into (-pi, pi].
double fold_angle(double theta) noexcept;

}  // namespace mobrkhs::moebius
