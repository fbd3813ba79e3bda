#include "mobrkhs/discspace.hpp"

#include <cmath>
#include <stdexcept>

namespace mobrkhs::discspace {

namespace {

void require_lambda(double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("discspace: lambda must be positive");
}

void require_in_disc(Complex z) {
    if (std::abs(z) >= 1.0) throw std::domain_error("discspace: point must satisfy |z| < 1");
}

}  // namespace

Series series_multiply(const Series& f, const Series& g) {
    const int n = static_cast<int>(std::min(f.size(), g.size()));
    Series out = Series::Zero(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; i + j < n && j < g.size(); ++j) {
            out[i + j] += f[i] * g[j];
        }
    }
    return out;
}

Series moebius_series(const MoebiusTransform& phi, int degree) {
    // (z - a) sum_n conj(a)^n z^n: coefficient 0 is -a, n >= 1 is conj(a)^{n-1}(1 - |a|^2).
    Series s = Series::Zero(degree + 1);
    const Complex rot = std::polar(1.0, phi.theta());
    const Complex ab = std::conj(phi.a());
    s[0] = -rot * phi.a();
    Complex p = 1.0;
    for (int n = 1; n <= degree; ++n) {
        s[n] = rot * (1.0 - std::norm(phi.a())) * p;
        p *= ab;
    }
    return s;
}

Series cocycle_series(double lambda, const MoebiusTransform& phi, int degree) {
    require_lambda(lambda);
    // c^(lambda)(phi, z) = e^{i lambda theta'/2} (1-|a|^2)^{lambda/2} (1 - conj(a) z)^{-lambda}
    Series s = Series::Zero(degree + 1);
    const Complex front =
        std::exp(0.5 * lambda *
                 (Complex(0.0, moebius::fold_angle(phi.theta())) + std::log1p(-std::norm(phi.a()))));
    const Complex ab = std::conj(phi.a());
    Complex term = front;
    s[0] = term;
    for (int n = 1; n <= degree; ++n) {
        term *= ab * (lambda + n - 1) / static_cast<double>(n);
        s[n] = term;
    }
    return s;
}

double monomial_norm_sq(double lambda, int n) {
    require_lambda(lambda);
    if (n < 0) throw std::invalid_argument("discspace: monomial degree must be >= 0");
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= (k + 1) / (lambda + k);
    return r;
}

std::vector<double> shift_weights(double lambda, int count) {
    require_lambda(lambda);
    std::vector<double> w(count);
    for (int n = 0; n < count; ++n) w[n] = std::sqrt((n + 1) / (lambda + n));
    return w;
}

Complex kernel_eval(double lambda, Complex z, Complex w) {
    require_lambda(lambda);
    require_in_disc(z);
    require_in_disc(w);
    return std::exp(-lambda * std::log(1.0 - z * std::conj(w)));
}

Complex kernel_eval_truncated(double lambda, Complex z, Complex w, int degree) {
    require_lambda(lambda);
    const Complex x = z * std::conj(w);
    Complex sum = 0.0, term = 1.0;
    for (int n = 0; n <= degree; ++n) {
        sum += term;
        term *= x * (lambda + n) / static_cast<double>(n + 1);
    }
    return sum;
}

WeightedDiscSpace::WeightedDiscSpace(double lambda, int degree) : lambda_(lambda), degree_(degree) {
    require_lambda(lambda);
    if (degree < 0) throw std::invalid_argument("discspace: degree bound must be >= 0");
    norm_sq_.resize(degree + 1);
    norm_sq_[0] = 1.0;
    for (int n = 0; n < degree; ++n) norm_sq_[n + 1] = norm_sq_[n] * (n + 1) / (lambda + n);
}

Complex inner_product(const DiscFunction& f, const DiscFunction& g, const WeightedDiscSpace& space) {
    const int n = static_cast<int>(std::min({f.coeffs.size(), g.coeffs.size(),
                                             static_cast<Eigen::Index>(space.degree() + 1)}));
    Complex acc = 0.0;
    for (int k = 0; k < n; ++k) acc += f.coeffs[k] * std::conj(g.coeffs[k]) * space.norm_sq(k);
    return acc;
}

Eigen::MatrixXcd discrete_series_matrix(double lambda, const MoebiusTransform& phi, int degree,
                                        bool orthonormal) {
    require_lambda(lambda);
    const int dim = degree + 1;
    Eigen::MatrixXcd mat(dim, dim);
    const Series phis = moebius_series(phi, degree);
    Series col = cocycle_series(lambda, phi, degree);
    for (int k = 0; k < dim; ++k) {
        mat.col(k) = col;
        if (k + 1 < dim) col = series_multiply(col, phis);
    }
    if (orthonormal) {
        WeightedDiscSpace space(lambda, degree);
        for (int n = 0; n < dim; ++n) {
            for (int k = 0; k < dim; ++k) {
                mat(n, k) *= std::sqrt(space.norm_sq(n) / space.norm_sq(k));
            }
        }
    }
    return mat;
}

double kernel_transform_check(double lambda, const MoebiusTransform& phi, Complex z, Complex w) {
    const Complex lhs = kernel_eval(lambda, z, w);
    const Complex rhs = cocycle_eval(lambda, phi, z) * kernel_eval(lambda, phi(z), phi(w)) *
                        std::conj(cocycle_eval(lambda, phi, w));
    return std::abs(lhs - rhs);
}

}  // namespace mobrkhs::discspace
