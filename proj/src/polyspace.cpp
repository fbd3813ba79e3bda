#include "mobrkhs/polyspace.hpp"

#include <cmath>
#include <stdexcept>

#include "mobrkhs/discspace.hpp"

namespace mobrkhs::polyspace {

namespace {

void require_in_disc(std::span<const Complex> z) {
    for (Complex c : z) {
        if (std::abs(c) >= 1.0) throw std::domain_error("polyspace: point must lie in the open polydisc");
    }
}

double falling_factorial(int i, int m) {
    double r = 1.0;
    for (int k = 0; k < m; ++k) r *= (i - k);
    return r;
}

// splitmix64; deterministic across platforms.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 1 || nvars > 3) throw std::invalid_argument("polyspace: 1 to 3 variables supported");
    if (degree < 0) throw std::invalid_argument("polyspace: degree bound must be >= 0");
    const int stride = degree + 1;
    lookup_.assign(stride * stride * stride, -1);
    blocks_.resize(degree + 1);
    for (int d = 0; d <= degree; ++d) {
        const int first = static_cast<int>(exponents_.size());
        if (nvars == 1) {
            exponents_.push_back({d, 0, 0});
        } else if (nvars == 2) {
            for (int i = d; i >= 0; --i) exponents_.push_back({i, d - i, 0});
        } else {
            for (int i = d; i >= 0; --i)
                for (int j = d - i; j >= 0; --j) exponents_.push_back({i, j, d - i - j});
        }
        blocks_[d] = {first, static_cast<int>(exponents_.size())};
        for (int idx = first; idx < static_cast<int>(exponents_.size()); ++idx) {
            const auto& e = exponents_[idx];
            lookup_[e[0] + stride * (e[1] + stride * e[2])] = idx;
            degrees_.push_back(d);
        }
    }
}

int MonomialBasis::index(const MultiIndex& alpha) const {
    const int stride = degree_ + 1;
    for (int v = 0; v < 3; ++v) {
        if (alpha[v] < 0 || alpha[v] > degree_) return -1;
    }
    if (alpha[0] + alpha[1] + alpha[2] > degree_) return -1;
    return lookup_[alpha[0] + stride * (alpha[1] + stride * alpha[2])];
}

std::pair<int, int> MonomialBasis::degree_block(int d) const {
    if (d < 0 || d > degree_) return {0, 0};
    return blocks_[d];
}

TensorSpace::TensorSpace(MonomialBasis basis, Eigen::VectorXd gram, std::vector<double> cocycle_lambdas)
    : basis_(std::move(basis)), gram_(std::move(gram)), cocycle_lambdas_(std::move(cocycle_lambdas)) {}

TensorSpace TensorSpace::tensor(std::vector<double> lambdas, int degree) {
    const int d = static_cast<int>(lambdas.size());
    for (double l : lambdas) {
        if (l <= 0.0) throw std::invalid_argument("polyspace: tensor weights must be positive");
    }
    MonomialBasis basis(d, degree);
    Eigen::VectorXd gram(basis.size());
    for (int idx = 0; idx < basis.size(); ++idx) {
        const auto& e = basis.exponent(idx);
        double g = 1.0;
        for (int v = 0; v < d; ++v) g *= discspace::monomial_norm_sq(lambdas[v], e[v]);
        gram[idx] = g;
    }
    return TensorSpace(std::move(basis), std::move(gram), std::move(lambdas));
}

TensorSpace TensorSpace::custom(int nvars, int degree, Eigen::VectorXd gram,
                                std::vector<double> cocycle_lambdas) {
    MonomialBasis basis(nvars, degree);
    if (gram.size() != basis.size()) throw std::invalid_argument("polyspace: gram size mismatch");
    for (int i = 0; i < gram.size(); ++i) {
        if (!(gram[i] > 0.0)) throw std::invalid_argument("polyspace: gram weights must be positive");
    }
    return TensorSpace(std::move(basis), std::move(gram), std::move(cocycle_lambdas));
}

double TensorSpace::lambda_sum() const noexcept {
    double s = 0.0;
    for (double l : cocycle_lambdas_) s += l;
    return s;
}

TensorSpace TensorSpace::perturbed(double eps, std::uint64_t seed) const {
    Eigen::VectorXd gram = gram_;
    for (int i = 0; i < gram.size(); ++i) {
        const double u = 2.0 * (mix64(seed + 0x51ed2700a1b3c4d5ull * (i + 1)) >> 11) *
                             0x1.0p-53 -
                         1.0;
        gram[i] *= 1.0 + eps * u;
    }
    TensorSpace out = *this;
    out.gram_ = std::move(gram);
    return out;
}

Complex TensorSpace::cocycle(const MoebiusTransform& phi, std::span<const Complex> z) const {
    if (static_cast<int>(z.size()) != nvars()) {
        throw std::invalid_argument("polyspace: cocycle point dimension mismatch");
    }
    Complex c = 1.0;
    for (int v = 0; v < nvars(); ++v) c *= moebius::cocycle_eval(cocycle_lambdas_[v], phi, z[v]);
    return c;
}

PolyFunction zero_function(const TensorSpace& space) {
    return PolyFunction{Eigen::VectorXcd::Zero(space.basis().size())};
}

Complex inner_product(const PolyFunction& f, const PolyFunction& g, const TensorSpace& space) {
    if (f.coeffs.size() != g.coeffs.size() || f.coeffs.size() != space.basis().size()) {
        throw std::invalid_argument("polyspace: coefficient shape mismatch");
    }
    // extended-precision accumulation: orthogonality of the summand bases is
    // certified through these sums, and the binomial coefficient growth at
    // high degrees cancels through ~1e6 before settling near zero
    std::complex<long double> acc = 0.0L;
    for (int i = 0; i < f.coeffs.size(); ++i) {
        acc += std::complex<long double>(f.coeffs[i]) *
               std::conj(std::complex<long double>(g.coeffs[i])) *
               static_cast<long double>(space.gram(i));
    }
    return Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

double norm(const PolyFunction& f, const TensorSpace& space) {
    return std::sqrt(std::real(inner_product(f, f, space)));
}

Complex eval(const PolyFunction& f, const TensorSpace& space, std::span<const Complex> z) {
    const auto& basis = space.basis();
    Complex acc = 0.0;
    for (int idx = 0; idx < basis.size(); ++idx) {
        if (f.coeffs[idx] == 0.0) continue;
        const auto& e = basis.exponent(idx);
        Complex mono = 1.0;
        for (int v = 0; v < basis.nvars(); ++v) {
            for (int k = 0; k < e[v]; ++k) mono *= z[v];
        }
        acc += f.coeffs[idx] * mono;
    }
    return acc;
}

Complex tensor_kernel_eval(std::span<const double> lambdas, std::span<const Complex> z,
                           std::span<const Complex> w) {
    if (lambdas.size() != z.size() || z.size() != w.size()) {
        throw std::invalid_argument("polyspace: kernel argument dimension mismatch");
    }
    require_in_disc(z);
    require_in_disc(w);
    Complex k = 1.0;
    for (std::size_t v = 0; v < lambdas.size(); ++v) k *= discspace::kernel_eval(lambdas[v], z[v], w[v]);
    return k;
}

Complex kernel_eval_truncated(const TensorSpace& space, std::span<const Complex> z,
                              std::span<const Complex> w) {
    const auto& basis = space.basis();
    Complex acc = 0.0;
    for (int idx = 0; idx < basis.size(); ++idx) {
        const auto& e = basis.exponent(idx);
        Complex mono = 1.0;
        for (int v = 0; v < basis.nvars(); ++v) {
            for (int k = 0; k < e[v]; ++k) mono *= z[v] * std::conj(w[v]);
        }
        acc += mono / space.gram(idx);
    }
    return acc;
}

PolyFunction kernel_derivative_section(const TensorSpace& space, int m, Complex w) {
    if (space.nvars() != 2) throw std::invalid_argument("polyspace: section requires two variables");
    if (m < 0 || m > space.degree()) throw std::invalid_argument("polyspace: section order out of range");
    const auto& basis = space.basis();
    PolyFunction out = zero_function(space);
    const Complex wb = std::conj(w);
    for (int idx = 0; idx < basis.size(); ++idx) {
        const auto& e = basis.exponent(idx);
        const int i = e[0], j = e[1];
        if (i < m) continue;
        Complex p = 1.0;
        for (int k = 0; k < i - m + j; ++k) p *= wb;
        out.coeffs[idx] = falling_factorial(i, m) * p / space.gram(idx);
    }
    return out;
}

PolyFunction multiply_by_coordinate(const TensorSpace& space, const PolyFunction& f, int coord) {
    if (coord < 1 || coord > space.nvars()) throw std::invalid_argument("polyspace: bad coordinate index");
    const auto& basis = space.basis();
    PolyFunction out = zero_function(space);
    for (int idx = 0; idx < basis.size(); ++idx) {
        if (f.coeffs[idx] == 0.0) continue;
        MultiIndex e = basis.exponent(idx);
        e[coord - 1] += 1;
        const int target = basis.index(e);
        if (target >= 0) out.coeffs[target] += f.coeffs[idx];
    }
    return out;
}

namespace {

void faa_terms(std::span<const Complex> f_derivs, std::span<const Complex> phi_derivs, int j,
               int k, int remaining, int order_sum, double multinomial, Complex prod, Complex& acc) {
    if (k > j || remaining == 0) {
        if (remaining == 0) acc += multinomial * f_derivs[order_sum] * prod;
        return;
    }
    double k_fact = 1.0;
    for (int i = 2; i <= k; ++i) k_fact *= i;
    Complex power = 1.0;
    double l_fact = 1.0;
    for (int l = 0; l * k <= remaining; ++l) {
        if (l > 0) {
            power *= phi_derivs[k] / k_fact;
            l_fact *= l;
        }
        faa_terms(f_derivs, phi_derivs, j, k + 1, remaining - l * k, order_sum + l,
                  multinomial / l_fact, prod * power, acc);
    }
}

}  // namespace

Complex faa_di_bruno(std::span<const Complex> f_derivs, std::span<const Complex> phi_derivs, int j) {
    if (j < 0) throw std::invalid_argument("polyspace: derivative order must be >= 0");
    if (static_cast<int>(f_derivs.size()) < j + 1 || static_cast<int>(phi_derivs.size()) < j + 1) {
        throw std::invalid_argument("polyspace: insufficient derivative data");
    }
    if (j == 0) return f_derivs[0];
    double j_fact = 1.0;
    for (int i = 2; i <= j; ++i) j_fact *= i;
    Complex acc = 0.0;
    faa_terms(f_derivs, phi_derivs, j, 1, j, 0, j_fact, Complex(1.0, 0.0), acc);
    return acc;
}

}  // namespace mobrkhs::polyspace
