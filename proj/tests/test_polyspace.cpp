#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "mobrkhs/discspace.hpp"
#include "mobrkhs/polyspace.hpp"
#include "mobrkhs/sweeps.hpp"

using namespace mobrkhs;
using polyspace::Complex;
using polyspace::MonomialBasis;
using polyspace::PolyFunction;
using polyspace::TensorSpace;

TEST_CASE("monomial basis ordering") {
    const MonomialBasis basis(2, 3);
    CHECK(basis.size() == 10);
    CHECK(basis.exponent(0) == polyspace::MultiIndex{0, 0, 0});
    CHECK(basis.exponent(1) == polyspace::MultiIndex{1, 0, 0});
    CHECK(basis.exponent(2) == polyspace::MultiIndex{0, 1, 0});
    CHECK(basis.index({2, 1, 0}) == 7);
    CHECK(basis.index({4, 0, 0}) == -1);
    CHECK(basis.index({2, 2, 0}) == -1);
    const auto [first, last] = basis.degree_block(2);
    CHECK(last - first == 3);
    for (int idx = first; idx < last; ++idx) CHECK(basis.total_degree(idx) == 2);

    const MonomialBasis basis3(3, 8);
    CHECK(basis3.size() == 165);
}

TEST_CASE("tensor gram and inner product") {
    const auto space = TensorSpace::tensor({1.0, 1.0}, 6);
    PolyFunction one = polyspace::zero_function(space);
    one.coeffs[0] = 1.0;
    CHECK(std::abs(polyspace::inner_product(one, one, space) - 1.0) == 0.0);

    PolyFunction z1 = polyspace::zero_function(space);
    z1.coeffs[space.basis().index({1, 0, 0})] = 1.0;
    PolyFunction z2 = polyspace::zero_function(space);
    z2.coeffs[space.basis().index({0, 1, 0})] = 1.0;
    CHECK(std::abs(polyspace::inner_product(z1, z1, space) - 1.0) == 0.0);
    CHECK(std::abs(polyspace::inner_product(z1, z2, space)) == 0.0);

    PolyFunction diff = polyspace::zero_function(space);
    diff.coeffs[space.basis().index({1, 0, 0})] = 1.0;
    diff.coeffs[space.basis().index({0, 1, 0})] = -1.0;
    CHECK(std::abs(polyspace::inner_product(diff, diff, space) - 2.0) == 0.0);

    // conjugate symmetry
    PolyFunction f = polyspace::zero_function(space);
    f.coeffs[3] = Complex(0.4, 1.2);
    f.coeffs[5] = Complex(-0.3, 0.1);
    PolyFunction g = polyspace::zero_function(space);
    g.coeffs[3] = Complex(1.0, -0.7);
    g.coeffs[8] = 2.0;
    CHECK(std::abs(polyspace::inner_product(f, g, space) -
                   std::conj(polyspace::inner_product(g, f, space))) < 1e-15);
}

TEST_CASE("tensor kernel evaluation") {
    const std::array<double, 2> lambdas = {1.0, 1.0};
    const std::array<Complex, 2> zero = {0.0, 0.0};
    const std::array<Complex, 2> half = {0.5, 0.5};
    CHECK(std::abs(polyspace::tensor_kernel_eval(lambdas, half, zero) - 1.0) == 0.0);
    CHECK(std::abs(polyspace::tensor_kernel_eval(lambdas, half, half) - 16.0 / 9.0) < 1e-14);

    // diagonal restriction adds the exponents
    sweeps::Rng rng(21);
    for (int i = 0; i < 20; ++i) {
        const double l1 = 0.3 + rng.next_unit(), l2 = 0.4 + rng.next_unit();
        const Complex u = rng.next_disc(0.7), v = rng.next_disc(0.7);
        const std::array<double, 2> ll = {l1, l2};
        const std::array<Complex, 2> zz = {u, u}, ww = {v, v};
        CHECK(std::abs(polyspace::tensor_kernel_eval(ll, zz, ww) -
                       discspace::kernel_eval(l1 + l2, u, v)) < 1e-13);
    }
}

TEST_CASE("truncated kernel reproduces monomials exactly") {
    const auto space = TensorSpace::tensor({0.8, 2.2}, 9);
    sweeps::Rng rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const std::array<Complex, 2> w = {rng.next_disc(0.6), rng.next_disc(0.6)};
        PolyFunction kernel = polyspace::zero_function(space);
        for (int idx = 0; idx < space.basis().size(); ++idx) {
            const auto& e = space.basis().exponent(idx);
            Complex mono = 1.0;
            for (int v = 0; v < 2; ++v) {
                for (int k = 0; k < e[v]; ++k) mono *= std::conj(w[v]);
            }
            kernel.coeffs[idx] = mono / space.gram(idx);
        }
        for (int idx : {0, 4, 17, space.basis().size() - 1}) {
            PolyFunction p = polyspace::zero_function(space);
            p.coeffs[idx] = 1.0;
            CHECK(std::abs(polyspace::inner_product(p, kernel, space) -
                           polyspace::eval(p, space, w)) < 1e-14);
        }
    }
}

TEST_CASE("kernel derivative sections") {
    const auto space = TensorSpace::tensor({1.4, 0.9}, 10);

    const auto constant = polyspace::kernel_derivative_section(space, 0, 0.0);
    CHECK(std::abs(constant.coeffs[0] - 1.0) == 0.0);
    CHECK(constant.coeffs.tail(constant.coeffs.size() - 1).cwiseAbs().maxCoeff() == 0.0);

    const auto first = polyspace::kernel_derivative_section(space, 1, 0.0);
    CHECK(std::abs(first.coeffs[space.basis().index({1, 0, 0})] - 1.4) < 1e-15);
    CHECK(std::abs(polyspace::norm(first, space) -
                   1.4 * std::sqrt(space.gram(space.basis().index({1, 0, 0})))) < 1e-14);

    // general m at the origin: only (lambda_1)_m z_1^m survives
    for (int m : {2, 3, 4}) {
        const auto section = polyspace::kernel_derivative_section(space, m, 0.0);
        double pochhammer = 1.0;
        for (int k = 0; k < m; ++k) pochhammer *= 1.4 + k;
        for (int idx = 0; idx < space.basis().size(); ++idx) {
            const auto& e = space.basis().exponent(idx);
            const Complex expected =
                (e[0] == m && e[1] == 0) ? Complex(pochhammer) : Complex(0.0);
            CHECK(std::abs(section.coeffs[idx] - expected) < 1e-12);
        }
    }
}

TEST_CASE("sections agree with finite differences of the closed-form kernel") {
    const auto space = TensorSpace::tensor({1.2, 1.7}, 12);
    const double h = 1e-3;
    sweeps::Rng rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        const Complex w = rng.next_disc(0.5);
        const std::array<Complex, 2> z = {rng.next_disc(0.4), rng.next_disc(0.4)};
        const auto closed = [&](Complex w1) {
            const std::array<double, 2> ll = {1.2, 1.7};
            const std::array<Complex, 2> ww = {w1, w};
            return polyspace::tensor_kernel_eval(ll, z, ww);
        };
        // derivative in conj(w1): perturbing w1 by a real step moves conj(w1) by
        // the same step
        const Complex fd1 = (closed(w + h) - closed(w - h)) / (2.0 * h);
        const auto s1 = polyspace::kernel_derivative_section(space, 1, w);
        CHECK(std::abs(polyspace::eval(s1, space, z) - fd1) < 1e-6);

        const Complex fd2 = (closed(w + h) - 2.0 * closed(w) + closed(w - h)) / (h * h);
        const auto s2 = polyspace::kernel_derivative_section(space, 2, w);
        CHECK(std::abs(polyspace::eval(s2, space, z) - fd2) < 1e-6);
    }
}

TEST_CASE("coordinate multiplication is degree-graded") {
    const auto space = TensorSpace::tensor({1.0, 2.0}, 7);
    sweeps::Rng rng(23);
    PolyFunction f = polyspace::zero_function(space);
    for (int idx = 0; idx < space.basis().size(); ++idx) f.coeffs[idx] = rng.next_symmetric();
    for (int coord : {1, 2}) {
        const auto g = polyspace::multiply_by_coordinate(space, f, coord);
        for (int idx = 0; idx < space.basis().size(); ++idx) {
            auto e = space.basis().exponent(idx);
            if (e[coord - 1] == 0) CHECK(g.coeffs[idx] == Complex(0.0));
            e[coord - 1] -= 1;
            const int src = e[coord - 1] >= 0 ? space.basis().index(e) : -1;
            if (src >= 0) CHECK(g.coeffs[idx] == f.coeffs[src]);
        }
    }
    CHECK_THROWS_AS(polyspace::multiply_by_coordinate(space, f, 3), std::invalid_argument);
}

namespace {

// Oracle: derivatives of f o phi at z0 by composing Taylor expansions.
Complex compose_derivative_oracle(const Eigen::VectorXcd& poly, const moebius::MoebiusTransform& phi,
                                  Complex z0, int j) {
    const int order = j + 1;
    // Taylor coefficients of phi around z0
    Eigen::VectorXcd phi_taylor = Eigen::VectorXcd::Zero(order);
    phi_taylor[0] = phi(z0);
    double kfact = 1.0;
    for (int k = 1; k < order; ++k) {
        kfact *= k;
        phi_taylor[k] = phi.derivative_n(z0, k) / kfact;
    }
    // Taylor coefficients of f around phi(z0) by repeated synthetic shifts
    const Complex y0 = phi_taylor[0];
    Eigen::VectorXcd f_shift = poly;
    Eigen::VectorXcd f_taylor = Eigen::VectorXcd::Zero(order);
    for (int k = 0; k < order; ++k) {
        // evaluate the k-th derivative of f at y0, divided by k!
        Complex acc = 0.0;
        for (int n = static_cast<int>(f_shift.size()) - 1; n >= k; --n) {
            double binom = 1.0;
            for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
            Complex p = 1.0;
            for (int i = 0; i < n - k; ++i) p *= y0;
            acc += f_shift[n] * binom * p;
        }
        f_taylor[k] = acc;
    }
    // compose: g(h) = f(phi(z0 + h)); collect the h^j coefficient
    Eigen::VectorXcd delta = phi_taylor;
    delta[0] = 0.0;
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(order);
    g[0] = f_taylor[0];
    Eigen::VectorXcd power = Eigen::VectorXcd::Zero(order);
    power[0] = 1.0;
    for (int k = 1; k < order; ++k) {
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(order);
        for (int a = 0; a < order; ++a) {
            if (power[a] == Complex(0.0)) continue;
            for (int b = 0; a + b < order; ++b) next[a + b] += power[a] * delta[b];
        }
        power = next;
        g += f_taylor[k] * power;
    }
    double jfact = 1.0;
    for (int i = 2; i <= j; ++i) jfact *= i;
    return g[j] * jfact;
}

}  // namespace

TEST_CASE("faa di bruno") {
    using polyspace::faa_di_bruno;
    const std::array<Complex, 2> f1 = {Complex(2.0), Complex(3.0)};
    const std::array<Complex, 2> p1 = {Complex(0.5), Complex(-1.5)};
    CHECK(std::abs(faa_di_bruno(f1, p1, 1) - 3.0 * (-1.5)) < 1e-15);

    const std::array<Complex, 3> f2 = {Complex(1.0), Complex(2.0), Complex(-1.0)};
    const std::array<Complex, 3> p2 = {Complex(0.0), Complex(0.7), Complex(0.3)};
    // f''(phi) phi'^2 + f'(phi) phi''
    CHECK(std::abs(faa_di_bruno(f2, p2, 2) - (-1.0 * 0.49 + 2.0 * 0.3)) < 1e-15);

    // with the first m-1 derivatives of f vanishing, only f^{(m)} phi'^m survives
    for (int m : {2, 3, 4}) {
        std::vector<Complex> fd(m + 1, 0.0);
        fd[m] = Complex(1.3, -0.4);
        std::vector<Complex> pd(m + 1);
        for (int k = 0; k <= m; ++k) pd[k] = Complex(0.2 * k + 0.1, 0.05 * k);
        Complex expected = fd[m];
        for (int k = 0; k < m; ++k) expected *= pd[1];
        CHECK(std::abs(faa_di_bruno(fd, pd, m) - expected) < 1e-12);
    }

    // against the series-composition oracle
    sweeps::Rng rng(61);
    for (int trial = 0; trial < 12; ++trial) {
        Eigen::VectorXcd poly(9);
        for (int i = 0; i < 9; ++i) poly[i] = Complex(rng.next_symmetric(), rng.next_symmetric());
        const auto phi = rng.next_transform(0.5);
        const Complex z0 = rng.next_disc(0.5);
        const int j = 1 + static_cast<int>(rng.next_unit() * 7.0);

        std::vector<Complex> f_derivs(j + 1), phi_derivs(j + 1);
        const Complex y0 = phi(z0);
        for (int k = 0; k <= j; ++k) {
            Complex acc = 0.0;
            for (int n = k; n < 9; ++n) {
                double ff = 1.0;
                for (int i = 0; i < k; ++i) ff *= (n - i);
                Complex p = 1.0;
                for (int i = 0; i < n - k; ++i) p *= y0;
                acc += poly[n] * ff * p;
            }
            f_derivs[k] = acc;
            phi_derivs[k] = (k == 0) ? y0 : phi.derivative_n(z0, k);
        }
        const Complex direct = faa_di_bruno(f_derivs, phi_derivs, j);
        const Complex oracle = compose_derivative_oracle(poly, phi, z0, j);
        CHECK(std::abs(direct - oracle) < 1e-10 * std::max(1.0, std::abs(oracle)));
    }

    CHECK_THROWS_AS(faa_di_bruno(f1, std::span<const Complex>(p1.data(), 1), 1),
                    std::invalid_argument);
}

TEST_CASE("gram perturbation is deterministic and bounded") {
    const auto space = TensorSpace::tensor({1.0, 1.0}, 8);
    const auto a = space.perturbed(1e-3, 20240331);
    const auto b = space.perturbed(1e-3, 20240331);
    double max_rel = 0.0;
    for (int i = 0; i < space.basis().size(); ++i) {
        CHECK(a.gram(i) == b.gram(i));
        max_rel = std::max(max_rel, std::abs(a.gram(i) / space.gram(i) - 1.0));
    }
    CHECK(max_rel <= 1e-3);
    CHECK(max_rel > 1e-5);
}
