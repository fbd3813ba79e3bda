#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mobrkhs/moebius.hpp"
#include "mobrkhs/sweeps.hpp"

using namespace mobrkhs;
using moebius::Complex;
using moebius::MoebiusTransform;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("involution maps its parameter to zero and back") {
    const auto phi = MoebiusTransform::involution_at(0.5);
    CHECK(std::abs(phi(Complex(0.0)) - 0.5) < 1e-15);
    CHECK(std::abs(phi(Complex(0.5))) < 1e-15);

    const auto at_zero = MoebiusTransform::involution_at(0.0);
    CHECK(std::abs(at_zero(Complex(0.3, -0.2)) - Complex(-0.3, 0.2)) < 1e-15);

    CHECK_THROWS_AS(MoebiusTransform::involution_at(Complex(1.0, 0.3)), std::domain_error);
}

TEST_CASE("composition respects identity, involutions and rotations") {
    const MoebiusTransform id;
    const MoebiusTransform phi(1.2, Complex(0.4, -0.2));
    const auto left = moebius::compose(id, phi);
    const auto right = moebius::compose(phi, id);
    for (Complex z : {Complex(0.0), Complex(0.3, 0.4), Complex(-0.6, 0.1)}) {
        CHECK(std::abs(left(z) - phi(z)) < 1e-15);
        CHECK(std::abs(right(z) - phi(z)) < 1e-15);
    }

    const auto inv = MoebiusTransform::involution_at(Complex(0.3, 0.1));
    CHECK(moebius::compose(inv, inv).is_identity());

    const auto r1 = MoebiusTransform::rotation(5.1);
    const auto r2 = MoebiusTransform::rotation(2.4);
    const auto both = moebius::compose(r1, r2);
    CHECK(std::abs(both.a()) < 1e-15);
    CHECK(both.theta() ==
          doctest::Approx(std::fmod(5.1 + 2.4, 2.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("derivative closed form") {
    const MoebiusTransform id;
    CHECK(std::abs(id.derivative(Complex(0.3, 0.2)) - 1.0) < 1e-16);

    // w -> -w at the origin
    CHECK(std::abs(MoebiusTransform::involution_at(0.0).derivative(0.0) + 1.0) < 1e-15);

    // d/dw (1/2 - w)/(1 - w/2) at 0 = -3/4 by the quotient rule
    CHECK(std::abs(MoebiusTransform::involution_at(0.5).derivative(0.0) + 0.75) < 1e-15);

    // finite-difference oracle for a generic transform
    const MoebiusTransform phi(0.9, Complex(0.25, -0.35));
    const double h = 1e-6;
    for (Complex z : {Complex(0.1, 0.2), Complex(-0.4, 0.3)}) {
        const Complex fd = (phi(z + h) - phi(z - h)) / (2.0 * h);
        CHECK(std::abs(phi.derivative(z) - fd) < 1e-8);
    }
    CHECK_THROWS_AS(phi.derivative(Complex(1.2, 0.0)), std::domain_error);
}

TEST_CASE("higher derivatives match repeated differentiation") {
    const MoebiusTransform phi(2.2, Complex(-0.3, 0.25));
    const Complex z(0.15, -0.2);
    const double h = 1e-4;
    const Complex fd2 = (phi.derivative(z + h) - phi.derivative(z - h)) / (2.0 * h);
    CHECK(std::abs(phi.derivative_n(z, 2) - fd2) < 1e-6);
    const Complex fd3 =
        (phi.derivative_n(z + h, 2) - phi.derivative_n(z - h, 2)) / (2.0 * h);
    CHECK(std::abs(phi.derivative_n(z, 3) - fd3) < 1e-4);
}

TEST_CASE("logarithm branch") {
    const MoebiusTransform id;
    for (Complex z : {Complex(0.0), Complex(0.5, 0.3), Complex(-0.2, -0.7)}) {
        CHECK(std::abs(id.log_derivative(z)) == 0.0);
    }

    // rotations: constant i theta with theta folded into (-pi, pi]
    const auto rot = MoebiusTransform::rotation(2.5);
    CHECK(std::abs(rot.log_derivative(Complex(0.4, 0.1)) - 2.5 * kI) < 1e-15);
    const auto rot_neg = MoebiusTransform::rotation(4.0);  // folds to 4 - 2 pi
    CHECK(std::abs(rot_neg.log_derivative(0.0) - (4.0 - 2.0 * std::numbers::pi) * kI) < 1e-15);

    // defining identity on random samples
    sweeps::Rng rng(20240331);
    for (int i = 0; i < 100; ++i) {
        const auto phi = rng.next_transform(0.8);
        const Complex z = rng.next_disc(0.9);
        CHECK(std::abs(std::exp(phi.log_derivative(z)) - phi.derivative(z)) < 1e-13);
    }
}

TEST_CASE("power cocycle") {
    const MoebiusTransform id;
    CHECK(std::abs(moebius::cocycle_eval(1.7, id, Complex(0.2, 0.2)) - 1.0) == 0.0);

    sweeps::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const auto phi = rng.next_transform(0.7);
        const Complex z = rng.next_disc(0.8);
        // lambda = 2 collapses the power to the plain derivative
        CHECK(std::abs(moebius::cocycle_eval(2.0, phi, z) - phi.derivative(z)) < 1e-13);
        CHECK(std::abs(moebius::cocycle_eval(0.75, phi, z)) > 0.0);
    }

    const auto rot = MoebiusTransform::rotation(1.3);
    for (Complex z : {Complex(0.0), Complex(0.4, -0.3)}) {
        CHECK(std::abs(moebius::cocycle_eval(1.0, rot, z) - std::exp(0.5 * 1.3 * kI)) < 1e-15);
    }

    CHECK_THROWS_AS(moebius::cocycle_eval(-1.0, id, 0.0), std::invalid_argument);
}

TEST_CASE("group laws hold pointwise on random triples") {
    sweeps::Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = rng.next_transform(0.6);
        const auto g = rng.next_transform(0.6);
        const auto h = rng.next_transform(0.6);
        const auto assoc_left = moebius::compose(moebius::compose(f, g), h);
        const auto assoc_right = moebius::compose(f, moebius::compose(g, h));
        const Complex z = rng.next_disc(0.8);
        CHECK(std::abs(assoc_left(z) - assoc_right(z)) < 1e-12);
        CHECK(std::abs(moebius::compose(f, f.inverse())(z) - z) < 1e-12);
        CHECK(std::abs(f.inverse()(f(z)) - z) < 1e-12);
    }
}

TEST_CASE("chain rule and branch consistency") {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    sweeps::Rng rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        const auto f = rng.next_transform(0.6);
        const auto g = rng.next_transform(0.6);
        const auto fg = moebius::compose(f, g);

        const Complex z0 = rng.next_disc(0.8);
        CHECK(std::abs(fg.derivative(z0) - f.derivative(g(z0)) * g.derivative(z0)) < 1e-12);

        // the branch gap is a z-independent multiple of 2 pi i
        const auto gap = [&](Complex z) {
            return fg.log_derivative(z) - f.log_derivative(g(z)) - g.log_derivative(z);
        };
        const Complex base = gap(z0);
        const double cycles = base.imag() / kTwoPi;
        CHECK(std::abs(base.real()) < 1e-12);
        CHECK(std::abs(cycles - std::round(cycles)) < 1e-10);
        for (int i = 0; i < 8; ++i) {
            CHECK(std::abs(gap(rng.next_disc(0.8)) - base) < 1e-10);
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(MoebiusTransform(0.3, Complex(0.8, 0.7)), std::domain_error);
    CHECK(MoebiusTransform(-1.0, 0.0).theta() ==
          doctest::Approx(2.0 * std::numbers::pi - 1.0).epsilon(1e-15));
    CHECK(MoebiusTransform().is_identity());
    CHECK_FALSE(MoebiusTransform(0.1, 0.0).is_identity());
}
