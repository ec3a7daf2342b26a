#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "su11/gaussian.hpp"

using namespace su11;

namespace {

constexpr double kPi = std::numbers::pi;

// Deterministic generator for property-style checks.
std::mt19937& rng() {
    static std::mt19937 gen(0xC0FFEE);
    return gen;
}

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

BogoliubovTransform random_transform(std::size_t modes) {
    std::uniform_int_distribution<std::size_t> pick(0, modes - 1);
    Matrix m = Matrix::Identity(2 * modes, 2 * modes);
    BogoliubovTransform w(modes, m);
    for (int step = 0; step < 4; ++step) {
        std::size_t i = pick(rng());
        std::size_t j = pick(rng());
        if (i == j) {
            w = phase_shifter(uniform(0.0, 2 * kPi), modes, i) * w;
        } else {
            w = two_mode_squeezer(SqueezeParam(uniform(0.0, 0.8), uniform(0.0, 2 * kPi)),
                                  modes, i, j) * w;
        }
    }
    return w;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("vacuum covariance is I/2") {
    const auto v2 = vacuum(2);
    CHECK(v2.modes() == 2);
    CHECK(max_abs(v2.cov() - 0.5 * Matrix::Identity(4, 4)) == 0.0);

    const auto v1 = vacuum(1);
    CHECK(max_abs(v1.cov() - 0.5 * Matrix::Identity(2, 2)) == 0.0);

    for (double n : intensity(vacuum(3))) CHECK(n == doctest::Approx(0.0).epsilon(1e-15));

    CHECK_THROWS_AS(vacuum(0), std::invalid_argument);
}

TEST_CASE("two-mode squeezer basics") {
    SUBCASE("r = 0 is the identity") {
        const auto w = two_mode_squeezer(SqueezeParam(0.0, 0.3), 2, 0, 1);
        CHECK(max_abs(w.mat() - Matrix::Identity(4, 4)) == 0.0);
    }
    SUBCASE("squeezed vacuum intensity is sinh^2(r)") {
        const auto s = apply(two_mode_squeezer(SqueezeParam(0.1, 0.0), 2, 0, 1), vacuum(2));
        const auto n = intensity(s);
        // sinh^2(0.1)
        CHECK(n[0] == doctest::Approx(0.0100333778095379).epsilon(1e-12));
        CHECK(n[1] == doctest::Approx(0.0100333778095379).epsilon(1e-12));

        const auto s5 = apply(two_mode_squeezer(SqueezeParam(0.5, 0.0), 2, 0, 1), vacuum(2));
        const double expect = std::pow(std::sinh(0.5), 2);
        CHECK(intensity(s5)[0] == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("bad indices rejected") {
        CHECK_THROWS_AS(two_mode_squeezer(SqueezeParam(0.1), 2, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(two_mode_squeezer(SqueezeParam(0.1), 2, 0, 2), std::invalid_argument);
    }
    SUBCASE("metric preserved for arbitrary pump phase") {
        const Matrix k = metric(3);
        for (double theta : {0.0, 0.7, kPi / 2, 4.0}) {
            const auto w = two_mode_squeezer(SqueezeParam(0.6, theta), 3, 0, 2);
            CHECK(max_abs(w.mat() * k * w.mat().adjoint() - k) < 1e-10);
        }
    }
}

TEST_CASE("phase shifter basics") {
    SUBCASE("phi = 0 is the identity") {
        const auto u = phase_shifter(0.0, 2, 0);
        CHECK(max_abs(u.mat() - Matrix::Identity(4, 4)) == 0.0);
    }
    SUBCASE("phi = pi flips the mode") {
        const auto u = phase_shifter(kPi, 1, 0);
        CHECK(u.mat()(0, 0).real() == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(u.mat()(1, 1).real() == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(std::abs(u.mat()(0, 0).imag()) < 1e-15);
    }
    SUBCASE("intensities invariant under any phase") {
        const auto s = apply(two_mode_squeezer(SqueezeParam(0.4, 1.2), 2, 0, 1), vacuum(2));
        const auto before = intensity(s);
        for (double phi : {kPi / 2, 0.123, 2.9}) {
            const auto after = intensity(apply(phase_shifter(phi, 2, 0), s));
            CHECK(after[0] == doctest::Approx(before[0]).epsilon(1e-12));
            CHECK(after[1] == doctest::Approx(before[1]).epsilon(1e-12));
        }
    }
    SUBCASE("index out of range") {
        CHECK_THROWS_AS(phase_shifter(0.1, 2, 2), std::invalid_argument);
    }
}

TEST_CASE("phase shifter derivative") {
    SUBCASE("phi = 0 block is diag(i, -i)") {
        const Matrix d = phase_shifter_derivative(0.0, 1, 0);
        CHECK(std::abs(d(0, 0) - Complex(0, 1)) < 1e-15);
        CHECK(std::abs(d(1, 1) - Complex(0, -1)) < 1e-15);
    }
    SUBCASE("matches central finite difference") {
        const double h = 1e-6;
        for (double phi : {0.0, 0.4, kPi / 3, 5.0}) {
            const Matrix fd =
                (phase_shifter(phi + h, 2, 1).mat() - phase_shifter(phi - h, 2, 1).mat()) /
                (2 * h);
            CHECK(max_abs(phase_shifter_derivative(phi, 2, 1) - fd) < 1e-9);
        }
    }
    SUBCASE("product rule for a double application") {
        const double phi = 0.83;
        const double h = 1e-6;
        const auto prod = [](double p) {
            const Matrix u = phase_shifter(p, 1, 0).mat();
            return Matrix(u * u);
        };
        const Matrix u = phase_shifter(phi, 1, 0).mat();
        const Matrix du = phase_shifter_derivative(phi, 1, 0);
        const Matrix analytic = du * u + u * du;
        const Matrix fd = (prod(phi + h) - prod(phi - h)) / (2 * h);
        CHECK(max_abs(analytic - fd) < 1e-9);
    }
}

TEST_CASE("apply") {
    const auto s = apply(two_mode_squeezer(SqueezeParam(0.3, 0.0), 2, 0, 1), vacuum(2));

    SUBCASE("identity leaves the state unchanged") {
        const auto t = apply(BogoliubovTransform::identity(2), s);
        CHECK(max_abs(t.cov() - s.cov()) < 1e-15);
    }
    SUBCASE("inverse squeezer restores the vacuum") {
        const auto t = apply(two_mode_squeezer(SqueezeParam(-0.3, 0.0), 2, 0, 1), s);
        CHECK(max_abs(t.cov() - 0.5 * Matrix::Identity(4, 4)) < 1e-12);
    }
    SUBCASE("same-phase squeezers compose additively") {
        const auto twice = apply(two_mode_squeezer(SqueezeParam(0.3, 0.0), 2, 0, 1), s);
        const auto direct = apply(two_mode_squeezer(SqueezeParam(0.6, 0.0), 2, 0, 1), vacuum(2));
        CHECK(max_abs(twice.cov() - direct.cov()) < 1e-12);
    }
    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(apply(BogoliubovTransform::identity(3), s), std::invalid_argument);
    }
}

TEST_CASE("apply_loss") {
    const auto s = apply(two_mode_squeezer(SqueezeParam(0.1, 0.0), 2, 0, 1), vacuum(2));

    SUBCASE("eta = 0 is the identity channel") {
        CHECK(max_abs(apply_loss(LossChannel(0.0), s).cov() - s.cov()) == 0.0);
    }
    SUBCASE("eta = 1 resets to vacuum") {
        const auto t = apply_loss(LossChannel(1.0), s);
        CHECK(max_abs(t.cov() - 0.5 * Matrix::Identity(4, 4)) == 0.0);
    }
    SUBCASE("half loss halves the photon number") {
        const auto t = apply_loss(LossChannel(0.5), s);
        // 0.5 * sinh^2(0.1)
        CHECK(intensity(t)[0] == doctest::Approx(0.00501668890476896).epsilon(1e-12));
    }
    SUBCASE("contraction toward vacuum is exactly linear") {
        const Matrix center = 0.5 * Matrix::Identity(4, 4);
        for (double eta : {0.15, 0.6, 0.93}) {
            const auto t = apply_loss(LossChannel(eta), s);
            const double before = (s.cov() - center).norm();
            const double after = (t.cov() - center).norm();
            CHECK(after == doctest::Approx((1.0 - eta) * before).epsilon(1e-14));
        }
    }
    SUBCASE("eta outside [0, 1] rejected") {
        CHECK_THROWS_AS(LossChannel(-0.1), std::invalid_argument);
        CHECK_THROWS_AS(LossChannel(1.1), std::invalid_argument);
    }
}

TEST_CASE("symplectic eigenvalues") {
    SUBCASE("vacuum gives all 1/2") {
        for (double nu : symplectic_eigenvalues(vacuum(3))) {
            CHECK(nu == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    SUBCASE("pure squeezed states stay at 1/2") {
        const auto s = apply(random_transform(3), vacuum(3));
        for (double nu : symplectic_eigenvalues(s)) {
            CHECK(nu == doctest::Approx(0.5).epsilon(1e-9));
        }
    }
    SUBCASE("loss lifts the spectrum into (1/2, cosh(2r)/2)") {
        const double r = 0.3;
        const auto s = apply(two_mode_squeezer(SqueezeParam(r, 0.0), 2, 0, 1), vacuum(2));
        const auto t = apply_loss(LossChannel(0.4), s);
        for (double nu : symplectic_eigenvalues(t)) {
            CHECK(nu > 0.5);
            CHECK(nu < std::cosh(2 * r) / 2);
        }
    }
}

TEST_CASE("SqueezeParam canonicalization") {
    const SqueezeParam g(-0.25, 0.4);
    CHECK(g.r() == doctest::Approx(0.25));
    CHECK(g.theta() == doctest::Approx(0.4 + kPi));

    // S(-r) is the same transform as S(r, theta + pi)
    const auto a = two_mode_squeezer(SqueezeParam(-0.25, 0.4), 2, 0, 1);
    const auto b = two_mode_squeezer(SqueezeParam(0.25, 0.4 + kPi), 2, 0, 1);
    CHECK(max_abs(a.mat() - b.mat()) < 1e-15);

    const SqueezeParam folded(0.1, 2 * kPi + 0.3);
    CHECK(folded.theta() == doctest::Approx(0.3));

    CHECK_THROWS_AS(SqueezeParam(std::nan("")), std::invalid_argument);
}

TEST_CASE("state validation") {
    Matrix bad = 0.5 * Matrix::Identity(4, 4);
    bad(0, 1) = Complex(0.1, 0.0);  // not mirrored below
    CHECK_THROWS_AS(GaussianState(2, bad), std::invalid_argument);

    Matrix low = 0.5 * Matrix::Identity(4, 4);
    low(0, 0) = 0.4;  // photon number would be negative
    CHECK_THROWS_AS(GaussianState(2, low), std::invalid_argument);

    CHECK_THROWS_AS(GaussianState(2, Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("metric preservation under composition") {
    for (int trial = 0; trial < 8; ++trial) {
        const auto w1 = random_transform(3);
        const auto w2 = random_transform(3);
        const auto prod = w2 * w1;
        const Matrix k = metric(3);
        CHECK(max_abs(prod.mat() * k * prod.mat().adjoint() - k) < 1e-10);
    }

    // A sign flip inside the squeezer block breaks the metric.
    Matrix broken = two_mode_squeezer(SqueezeParam(0.4, 0.0), 2, 0, 1).mat();
    broken(0, 3) = -broken(0, 3);
    CHECK_THROWS_AS(BogoliubovTransform(2, broken), std::invalid_argument);
}

TEST_CASE("composition law") {
    for (int trial = 0; trial < 6; ++trial) {
        const auto w1 = random_transform(2);
        const auto w2 = random_transform(2);
        const auto s = apply(random_transform(2), vacuum(2));
        const auto chained = apply(w2, apply(w1, s));
        const auto fused = apply(w2 * w1, s);
        CHECK(max_abs(chained.cov() - fused.cov()) < 1e-10);
    }
}

TEST_CASE("apply keeps states physical") {
    for (int trial = 0; trial < 6; ++trial) {
        const auto s = apply(random_transform(3), vacuum(3));
        const Matrix& c = s.cov();
        CHECK(max_abs(Matrix(c - c.adjoint())) < 1e-12);
        CHECK(symplectic_eigenvalues(s).front() > 0.5 - 1e-9);
        for (double n : intensity(s)) CHECK(n >= -1e-12);
    }
}

TEST_CASE("reduce_to_modes extracts marginals") {
    const auto s = apply(two_mode_squeezer(SqueezeParam(0.2, 0.0), 3, 0, 2), vacuum(3));
    const auto m0 = reduce_to_modes(s, {0});
    CHECK(m0.modes() == 1);
    CHECK(m0.cov()(0, 0).real() == doctest::Approx(s.cov()(0, 0).real()));
    const auto m1 = reduce_to_modes(s, {1});
    CHECK(max_abs(m1.cov() - 0.5 * Matrix::Identity(2, 2)) < 1e-12);  // untouched mode
    CHECK_THROWS_AS(reduce_to_modes(s, {3}), std::invalid_argument);
    CHECK_THROWS_AS(reduce_to_modes(s, std::vector<std::size_t>{}), std::invalid_argument);
}
