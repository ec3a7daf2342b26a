#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "su11/qfi.hpp"
#include "su11/schemes.hpp"

using namespace su11;

namespace {

constexpr double kPi = std::numbers::pi;

SchemeConfig make(SchemeKind kind, double r, unsigned loops, double eta = 0.0, unsigned k = 1) {
    SchemeConfig cfg;
    cfg.kind = kind;
    cfg.r = r;
    cfg.loops = loops;
    cfg.eta = eta;
    cfg.swap_interval = k;
    return cfg;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double mode1_intensity(const SchemeOutput& out) { return intensity(out.state)[0]; }

}  // namespace

TEST_CASE("standard scheme") {
    SUBCASE("phi = 0 undoes the squeezing") {
        const auto out = build_standard(make(SchemeKind::standard, 0.1, 1), 0.0);
        CHECK(max_abs(out.state.cov() - 0.5 * Matrix::Identity(4, 4)) < 1e-14);
    }
    SUBCASE("r = 0 stays vacuum with zero derivative") {
        for (double phi : {0.0, 0.9, kPi}) {
            const auto out = build_standard(make(SchemeKind::standard, 0.0, 1), phi);
            CHECK(max_abs(out.state.cov() - 0.5 * Matrix::Identity(4, 4)) < 1e-14);
            CHECK(max_abs(out.dstate) < 1e-14);
        }
    }
    SUBCASE("output intensity is sinh^2(2r) sin^2(phi/2) in each mode") {
        const double r = 0.1;
        for (int i = 0; i < 12; ++i) {
            const double phi = 2 * kPi * i / 12;
            const auto n = intensity(build_standard(make(SchemeKind::standard, r, 1), phi).state);
            const double expect = std::pow(std::sinh(2 * r) * std::sin(phi / 2), 2);
            CHECK(n[0] == doctest::Approx(expect).epsilon(1e-10));
            CHECK(n[1] == doctest::Approx(expect).epsilon(1e-10));
        }
    }
    SUBCASE("loop count is fixed at one") {
        CHECK_THROWS_AS(build_standard(make(SchemeKind::standard, 0.1, 2), 0.0),
                        std::invalid_argument);
    }
    SUBCASE("kind mismatch rejected") {
        CHECK_THROWS_AS(build_standard(make(SchemeKind::sequential, 0.1, 1), 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("sequential scheme") {
    SUBCASE("one loop at phi = 0 composes to S(2r)") {
        const auto out = build_sequential(make(SchemeKind::sequential, 0.1, 1), 0.0);
        const double expect = std::pow(std::sinh(0.2), 2);
        CHECK(mode1_intensity(out) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("N = 0 rejected") {
        CHECK_THROWS_AS(build_sequential(make(SchemeKind::sequential, 0.1, 0), 0.0),
                        std::invalid_argument);
    }
    SUBCASE("both modes carry equal intensity") {
        for (unsigned n : {1u, 3u, 7u, 12u}) {
            for (double phi : {0.0, 0.7, kPi / 4, 2.2}) {
                const auto in =
                    intensity(build_sequential(make(SchemeKind::sequential, 0.17, n), phi).state);
                CHECK(std::abs(in[0] - in[1]) < 1e-10);
            }
        }
    }
    SUBCASE("intensity oscillates at phi = pi/4") {
        // Rises to a first maximum, falls toward a deep minimum, rises again.
        std::vector<double> series;
        for (unsigned n = 1; n <= 14; ++n) {
            series.push_back(
                mode1_intensity(build_sequential(make(SchemeKind::sequential, 0.1, n), kPi / 4)));
        }
        CHECK(series[4] > series[3]);  // peak at N = 5
        CHECK(series[5] < series[4]);
        CHECK(series[8] < 0.01 * series[4]);  // near-vacuum trough at N = 9
        CHECK(series[13] > series[8]);        // recovers
    }
}

TEST_CASE("partial scheme") {
    SUBCASE("single loop equals the sequential scheme") {
        for (double phi : {0.0, 0.6, kPi / 4}) {
            const auto p = build_partial(make(SchemeKind::partial, 0.1, 1), phi);
            const auto s = build_sequential(make(SchemeKind::sequential, 0.1, 1), phi);
            CHECK(p.mode_count() == 2);
            CHECK(max_abs(p.state.cov() - s.state.cov()) < 1e-14);
            CHECK(max_abs(p.dstate - s.dstate) < 1e-14);
        }
    }
    SUBCASE("N = 0 rejected") {
        CHECK_THROWS_AS(build_partial(make(SchemeKind::partial, 0.1, 0), 0.0),
                        std::invalid_argument);
    }
    SUBCASE("mode-1 intensity grows with N and falls with phi") {
        double prev = -1.0;
        for (unsigned n = 1; n <= 8; ++n) {
            const double cur =
                mode1_intensity(build_partial(make(SchemeKind::partial, 0.1, n), kPi / 4));
            CHECK(cur > prev);
            prev = cur;
        }
        double prev_phi = 1e300;
        for (double phi : {kPi / 8, kPi / 4, kPi / 2, 3 * kPi / 4}) {
            const double cur =
                mode1_intensity(build_partial(make(SchemeKind::partial, 0.1, 3), phi));
            CHECK(cur < prev_phi);
            prev_phi = cur;
        }
    }
    SUBCASE("mode count is N + 1") {
        CHECK(build_partial(make(SchemeKind::partial, 0.1, 4), 0.3).mode_count() == 5);
    }
    SUBCASE("mode-1 marginal unchanged by extra untouched modes") {
        // Rebuild the same circuit embedded in a larger register whose
        // trailing modes are never touched; the fed-back mode's marginal
        // must not notice.
        const unsigned n_loops = 3;
        const double phi = kPi / 4;
        const auto direct = build_partial(make(SchemeKind::partial, 0.1, n_loops), phi);

        const std::size_t modes = n_loops + 1 + 2;  // two spare vacuum modes
        GaussianState s = vacuum(modes);
        for (unsigned j = 1; j <= n_loops; ++j) {
            const auto sq = two_mode_squeezer(SqueezeParam(0.1, 0.0), modes, 0, j);
            s = apply(sq, s);
            s = apply(phase_shifter(phi, modes, 0), s);
            s = apply(sq, s);
        }
        const auto a = mode_marginal(direct.state, 0);
        const auto b = mode_marginal(s, 0);
        CHECK(max_abs(a.cov() - b.cov()) < 1e-12);
    }
}

TEST_CASE("swapping scheme") {
    SUBCASE("k >= N degenerates to the sequential scheme") {
        for (unsigned k : {4u, 5u, 9u}) {
            const auto sw = build_swapping(make(SchemeKind::swapping, 0.1, 4, 0.0, k), 0.77);
            const auto sq = build_sequential(make(SchemeKind::sequential, 0.1, 4), 0.77);
            CHECK(max_abs(sw.state.cov() - sq.state.cov()) == 0.0);
            CHECK(max_abs(sw.dstate - sq.dstate) == 0.0);
        }
    }
    SUBCASE("invalid k rejected") {
        CHECK_THROWS_AS(build_swapping(make(SchemeKind::swapping, 0.1, 4, 0.0, 0), 0.0),
                        std::invalid_argument);
    }
    SUBCASE("swapping beats the sequential scheme at the matched phase") {
        const auto sw = build_swapping(make(SchemeKind::swapping, 0.1, 8, 0.0, 4), kPi / 4);
        const auto sq = build_sequential(make(SchemeKind::sequential, 0.1, 8), kPi / 4);
        CHECK(mode1_intensity(sw) > mode1_intensity(sq));
    }
    SUBCASE("intensity concentrates near the matched phase") {
        const auto at = [&](double phi) {
            const auto n =
                intensity(build_swapping(make(SchemeKind::swapping, 0.1, 16, 0.0, 4), phi).state);
            return n[0] + n[1];
        };
        const double matched = at(kPi / 4);
        CHECK(matched > 20.0);
        CHECK(at(kPi / 2) < 0.01 * matched);
        CHECK(at(3 * kPi / 4) < 0.05 * matched);
    }
}

TEST_CASE("analytic derivative vs finite differences") {
    const auto check_cfg = [](const SchemeConfig& cfg) {
        for (int i = 0; i < 8; ++i) {
            const double phi = 2 * kPi * i / 8;
            const auto out = build_scheme(cfg, phi);
            const Matrix fd = finite_difference_dstate(cfg, phi, 1e-5);
            // Resolution limit of the central difference; at symmetry points
            // where the derivative vanishes both estimates sit below it.
            const double noise =
                256 * std::numeric_limits<double>::epsilon() * out.state.cov().norm() / 1e-5;
            const bool agree = (out.dstate - fd).norm() < 1e-6 * out.dstate.norm();
            const bool both_zero = out.dstate.norm() <= noise && fd.norm() <= noise;
            CHECK((agree || both_zero));
        }
    };
    check_cfg(make(SchemeKind::standard, 0.1, 1));
    check_cfg(make(SchemeKind::sequential, 0.1, 6));
    check_cfg(make(SchemeKind::partial, 0.1, 5));
    check_cfg(make(SchemeKind::swapping, 0.1, 7, 0.0, 3));
    check_cfg(make(SchemeKind::sequential, 0.1, 4, 0.35));  // derivative through loss
}

TEST_CASE("dstate is Hermitian") {
    for (SchemeKind kind : {SchemeKind::standard, SchemeKind::sequential, SchemeKind::partial,
                            SchemeKind::swapping}) {
        const unsigned loops = kind == SchemeKind::standard ? 1 : 5;
        const auto out = build_scheme(make(kind, 0.12, loops, 0.0, 2), 0.9);
        CHECK(max_abs(Matrix(out.dstate - out.dstate.adjoint())) < 1e-10);
    }
}

TEST_CASE("lossless outputs are pure") {
    for (SchemeKind kind : {SchemeKind::standard, SchemeKind::sequential, SchemeKind::partial,
                            SchemeKind::swapping}) {
        const unsigned loops = kind == SchemeKind::standard ? 1 : 6;
        const auto out = build_scheme(make(kind, 0.1, loops, 0.0, 4), kPi / 4);
        for (double nu : symplectic_eigenvalues(out.state)) {
            CHECK(nu == doctest::Approx(0.5).epsilon(1e-9));
        }
    }
}

TEST_CASE("blocked builders match the dense reference") {
    for (SchemeKind kind : {SchemeKind::standard, SchemeKind::sequential, SchemeKind::partial,
                            SchemeKind::swapping}) {
        for (double eta : {0.0, 0.25}) {
            const unsigned loops = kind == SchemeKind::standard ? 1 : 6;
            const auto cfg = make(kind, 0.14, loops, eta, 2);
            for (double phi : {0.0, 0.9, kPi / 4}) {
                const auto fast = build_scheme(cfg, phi);
                const auto ref = build_scheme_reference(cfg, phi);
                CHECK(max_abs(fast.state.cov() - ref.state.cov()) < 1e-13);
                CHECK(max_abs(fast.dstate - ref.dstate) < 1e-13);
            }
        }
    }
}

TEST_CASE("estimate_period") {
    SUBCASE("finds the first intensity maximum") {
        // r = 0.1: the scan peaks at N = 5 for phi = pi/4 and N = 2 for pi/2,
        // tracking the slower oscillation at smaller phase.
        CHECK(estimate_period(make(SchemeKind::sequential, 0.1, 1), kPi / 4, 32) == 5);
        CHECK(estimate_period(make(SchemeKind::sequential, 0.1, 1), kPi / 2, 32) == 2);
    }
    SUBCASE("small phase never turns over within the scan") {
        CHECK_THROWS_AS(estimate_period(make(SchemeKind::sequential, 0.1, 1), kPi / 8, 64),
                        PeriodNotResolvedError);
        CHECK_THROWS_AS(estimate_period(make(SchemeKind::sequential, 0.1, 1), 0.01, 64),
                        PeriodNotResolvedError);
    }
    SUBCASE("only sequential configs accepted") {
        CHECK_THROWS_AS(estimate_period(make(SchemeKind::partial, 0.1, 1), kPi / 4, 32),
                        std::invalid_argument);
    }
}

TEST_CASE("first_intensity_peak on synthetic series") {
    using detail::first_intensity_peak;
    SUBCASE("monotone series has no peak") {
        CHECK(!first_intensity_peak({0.0, 0.1, 0.2, 0.3, 0.4}).has_value());
    }
    SUBCASE("plain peak") {
        CHECK(first_intensity_peak({0.0, 0.1, 0.3, 0.2}) == 2u);
    }
    SUBCASE("plateau resolves to its smallest index") {
        CHECK(first_intensity_peak({0.0, 0.1, 0.3, 0.3, 0.3, 0.2}) == 2u);
    }
    SUBCASE("plateau that keeps rising is not a peak") {
        CHECK(first_intensity_peak({0.0, 0.1, 0.3, 0.3, 0.5, 0.6}) == std::nullopt);
    }
    SUBCASE("falling start cannot be a peak without a rise") {
        CHECK(first_intensity_peak({0.5, 0.4, 0.3, 0.2}) == std::nullopt);
    }
}

TEST_CASE("loss interleaving matches the channel semantics") {
    // One lossy loop equals the lossless loop followed by apply_loss.
    const auto lossy = build_sequential(make(SchemeKind::sequential, 0.2, 1, 0.3), 0.8);
    const auto pure = build_sequential(make(SchemeKind::sequential, 0.2, 1, 0.0), 0.8);
    const auto chained = apply_loss(LossChannel(0.3), pure.state);
    CHECK(max_abs(lossy.state.cov() - chained.cov()) < 1e-14);
}
