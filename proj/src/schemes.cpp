#include "su11/schemes.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace su11 {

namespace {

using Eigen::Index;
using Matrix4 = Eigen::Matrix4cd;

// Active 4x4 part of one S(g2) U(phi) S(g1) pass on a mode pair, with the
// phase shifter on the first mode of the pair, plus its phi-derivative.
struct LoopBlock {
    Matrix4 b;
    Matrix4 db;
};

Matrix4 squeezer4(const SqueezeParam& g) {
    const double ch = std::cosh(g.r());
    const double sh = std::sinh(g.r());
    const Complex phase = std::polar(1.0, g.theta());
    Matrix4 s = Matrix4::Identity();
    s(0, 0) = ch;
    s(1, 1) = ch;
    s(2, 2) = ch;
    s(3, 3) = ch;
    s(0, 3) = -phase * sh;
    s(1, 2) = -std::conj(phase) * sh;
    s(2, 1) = -phase * sh;
    s(3, 0) = -std::conj(phase) * sh;
    return s;
}

LoopBlock make_block(const SqueezeParam& g1, const SqueezeParam& g2, double phi) {
    const Matrix4 s1 = squeezer4(g1);
    const Matrix4 s2 = squeezer4(g2);
    Matrix4 u = Matrix4::Identity();
    u(0, 0) = std::polar(1.0, phi);
    u(1, 1) = std::polar(1.0, -phi);
    Matrix4 du = Matrix4::Zero();
    du(0, 0) = Complex(0.0, 1.0) * std::polar(1.0, phi);
    du(1, 1) = Complex(0.0, -1.0) * std::polar(1.0, -phi);
    return LoopBlock{s2 * u * s1, s2 * du * s1};
}

// sigma <- B sigma B^dag and dsigma <- B dsigma B^dag + B' sigma B^dag + h.c.
// for B identity outside the 4x4 block on modes (i, j). Only the four
// affected rows/columns are touched, so a loop costs O(modes) not O(modes^3).
void advance(Matrix& sigma, Matrix& dsigma, const LoopBlock& blk, std::size_t i, std::size_t j) {
    const std::array<Index, 4> rows = {static_cast<Index>(2 * i), static_cast<Index>(2 * i + 1),
                                       static_cast<Index>(2 * j), static_cast<Index>(2 * j + 1)};
    const auto all = Eigen::all;

    // B' sigma B^dag from the still-unmodified sigma; B' vanishes off-block.
    Matrix p = blk.db * sigma(rows, all);
    {
        Eigen::Matrix4cd t = p(all, rows) * blk.b.adjoint();
        p(all, rows) = t;
    }

    {
        Matrix t = blk.b * dsigma(rows, all);
        dsigma(rows, all) = t;
    }
    {
        Matrix t = dsigma(all, rows) * blk.b.adjoint();
        dsigma(all, rows) = t;
    }
    dsigma(rows, all) += p;
    dsigma(all, rows) += p.adjoint();

    {
        Matrix t = blk.b * sigma(rows, all);
        sigma(rows, all) = t;
    }
    {
        Matrix t = sigma(all, rows) * blk.b.adjoint();
        sigma(all, rows) = t;
    }

    detail::hermitize(sigma);
    detail::hermitize(dsigma);
}

void advance_loss(Matrix& sigma, Matrix& dsigma, double eta) {
    if (eta == 0.0) return;
    const double t = 1.0 - eta;
    sigma *= t;
    sigma.diagonal().array() += 0.5 * (1.0 - t);
    dsigma *= t;
}

SchemeOutput finish(std::size_t modes, Matrix sigma, Matrix dsigma) {
    detail::hermitize(dsigma);
    return SchemeOutput{GaussianState(modes, std::move(sigma)), std::move(dsigma)};
}

void check_common(const SchemeConfig& cfg, SchemeKind expected) {
    if (cfg.kind != expected) {
        throw std::invalid_argument("scheme builder: config kind mismatch");
    }
    if (!std::isfinite(cfg.r) || !std::isfinite(cfg.theta1) || !std::isfinite(cfg.theta2)) {
        throw std::invalid_argument("scheme builder: parameters must be finite");
    }
    if (!(cfg.eta >= 0.0 && cfg.eta <= 1.0)) {
        throw std::invalid_argument("scheme builder: eta must lie in [0, 1]");
    }
}

}  // namespace

const char* to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::standard: return "standard";
        case SchemeKind::sequential: return "sequential";
        case SchemeKind::partial: return "partial";
        case SchemeKind::swapping: return "swapping";
    }
    return "?";
}

std::optional<SchemeKind> scheme_from_string(std::string_view name) {
    if (name == "standard") return SchemeKind::standard;
    if (name == "sequential") return SchemeKind::sequential;
    if (name == "partial") return SchemeKind::partial;
    if (name == "swapping") return SchemeKind::swapping;
    return std::nullopt;
}

SchemeOutput build_standard(const SchemeConfig& cfg, double phi) {
    check_common(cfg, SchemeKind::standard);
    if (cfg.loops != 1) {
        throw std::invalid_argument("build_standard: the standard scheme fixes N = 1");
    }
    const SqueezeParam g1(cfg.r, cfg.theta1);
    const SqueezeParam g2(cfg.r, cfg.theta1 + std::numbers::pi);  // Gamma2 = -Gamma1
    Matrix sigma = 0.5 * Matrix::Identity(4, 4);
    Matrix dsigma = Matrix::Zero(4, 4);
    advance(sigma, dsigma, make_block(g1, g2, phi), 0, 1);
    advance_loss(sigma, dsigma, cfg.eta);
    return finish(2, std::move(sigma), std::move(dsigma));
}

SchemeOutput build_sequential(const SchemeConfig& cfg, double phi) {
    check_common(cfg, SchemeKind::sequential);
    if (cfg.loops == 0) {
        throw std::invalid_argument("build_sequential: N must be >= 1");
    }
    const LoopBlock blk = make_block(SqueezeParam(cfg.r, cfg.theta1),
                                     SqueezeParam(cfg.r, cfg.theta2), phi);
    Matrix sigma = 0.5 * Matrix::Identity(4, 4);
    Matrix dsigma = Matrix::Zero(4, 4);
    for (unsigned n = 0; n < cfg.loops; ++n) {
        advance(sigma, dsigma, blk, 0, 1);
        advance_loss(sigma, dsigma, cfg.eta);
    }
    return finish(2, std::move(sigma), std::move(dsigma));
}

SchemeOutput build_partial(const SchemeConfig& cfg, double phi) {
    check_common(cfg, SchemeKind::partial);
    if (cfg.loops == 0) {
        throw std::invalid_argument("build_partial: N must be >= 1");
    }
    const std::size_t modes = cfg.loops + 1;
    const Index dim = static_cast<Index>(2 * modes);
    const LoopBlock blk = make_block(SqueezeParam(cfg.r, cfg.theta1),
                                     SqueezeParam(cfg.r, cfg.theta2), phi);
    Matrix sigma = 0.5 * Matrix::Identity(dim, dim);
    Matrix dsigma = Matrix::Zero(dim, dim);
    for (unsigned n = 0; n < cfg.loops; ++n) {
        advance(sigma, dsigma, blk, 0, n + 1);
        advance_loss(sigma, dsigma, cfg.eta);
    }
    return finish(modes, std::move(sigma), std::move(dsigma));
}

SchemeOutput build_swapping(const SchemeConfig& cfg, double phi) {
    check_common(cfg, SchemeKind::swapping);
    if (cfg.loops == 0) {
        throw std::invalid_argument("build_swapping: N must be >= 1");
    }
    if (cfg.swap_interval == 0) {
        throw std::invalid_argument("build_swapping: swap interval k must be >= 1");
    }
    const LoopBlock plus = make_block(SqueezeParam(cfg.r, cfg.theta1),
                                      SqueezeParam(cfg.r, cfg.theta2), phi);
    const LoopBlock minus = make_block(SqueezeParam(cfg.r, cfg.theta1 + std::numbers::pi),
                                       SqueezeParam(cfg.r, cfg.theta2 + std::numbers::pi), phi);
    Matrix sigma = 0.5 * Matrix::Identity(4, 4);
    Matrix dsigma = Matrix::Zero(4, 4);
    for (unsigned n = 0; n < cfg.loops; ++n) {
        const bool flipped = ((n / cfg.swap_interval) % 2) == 1;
        advance(sigma, dsigma, flipped ? minus : plus, 0, 1);
        advance_loss(sigma, dsigma, cfg.eta);
    }
    return finish(2, std::move(sigma), std::move(dsigma));
}

SchemeOutput build_scheme(const SchemeConfig& cfg, double phi) {
    switch (cfg.kind) {
        case SchemeKind::standard: return build_standard(cfg, phi);
        case SchemeKind::sequential: return build_sequential(cfg, phi);
        case SchemeKind::partial: return build_partial(cfg, phi);
        case SchemeKind::swapping: return build_swapping(cfg, phi);
    }
    throw std::invalid_argument("build_scheme: unknown scheme kind");
}

SchemeOutput build_scheme_reference(const SchemeConfig& cfg, double phi) {
    // Full-size matrices through the gaussian-core operations; one loop is
    // sigma -> W sigma W^dag with W = S(g2) U(phi) S(g1) on the active pair.
    std::size_t modes = 2;
    if (cfg.kind == SchemeKind::partial) {
        if (cfg.loops == 0) throw std::invalid_argument("build_partial: N must be >= 1");
        modes = cfg.loops + 1;
    }
    if (cfg.kind == SchemeKind::standard && cfg.loops != 1) {
        throw std::invalid_argument("build_standard: the standard scheme fixes N = 1");
    }
    if (cfg.loops == 0) {
        throw std::invalid_argument("scheme builder: N must be >= 1");
    }
    if (cfg.kind == SchemeKind::swapping && cfg.swap_interval == 0) {
        throw std::invalid_argument("build_swapping: swap interval k must be >= 1");
    }
    check_common(cfg, cfg.kind);

    const Index dim = static_cast<Index>(2 * modes);
    Matrix sigma = 0.5 * Matrix::Identity(dim, dim);
    Matrix dsigma = Matrix::Zero(dim, dim);
    const LossChannel loss(cfg.eta);

    for (unsigned n = 0; n < cfg.loops; ++n) {
        double t1 = cfg.theta1;
        double t2 = (cfg.kind == SchemeKind::standard) ? cfg.theta1 + std::numbers::pi : cfg.theta2;
        if (cfg.kind == SchemeKind::swapping && ((n / cfg.swap_interval) % 2) == 1) {
            t1 += std::numbers::pi;
            t2 += std::numbers::pi;
        }
        const std::size_t partner = (cfg.kind == SchemeKind::partial) ? n + 1 : 1;
        const Matrix s1 = two_mode_squeezer(SqueezeParam(cfg.r, t1), modes, 0, partner).mat();
        const Matrix s2 = two_mode_squeezer(SqueezeParam(cfg.r, t2), modes, 0, partner).mat();
        const Matrix u = phase_shifter(phi, modes, 0).mat();
        const Matrix du = phase_shifter_derivative(phi, modes, 0);
        const Matrix w = s2 * u * s1;
        const Matrix dw = s2 * du * s1;

        Matrix next = w * sigma * w.adjoint();
        Matrix dnext = w * dsigma * w.adjoint() + dw * sigma * w.adjoint() + w * sigma * dw.adjoint();
        detail::hermitize(next);
        detail::hermitize(dnext);
        sigma = std::move(next);
        dsigma = std::move(dnext);

        if (cfg.eta > 0.0) {
            const double t = loss.transmission();
            sigma *= t;
            sigma.diagonal().array() += 0.5 * (1.0 - t);
            dsigma *= t;
        }
    }
    return SchemeOutput{GaussianState(modes, std::move(sigma)), std::move(dsigma)};
}

Matrix finite_difference_dstate(const SchemeConfig& cfg, double phi, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite_difference_dstate: h must be positive");
    }
    const Matrix up = build_scheme(cfg, phi + h).state.cov();
    const Matrix dn = build_scheme(cfg, phi - h).state.cov();
    return (up - dn) / (2.0 * h);
}

unsigned estimate_period(const SchemeConfig& cfg, double phi, unsigned max_loops) {
    if (cfg.kind != SchemeKind::sequential) {
        throw std::invalid_argument("estimate_period: config must be a sequential scheme");
    }
    if (max_loops < 2) {
        throw std::invalid_argument("estimate_period: max_loops must be >= 2");
    }
    const LoopBlock blk = make_block(SqueezeParam(cfg.r, cfg.theta1),
                                     SqueezeParam(cfg.r, cfg.theta2), phi);
    Matrix sigma = 0.5 * Matrix::Identity(4, 4);
    Matrix dsigma = Matrix::Zero(4, 4);
    std::vector<double> series(max_loops + 1);
    series[0] = 0.0;  // vacuum before the first loop
    for (unsigned n = 1; n <= max_loops; ++n) {
        advance(sigma, dsigma, blk, 0, 1);
        advance_loss(sigma, dsigma, cfg.eta);
        series[n] = sigma(0, 0).real() - 0.5;
    }
    const auto peak = detail::first_intensity_peak(series);
    if (!peak) {
        throw PeriodNotResolvedError("estimate_period: period not resolved within " +
                                     std::to_string(max_loops) + " loops");
    }
    return *peak;
}

GaussianState mode_marginal(const GaussianState& s, std::size_t mode) {
    return reduce_to_modes(s, {mode});
}

std::optional<unsigned> detail::first_intensity_peak(const std::vector<double>& values) {
    if (values.size() < 3) return std::nullopt;
    const auto tol = [](double v) { return 1e-12 * std::max(1.0, std::abs(v)); };
    const std::size_t last = values.size() - 1;
    std::size_t n = 1;
    while (n <= last) {
        if (values[n] > values[n - 1] + tol(values[n])) {
            // Rising into n; extend over any plateau, then require a fall.
            std::size_t j = n;
            while (j + 1 <= last && std::abs(values[j + 1] - values[n]) <= tol(values[n])) ++j;
            if (j + 1 <= last && values[j + 1] < values[n] - tol(values[n])) {
                return static_cast<unsigned>(n);
            }
            n = j + 1;
        } else {
            ++n;
        }
    }
    return std::nullopt;
}

}  // namespace su11
