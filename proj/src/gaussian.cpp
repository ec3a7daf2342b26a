#include "su11/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace su11 {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kMetricTol = 1e-10;

double fold_angle(double theta) {
    const double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    return t;
}

}  // namespace

SqueezeParam::SqueezeParam(double r, double theta) {
    if (!std::isfinite(r) || !std::isfinite(theta)) {
        throw std::invalid_argument("SqueezeParam: r and theta must be finite");
    }
    if (r < 0.0) {
        r = -r;
        theta += std::numbers::pi;
    }
    r_ = r;
    theta_ = fold_angle(theta);
}

Complex SqueezeParam::gamma() const {
    return std::polar(r_, theta_);
}

LossChannel::LossChannel(double eta) : eta_(eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("LossChannel: eta must lie in [0, 1]");
    }
}

void detail::hermitize(Matrix& m) {
    const Eigen::Index n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = Complex(m(i, i).real(), 0.0);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
}

GaussianState::GaussianState(std::size_t modes, Matrix cov) : modes_(modes) {
    if (modes == 0) {
        throw std::invalid_argument("GaussianState: mode count must be positive");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * modes);
    if (cov.rows() != dim || cov.cols() != dim) {
        throw std::invalid_argument("GaussianState: covariance must be 2m x 2m");
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i; j < dim; ++j) {
            if (std::abs(cov(i, j) - std::conj(cov(j, i))) > kHermitianTol) {
                throw std::invalid_argument("GaussianState: covariance not Hermitian");
            }
        }
    }
    detail::hermitize(cov);
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (cov(i, i).real() < 0.5 - kHermitianTol) {
            throw std::invalid_argument("GaussianState: diagonal below vacuum level");
        }
    }
    cov_ = std::move(cov);
}

BogoliubovTransform::BogoliubovTransform(std::size_t modes, Matrix mat) : modes_(modes) {
    if (modes == 0) {
        throw std::invalid_argument("BogoliubovTransform: mode count must be positive");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * modes);
    if (mat.rows() != dim || mat.cols() != dim) {
        throw std::invalid_argument("BogoliubovTransform: matrix must be 2m x 2m");
    }
    // Metric preservation, with an fp allowance that scales with the matrix
    // magnitude so strongly squeezing transforms remain constructible.
    const Matrix k = metric(modes);
    const Matrix residual = mat * k * mat.adjoint() - k;
    const double scale = mat.cwiseAbs().maxCoeff();
    const double tol = std::max(kMetricTol, 64.0 * std::numeric_limits<double>::epsilon() *
                                                scale * scale * static_cast<double>(dim));
    if (residual.cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument("BogoliubovTransform: metric K not preserved");
    }
    mat_ = std::move(mat);
}

BogoliubovTransform BogoliubovTransform::identity(std::size_t modes) {
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * modes);
    return BogoliubovTransform(modes, Matrix::Identity(dim, dim));
}

BogoliubovTransform operator*(const BogoliubovTransform& w2, const BogoliubovTransform& w1) {
    if (w2.modes() != w1.modes()) {
        throw std::invalid_argument("BogoliubovTransform product: mode counts differ");
    }
    return BogoliubovTransform(w2.modes(), w2.mat() * w1.mat());
}

Matrix metric(std::size_t modes) {
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * modes);
    Matrix k = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; i += 2) {
        k(i, i) = 1.0;
        k(i + 1, i + 1) = -1.0;
    }
    return k;
}

GaussianState vacuum(std::size_t modes) {
    if (modes == 0) {
        throw std::invalid_argument("vacuum: mode count must be positive");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * modes);
    return GaussianState(modes, 0.5 * Matrix::Identity(dim, dim));
}

BogoliubovTransform two_mode_squeezer(const SqueezeParam& g, std::size_t modes,
                                      std::size_t i, std::size_t j) {
    if (i == j) {
        throw std::invalid_argument("two_mode_squeezer: modes must differ");
    }
    if (i >= modes || j >= modes) {
        throw std::invalid_argument("two_mode_squeezer: mode index out of range");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * modes);
    Matrix m = Matrix::Identity(dim, dim);
    const double ch = std::cosh(g.r());
    const double sh = std::sinh(g.r());
    const Complex phase = std::polar(1.0, g.theta());
    const Eigen::Index ai = static_cast<Eigen::Index>(2 * i);
    const Eigen::Index aj = static_cast<Eigen::Index>(2 * j);
    m(ai, ai) = ch;
    m(ai + 1, ai + 1) = ch;
    m(aj, aj) = ch;
    m(aj + 1, aj + 1) = ch;
    m(ai, aj + 1) = -phase * sh;
    m(ai + 1, aj) = -std::conj(phase) * sh;
    m(aj, ai + 1) = -phase * sh;
    m(aj + 1, ai) = -std::conj(phase) * sh;
    return BogoliubovTransform(modes, std::move(m));
}

BogoliubovTransform phase_shifter(double phi, std::size_t modes, std::size_t mode) {
    if (mode >= modes) {
        throw std::invalid_argument("phase_shifter: mode index out of range");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * modes);
    Matrix m = Matrix::Identity(dim, dim);
    const Eigen::Index a = static_cast<Eigen::Index>(2 * mode);
    m(a, a) = std::polar(1.0, phi);
    m(a + 1, a + 1) = std::polar(1.0, -phi);
    return BogoliubovTransform(modes, std::move(m));
}

Matrix phase_shifter_derivative(double phi, std::size_t modes, std::size_t mode) {
    if (mode >= modes) {
        throw std::invalid_argument("phase_shifter_derivative: mode index out of range");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * modes);
    Matrix m = Matrix::Zero(dim, dim);
    const Eigen::Index a = static_cast<Eigen::Index>(2 * mode);
    m(a, a) = Complex(0.0, 1.0) * std::polar(1.0, phi);
    m(a + 1, a + 1) = Complex(0.0, -1.0) * std::polar(1.0, -phi);
    return m;
}

GaussianState apply(const BogoliubovTransform& w, const GaussianState& s) {
    if (w.modes() != s.modes()) {
        throw std::invalid_argument("apply: transform and state mode counts differ");
    }
    Matrix cov = w.mat() * s.cov() * w.mat().adjoint();
    detail::hermitize(cov);
    return GaussianState(s.modes(), std::move(cov));
}

GaussianState apply_loss(const LossChannel& c, const GaussianState& s) {
    const double t = c.transmission();
    Matrix cov = t * s.cov();
    cov.diagonal().array() += 0.5 * (1.0 - t);
    return GaussianState(s.modes(), std::move(cov));
}

std::vector<double> intensity(const GaussianState& s) {
    std::vector<double> n(s.modes());
    for (std::size_t i = 0; i < s.modes(); ++i) {
        n[i] = s.cov()(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(2 * i)).real() - 0.5;
    }
    return n;
}

std::vector<double> symplectic_eigenvalues(const GaussianState& s) {
    // K sigma is similar to the Hermitian matrix L^dag K L, sigma = L L^dag.
    Eigen::LLT<Matrix> llt(s.cov());
    if (llt.info() != Eigen::Success) {
        throw EngineError("symplectic_eigenvalues: covariance not positive definite");
    }
    const Matrix l = llt.matrixL();
    const Matrix k = metric(s.modes());
    const Matrix t = l.adjoint() * k * l;
    Eigen::SelfAdjointEigenSolver<Matrix> es(t, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw EngineError("symplectic_eigenvalues: eigensolver failed");
    }
    // Eigenvalues come in +/- pairs; the positive half, ascending, is the
    // one-per-pair representative list.
    const auto& ev = es.eigenvalues();
    std::vector<double> nu(s.modes());
    for (std::size_t i = 0; i < s.modes(); ++i) {
        nu[i] = std::abs(ev(static_cast<Eigen::Index>(s.modes() + i)));
    }
    std::sort(nu.begin(), nu.end());
    return nu;
}

GaussianState reduce_to_modes(const GaussianState& s, const std::vector<std::size_t>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("reduce_to_modes: keep list must be non-empty");
    }
    std::vector<Eigen::Index> idx;
    idx.reserve(2 * keep.size());
    for (std::size_t m : keep) {
        if (m >= s.modes()) {
            throw std::invalid_argument("reduce_to_modes: mode index out of range");
        }
        idx.push_back(static_cast<Eigen::Index>(2 * m));
        idx.push_back(static_cast<Eigen::Index>(2 * m + 1));
    }
    Matrix sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
            sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s.cov()(idx[a], idx[b]);
        }
    }
    return GaussianState(keep.size(), std::move(sub));
}

}  // namespace su11
