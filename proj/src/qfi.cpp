#include "su11/qfi.hpp"

#include <cmath>
#include <limits>

namespace su11 {

namespace {

constexpr double kPurityTol = 1e-6;
constexpr double kImagResidueTol = 1e-9;
constexpr double kConditionLimit = 1e12;

QfiResult qfi_trace(const GaussianState& state, const Matrix& dstate, double factor,
                    DerivativeMethod method, unsigned experiments) {
    if (experiments == 0) {
        throw std::invalid_argument("qfi: experiment count M must be >= 1");
    }
    const Eigen::Index dim = state.cov().rows();
    if (dstate.rows() != dim || dstate.cols() != dim) {
        throw std::invalid_argument("qfi: dstate dimension mismatch");
    }

    Eigen::PartialPivLU<Matrix> lu(state.cov());
    const Matrix inv = lu.inverse();
    const double cond = state.cov().cwiseAbs().colwise().sum().maxCoeff() *
                        inv.cwiseAbs().colwise().sum().maxCoeff();
    if (!std::isfinite(cond) || cond > kConditionLimit) {
        throw EngineError("qfi: covariance condition number exceeds supported range");
    }

    const Matrix m = lu.solve(dstate);
    Complex tr = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            tr += m(i, j) * m(j, i);
        }
    }
    const Complex h = factor * tr;
    if (std::abs(h.imag()) > kImagResidueTol) {
        throw EngineError("qfi: imaginary residue above tolerance");
    }
    if (h.real() < -kImagResidueTol) {
        throw EngineError("qfi: negative trace value");
    }

    QfiResult out;
    out.H = std::max(0.0, h.real());
    out.delta_phi = out.H > 0.0 ? 1.0 / std::sqrt(static_cast<double>(experiments) * out.H)
                                : std::numeric_limits<double>::infinity();
    out.experiments = experiments;
    out.method = method;
    return out;
}

}  // namespace

const char* to_string(DerivativeMethod method) {
    switch (method) {
        case DerivativeMethod::analytic: return "analytic-derivative";
        case DerivativeMethod::finite_difference: return "finite-difference";
    }
    return "?";
}

QfiResult qfi_pure(const GaussianState& state, const Matrix& dstate,
                   DerivativeMethod method, unsigned experiments) {
    const auto nu = symplectic_eigenvalues(state);
    if (nu.front() < 0.5 - kPurityTol) {
        throw EngineError("qfi_pure: state is numerically invalid (symplectic eigenvalue below 1/2)");
    }
    if (nu.back() > 0.5 + kPurityTol) {
        throw NotPureError("qfi_pure: state is not pure; use qfi_noisy");
    }
    return qfi_trace(state, dstate, 0.25, method, experiments);
}

QfiResult qfi_noisy(const GaussianState& state, const Matrix& dstate,
                    DerivativeMethod method, unsigned experiments) {
    return qfi_trace(state, dstate, 0.5, method, experiments);
}

double closed_form_standard(double r) {
    const double s = std::sinh(2.0 * r);
    return s * s;
}

double standard_qfi_from_mean_photon(double nbar) {
    return nbar * (nbar + 2.0);
}

double closed_form_sequential_two_pass(double r, double phi) {
    const double s2 = std::sinh(2.0 * r);
    const double c2 = std::cosh(2.0 * r);
    const double c4 = std::cosh(4.0 * r);
    const double cp = std::cos(phi);
    const double bracket = c2 * c2 + c2 * c2 * s2 * s2 * cp * cp + cp * c4 * c2 * c2 + 0.25 * c4 * c4;
    return 4.0 * s2 * s2 * bracket;
}

double closed_form_partial_one_pass(double r, double phi) {
    const double s2 = std::sinh(2.0 * r);
    const double c2 = std::cosh(2.0 * r);
    const double c1 = std::cosh(r);
    const double cp = std::cos(phi);
    const double bracket = 0.5 * c2 * c1 * c1 * (cp + 1.0) +
                           (1.0 / 16.0) * s2 * s2 * c1 * c1 * c1 * c1 *
                               (8.0 * cp + 6.0 + 0.5 * std::cos(2.0 * phi));
    return 4.0 * s2 * s2 * bracket;
}

double scaled_qfi(double H, unsigned loops) {
    if (loops == 0) {
        throw std::invalid_argument("scaled_qfi: loop count must be >= 1");
    }
    const double n = static_cast<double>(loops);
    return H / (n * n);
}

}  // namespace su11
