#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "su11/errors.hpp"

// Zero-mean Gaussian states in the complex mode-operator ordering
// (a_1, a_1^dag, a_2, a_2^dag, ...). A state is its 2m x 2m covariance
// matrix sigma with sigma_vac = I/2; circuits act as sigma -> W sigma W^dag
// where W is a Bogoliubov matrix preserving the commutation metric
// K = diag(+1, -1) per mode. Per-mode photon numbers are the diagonal of
// (sigma - I/2).

namespace su11 {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Squeezing parameter Gamma = r exp(i theta). Negative amplitudes are
/// canonicalized as r >= 0 with theta shifted by pi, so S(-r) == S(r, theta+pi).
class SqueezeParam {
public:
    explicit SqueezeParam(double r, double theta = 0.0);

    double r() const { return r_; }
    double theta() const { return theta_; }
    Complex gamma() const;

private:
    double r_;
    double theta_;  // folded into [0, 2pi)
};

/// Uniform linear photon loss: eta is the lost fraction per application,
/// t = 1 - eta the transmission.
class LossChannel {
public:
    explicit LossChannel(double eta);

    double eta() const { return eta_; }
    double transmission() const { return 1.0 - eta_; }

private:
    double eta_;
};

/// m-mode zero-mean Gaussian state held as a Hermitian complex covariance
/// matrix. The constructor enforces Hermiticity (1e-12 elementwise) and the
/// photon-number bound on the diagonal; the symplectic-spectrum bound
/// (>= 1/2) is checked on demand via symplectic_eigenvalues().
class GaussianState {
public:
    GaussianState(std::size_t modes, Matrix cov);

    std::size_t modes() const { return modes_; }
    const Matrix& cov() const { return cov_; }

private:
    std::size_t modes_;
    Matrix cov_;
};

/// Linear transform of the mode-operator vector. Construction verifies
/// metric preservation mat K mat^dag = K.
class BogoliubovTransform {
public:
    BogoliubovTransform(std::size_t modes, Matrix mat);

    static BogoliubovTransform identity(std::size_t modes);

    std::size_t modes() const { return modes_; }
    const Matrix& mat() const { return mat_; }

private:
    std::size_t modes_;
    Matrix mat_;
};

/// Composition: (w2 * w1) acts as w1 first.
BogoliubovTransform operator*(const BogoliubovTransform& w2, const BogoliubovTransform& w1);

/// The commutation metric K = diag(+1, -1, +1, -1, ...).
Matrix metric(std::size_t modes);

/// Vacuum state, cov = I/2. Rejects modes == 0.
GaussianState vacuum(std::size_t modes);

/// Two-mode squeezer between modes i and j: cosh(r) on the diagonal of the
/// active 4x4 block and -e^{i theta} sinh(r) couplings between a_i and
/// a_j^dag, identity elsewhere.
BogoliubovTransform two_mode_squeezer(const SqueezeParam& g, std::size_t modes,
                                      std::size_t i, std::size_t j);

/// Phase shifter diag(e^{i phi}, e^{-i phi}) on mode i, identity elsewhere.
BogoliubovTransform phase_shifter(double phi, std::size_t modes, std::size_t mode);

/// Elementwise d/dphi of phase_shifter: diag(i e^{i phi}, -i e^{-i phi}) on
/// mode i, zero elsewhere. Not metric-preserving, hence a plain matrix.
Matrix phase_shifter_derivative(double phi, std::size_t modes, std::size_t mode);

/// sigma -> W sigma W^dag, re-symmetrized after the product.
GaussianState apply(const BogoliubovTransform& w, const GaussianState& s);

/// sigma -> t (sigma - I/2) + I/2 on all modes.
GaussianState apply_loss(const LossChannel& c, const GaussianState& s);

/// Per-mode photon numbers Re(cov[2i][2i]) - 1/2.
std::vector<double> intensity(const GaussianState& s);

/// Moduli of the eigenvalues of K cov, one representative per conjugate
/// pair, sorted ascending. Equal to 1/2 for every mode of a pure state.
std::vector<double> symplectic_eigenvalues(const GaussianState& s);

/// Gaussian partial trace: keep the listed modes (covariance submatrix).
GaussianState reduce_to_modes(const GaussianState& s, const std::vector<std::size_t>& keep);

namespace detail {
/// Exact Hermitian projection (X + X^dag)/2, mirroring the upper triangle.
void hermitize(Matrix& m);
}  // namespace detail

}  // namespace su11
