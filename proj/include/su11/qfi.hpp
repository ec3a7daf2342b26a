#pragma once

#include "su11/gaussian.hpp"

namespace su11 {

enum class DerivativeMethod { analytic, finite_difference };

const char* to_string(DerivativeMethod method);

/// Quantum Fisher information together with the Cramer-Rao standard
/// deviation it implies, delta_phi = 1/sqrt(M H) (infinite when H = 0).
struct QfiResult {
    double H = 0.0;
    double delta_phi = 0.0;
    unsigned experiments = 1;  // M
    DerivativeMethod method = DerivativeMethod::analytic;
};

/// Pure-state QFI, H = 1/4 Tr[(sigma^-1 dsigma)^2]. Requires a pure state
/// (symplectic eigenvalues within 1e-6 of 1/2); throws NotPureError
/// otherwise, directing the caller to qfi_noisy.
QfiResult qfi_pure(const GaussianState& state, const Matrix& dstate,
                   DerivativeMethod method = DerivativeMethod::analytic,
                   unsigned experiments = 1);

/// Noisy-state QFI as printed, H = 1/2 Tr[(sigma^-1 dsigma)^2]. Note the
/// deliberate factor-2 offset against qfi_pure in the eta -> 0 limit; both
/// conventions are exposed side by side rather than reconciled.
QfiResult qfi_noisy(const GaussianState& state, const Matrix& dstate,
                    DerivativeMethod method = DerivativeMethod::analytic,
                    unsigned experiments = 1);

/// Standard-interferometer benchmark, H = sinh^2(2r).
double closed_form_standard(double r);

/// The same benchmark in terms of the mean probe photon number,
/// H = nbar (nbar + 2) with nbar = 2 sinh^2(r).
double standard_qfi_from_mean_photon(double nbar);

/// Benchmark for two sequential passes (one full feedback loop),
/// H = 4 sinh^2(2r) [cosh^2(2r) + cosh^2(2r) sinh^2(2r) cos^2(phi)
///                   + cos(phi) cosh(4r) cosh^2(2r) + cosh^2(4r)/4].
double closed_form_sequential_two_pass(double r, double phi);

/// Benchmark for one partial-feedback loop,
/// H = 4 sinh^2(2r) [cosh(2r) cosh^2(r) (cos(phi) + 1) / 2
///      + sinh^2(2r) cosh^4(r) (8 cos(phi) + 6 + cos(2 phi)/2) / 16].
double closed_form_partial_one_pass(double r, double phi);

/// H / N^2; reveals the per-loop enhancement beyond quadratic scaling.
double scaled_qfi(double H, unsigned loops);

}  // namespace su11
