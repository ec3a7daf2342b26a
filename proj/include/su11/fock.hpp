#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "su11/gaussian.hpp"
#include "su11/schemes.hpp"

// Brute-force truncated Fock-space simulator. Independent of the Gaussian
// engine: states are amplitude vectors over |n_1 ... n_m>, squeezers are
// exponentiated generators, and the QFI comes from overlap curvature. Used
// to cross-validate the covariance pipeline at small r and loop counts.

namespace su11::fock {

struct FockState {
    std::size_t modes = 0;
    std::size_t cutoff = 0;        // max photons per mode
    Eigen::VectorXcd amplitudes;   // length (cutoff+1)^modes, mode 0 slowest

    double squared_norm() const { return amplitudes.squaredNorm(); }
    /// Probability mass lost to truncation so far.
    double leakage() const { return 1.0 - squared_norm(); }
};

/// Caps (cutoff+1)^modes; exceeding it raises EngineError.
struct FockBudget {
    std::size_t max_amplitudes = std::size_t{1} << 22;
};

FockState fock_vacuum(std::size_t modes, std::size_t cutoff);

/// Smallest per-mode cutoff c with tanh(accumulated_r)^(2(c+1)) < 1e-12,
/// floored at 8. accumulated_r is the worst-case total squeezing that can
/// pile up on a single mode over the whole circuit.
std::size_t cutoff_for(double accumulated_r);

/// exp(Gamma a_i a_j - Gamma* a_i^dag a_j^dag) restricted to the truncated
/// basis (scaling-and-squaring per photon-number-difference block, computed
/// on a padded range so discarded population shows up as norm loss).
/// Throws CutoffTooSmallError when one application leaks more than 1e-8.
FockState fock_squeeze(const SqueezeParam& g, const FockState& s, std::size_t i, std::size_t j);

/// Multiplies each basis amplitude by exp(i n_mode phi).
FockState fock_phase(double phi, const FockState& s, std::size_t mode);

/// Per-mode mean photon numbers (normalized by the surviving norm).
std::vector<double> fock_intensity(const FockState& s);

/// Var(n_mode), normalized by the surviving norm.
double photon_variance(const FockState& s, std::size_t mode);

Complex overlap(const FockState& a, const FockState& b);

/// The interferometer circuits at state-vector level, with the same
/// operator ordering as the Gaussian builders. Pure-state only (eta = 0)
/// and guarded to N <= 3, r <= 0.2.
FockState fock_scheme(const SchemeConfig& cfg, double phi, const FockBudget& budget = {});

struct FockQfi {
    double H = 0.0;
    double extrapolation_error = 0.0;
};

/// Pure-state QFI from overlap curvature, H = 8 (1 - |<psi(phi)|psi(phi+d)>|) / d^2,
/// Richardson-extrapolated over {delta, delta/2}.
FockQfi fock_qfi(const SchemeConfig& cfg, double phi, double delta = 1e-3,
                 const FockBudget& budget = {});

}  // namespace su11::fock
