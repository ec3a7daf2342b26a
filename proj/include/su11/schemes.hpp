#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "su11/gaussian.hpp"

// Circuit builders for the SU(1,1) interferometer variants. Every builder
// returns the output covariance together with its analytic phi-derivative,
// accumulated by the product rule across all phase-shifter occurrences (and
// propagated through the linear loss map when eta > 0).

namespace su11 {

enum class SchemeKind { standard, sequential, partial, swapping };

const char* to_string(SchemeKind kind);
std::optional<SchemeKind> scheme_from_string(std::string_view name);

struct SchemeConfig {
    SchemeKind kind = SchemeKind::standard;
    double r = 0.0;        // squeezing amplitude
    double theta1 = 0.0;   // pump phase of the first squeezer
    double theta2 = 0.0;   // pump phase of the second squeezer
    unsigned loops = 1;    // N
    unsigned swap_interval = 1;  // k, swapping scheme only
    double eta = 0.0;      // photon loss per loop
};

struct SchemeOutput {
    GaussianState state;
    Matrix dstate;  // d(cov)/d(phi), Hermitian

    std::size_t mode_count() const { return state.modes(); }
};

// Standard interferometer S(-Gamma) U(phi) S(Gamma) on two modes; loops
// is fixed at 1.
SchemeOutput build_standard(const SchemeConfig& cfg, double phi);

// [S(Gamma) U(phi) S(Gamma)]^N on two modes, loss interleaved per loop.
SchemeOutput build_sequential(const SchemeConfig& cfg, double phi);

// Feedback of mode 1 only, unrolled onto N+1 modes: loop j = 2..N+1 applies
// the squeezer on modes (1, j) around the phase shifter on mode 1. The
// measured-and-reinitialized partner of each loop is a fresh vacuum mode.
SchemeOutput build_partial(const SchemeConfig& cfg, double phi);

// Sequential scheme whose squeezer sign flips every swap_interval loops;
// the first block uses +r. swap_interval >= loops degenerates to the plain
// sequential scheme.
SchemeOutput build_swapping(const SchemeConfig& cfg, double phi);

/// Dispatch on cfg.kind.
SchemeOutput build_scheme(const SchemeConfig& cfg, double phi);

/// Dense reference path: the same circuits assembled from full-size
/// gaussian-core transforms. Kept as the serial reference for tests and the
/// benchmark; the primary builders use an equivalent blocked kernel.
SchemeOutput build_scheme_reference(const SchemeConfig& cfg, double phi);

/// Central finite difference (cov(phi+h) - cov(phi-h)) / (2h); validation
/// path for the analytic derivative.
Matrix finite_difference_dstate(const SchemeConfig& cfg, double phi, double h = 1e-5);

/// Scans the sequential scheme's mode-1 intensity over N = 1..max_loops and
/// returns the loop count of the first strict local maximum (ties resolve to
/// the smallest N within 1e-12). This is the recommended swap interval k.
/// Throws PeriodNotResolvedError when no maximum lies in range.
unsigned estimate_period(const SchemeConfig& cfg, double phi, unsigned max_loops);

/// Single-mode marginal of mode `mode` (tracing out the rest).
GaussianState mode_marginal(const GaussianState& s, std::size_t mode);

namespace detail {
/// First strict local maximum of a series indexed from 1; values[0] holds
/// the virtual N=0 entry. Plateaus resolve to the smallest index attaining
/// the plateau value within 1e-12.
std::optional<unsigned> first_intensity_peak(const std::vector<double>& values);
}  // namespace detail

}  // namespace su11
