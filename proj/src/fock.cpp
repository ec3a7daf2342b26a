#include "su11/fock.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include <unsupported/Eigen/MatrixFunctions>

namespace su11::fock {

namespace {

constexpr double kLeakageTol = 1e-8;
constexpr double kTailTarget = 1e-12;

std::size_t pow_sz(std::size_t base, std::size_t exp) {
    std::size_t v = 1;
    for (std::size_t k = 0; k < exp; ++k) v *= base;
    return v;
}

std::size_t stride_of(std::size_t modes, std::size_t cutoff, std::size_t mode) {
    return pow_sz(cutoff + 1, modes - 1 - mode);
}

// One photon-number-difference block of the two-mode squeeze gate: states
// |n, m> with n - m = delta, indexed by k = min(n, m). The operator is the
// top-left corner of the exponential computed on a padded index range, so
// it is sub-unitary exactly by the amount of discarded population.
struct GateBlock {
    long delta = 0;
    Eigen::MatrixXcd op;  // kept x kept, kept = cutoff + 1 - |delta|
};

struct TwoModeGate {
    std::size_t cutoff = 0;
    std::vector<GateBlock> blocks;
};

std::size_t pad_levels(double r) {
    const double t = std::tanh(std::abs(r));
    std::size_t pad = 8;
    if (t > 0.0) {
        while (pad < 64 && std::pow(t, 2.0 * static_cast<double>(pad)) >= 1e-14) ++pad;
    }
    return pad;
}

TwoModeGate build_gate(double r, double theta, std::size_t cutoff) {
    const Complex gamma = std::polar(r, theta);
    const long c = static_cast<long>(cutoff);
    const long cpad = c + static_cast<long>(pad_levels(r));
    TwoModeGate gate;
    gate.cutoff = cutoff;
    for (long delta = -c; delta <= c; ++delta) {
        const long ad = std::labs(delta);
        const long dim_pad = cpad + 1 - ad;
        const long kept = c + 1 - ad;
        Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim_pad, dim_pad);
        for (long k = 0; k < dim_pad; ++k) {
            const double n = static_cast<double>(k + std::max(delta, 0L));
            const double m = static_cast<double>(k + std::max(-delta, 0L));
            if (k > 0) {
                // Gamma a b: |n, m> -> sqrt(n m) |n-1, m-1>
                gen(k - 1, k) = gamma * std::sqrt(n * m);
            }
            if (k + 1 < dim_pad) {
                // -Gamma* a^dag b^dag: |n, m> -> sqrt((n+1)(m+1)) |n+1, m+1>
                gen(k + 1, k) = -std::conj(gamma) * std::sqrt((n + 1.0) * (m + 1.0));
            }
        }
        const Eigen::MatrixXcd expg = gen.exp();
        gate.blocks.push_back(GateBlock{delta, expg.topLeftCorner(kept, kept)});
    }
    return gate;
}

const TwoModeGate& cached_gate(double r, double theta, std::size_t cutoff) {
    static std::mutex mu;
    static std::map<std::tuple<double, double, std::size_t>, std::unique_ptr<TwoModeGate>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{r, theta, cutoff}];
    if (!slot) {
        slot = std::make_unique<TwoModeGate>(build_gate(r, theta, cutoff));
    }
    return *slot;
}

// Base flat indices of all configurations with n_i = n_j = 0.
std::vector<std::size_t> spectator_bases(const FockState& s, std::size_t i, std::size_t j) {
    const std::size_t d = s.cutoff + 1;
    const std::size_t si = stride_of(s.modes, s.cutoff, i);
    const std::size_t sj = stride_of(s.modes, s.cutoff, j);
    std::vector<std::size_t> bases;
    bases.reserve(s.amplitudes.size() / (d * d));
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(s.amplitudes.size()); ++idx) {
        if ((idx / si) % d == 0 && (idx / sj) % d == 0) bases.push_back(idx);
    }
    return bases;
}

}  // namespace

FockState fock_vacuum(std::size_t modes, std::size_t cutoff) {
    if (modes == 0) {
        throw std::invalid_argument("fock_vacuum: mode count must be positive");
    }
    if (cutoff == 0) {
        throw std::invalid_argument("fock_vacuum: cutoff must be positive");
    }
    FockState s;
    s.modes = modes;
    s.cutoff = cutoff;
    s.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pow_sz(cutoff + 1, modes)));
    s.amplitudes(0) = 1.0;
    return s;
}

std::size_t cutoff_for(double accumulated_r) {
    const double t = std::tanh(std::abs(accumulated_r));
    std::size_t c = 8;
    if (t > 0.0) {
        while (std::pow(t, 2.0 * static_cast<double>(c + 1)) >= kTailTarget && c < 4096) ++c;
    }
    return c;
}

FockState fock_squeeze(const SqueezeParam& g, const FockState& s, std::size_t i, std::size_t j) {
    if (i == j) {
        throw std::invalid_argument("fock_squeeze: modes must differ");
    }
    if (i >= s.modes || j >= s.modes) {
        throw std::invalid_argument("fock_squeeze: mode index out of range");
    }
    const TwoModeGate& gate = cached_gate(g.r(), g.theta(), s.cutoff);
    const std::size_t d = s.cutoff + 1;
    const std::size_t si = stride_of(s.modes, s.cutoff, i);
    const std::size_t sj = stride_of(s.modes, s.cutoff, j);
    const auto bases = spectator_bases(s, i, j);

    FockState out = s;
    const double norm_before = s.squared_norm();

    const std::ptrdiff_t nbases = static_cast<std::ptrdiff_t>(bases.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t bidx = 0; bidx < nbases; ++bidx) {
        const std::size_t base = bases[static_cast<std::size_t>(bidx)];
        Eigen::VectorXcd in(d), res(d);
        for (const GateBlock& blk : gate.blocks) {
            const long kept = blk.op.rows();
            const long n0 = std::max(blk.delta, 0L);
            const long m0 = std::max(-blk.delta, 0L);
            for (long k = 0; k < kept; ++k) {
                const std::size_t idx = base + static_cast<std::size_t>(n0 + k) * si +
                                        static_cast<std::size_t>(m0 + k) * sj;
                in(k) = s.amplitudes(static_cast<Eigen::Index>(idx));
            }
            res.head(kept) = blk.op * in.head(kept);
            for (long k = 0; k < kept; ++k) {
                const std::size_t idx = base + static_cast<std::size_t>(n0 + k) * si +
                                        static_cast<std::size_t>(m0 + k) * sj;
                out.amplitudes(static_cast<Eigen::Index>(idx)) = res(k);
            }
        }
    }

    const double lost = norm_before - out.squared_norm();
    if (lost > kLeakageTol) {
        throw CutoffTooSmallError("fock_squeeze: truncation leakage " + std::to_string(lost) +
                                  " exceeds 1e-8; increase the cutoff");
    }
    return out;
}

FockState fock_phase(double phi, const FockState& s, std::size_t mode) {
    if (mode >= s.modes) {
        throw std::invalid_argument("fock_phase: mode index out of range");
    }
    const std::size_t d = s.cutoff + 1;
    const std::size_t stride = stride_of(s.modes, s.cutoff, mode);
    FockState out = s;
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(s.amplitudes.size()); ++idx) {
        const std::size_t n = (idx / stride) % d;
        out.amplitudes(static_cast<Eigen::Index>(idx)) *=
            std::polar(1.0, phi * static_cast<double>(n));
    }
    return out;
}

std::vector<double> fock_intensity(const FockState& s) {
    const std::size_t d = s.cutoff + 1;
    std::vector<double> n(s.modes, 0.0);
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(s.amplitudes.size()); ++idx) {
        const double p = std::norm(s.amplitudes(static_cast<Eigen::Index>(idx)));
        if (p == 0.0) continue;
        std::size_t rem = idx;
        for (std::size_t mode = s.modes; mode-- > 0;) {
            n[mode] += p * static_cast<double>(rem % d);
            rem /= d;
        }
    }
    const double norm2 = s.squared_norm();
    for (double& v : n) v /= norm2;
    return n;
}

double photon_variance(const FockState& s, std::size_t mode) {
    if (mode >= s.modes) {
        throw std::invalid_argument("photon_variance: mode index out of range");
    }
    const std::size_t d = s.cutoff + 1;
    const std::size_t stride = stride_of(s.modes, s.cutoff, mode);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(s.amplitudes.size()); ++idx) {
        const double p = std::norm(s.amplitudes(static_cast<Eigen::Index>(idx)));
        if (p == 0.0) continue;
        const double n = static_cast<double>((idx / stride) % d);
        m1 += p * n;
        m2 += p * n * n;
    }
    const double norm2 = s.squared_norm();
    m1 /= norm2;
    m2 /= norm2;
    return m2 - m1 * m1;
}

Complex overlap(const FockState& a, const FockState& b) {
    if (a.modes != b.modes || a.cutoff != b.cutoff) {
        throw std::invalid_argument("overlap: state shapes differ");
    }
    return a.amplitudes.dot(b.amplitudes);  // conjugates the left argument
}

FockState fock_scheme(const SchemeConfig& cfg, double phi, const FockBudget& budget) {
    if (cfg.eta != 0.0) {
        throw std::invalid_argument("fock_scheme: the oracle is pure-state only (eta must be 0)");
    }
    if (cfg.loops == 0 || cfg.loops > 3) {
        throw std::invalid_argument("fock_scheme: N must lie in 1..3");
    }
    if (!(cfg.r >= 0.0 && cfg.r <= 0.2 + 1e-12)) {
        throw std::invalid_argument("fock_scheme: r must lie in [0, 0.2]");
    }
    if (cfg.kind == SchemeKind::standard && cfg.loops != 1) {
        throw std::invalid_argument("fock_scheme: the standard scheme fixes N = 1");
    }
    if (cfg.kind == SchemeKind::swapping && cfg.swap_interval == 0) {
        throw std::invalid_argument("fock_scheme: swap interval k must be >= 1");
    }

    const std::size_t modes = (cfg.kind == SchemeKind::partial) ? cfg.loops + 1 : 2;
    // Worst case piles 2 r of squeezing per loop onto one mode.
    const std::size_t cutoff = cutoff_for(2.0 * static_cast<double>(cfg.loops) * cfg.r);
    if (pow_sz(cutoff + 1, modes) > budget.max_amplitudes) {
        throw EngineError("fock_scheme: state size exceeds the configured budget");
    }

    FockState psi = fock_vacuum(modes, cutoff);
    for (unsigned n = 0; n < cfg.loops; ++n) {
        double t1 = cfg.theta1;
        double t2 = (cfg.kind == SchemeKind::standard) ? cfg.theta1 + std::numbers::pi : cfg.theta2;
        if (cfg.kind == SchemeKind::swapping && ((n / cfg.swap_interval) % 2) == 1) {
            t1 += std::numbers::pi;
            t2 += std::numbers::pi;
        }
        const std::size_t partner = (cfg.kind == SchemeKind::partial) ? n + 1 : 1;
        psi = fock_squeeze(SqueezeParam(cfg.r, t1), psi, 0, partner);
        psi = fock_phase(phi, psi, 0);
        psi = fock_squeeze(SqueezeParam(cfg.r, t2), psi, 0, partner);
    }
    if (psi.leakage() > kLeakageTol) {
        throw CutoffTooSmallError("fock_scheme: accumulated truncation leakage exceeds 1e-8");
    }
    return psi;
}

FockQfi fock_qfi(const SchemeConfig& cfg, double phi, double delta, const FockBudget& budget) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("fock_qfi: delta must be positive");
    }
    // Symmetric displacement keeps the fidelity expansion even in delta, so
    // the {delta, delta/2} Richardson step removes the leading error term.
    const auto curvature = [&](double d) {
        const FockState lo = fock_scheme(cfg, phi - 0.5 * d, budget);
        const FockState hi = fock_scheme(cfg, phi + 0.5 * d, budget);
        const double f =
            std::abs(overlap(lo, hi)) / std::sqrt(lo.squared_norm() * hi.squared_norm());
        return 8.0 * (1.0 - f) / (d * d);
    };
    const double f_full = curvature(delta);
    const double f_half = curvature(0.5 * delta);

    FockQfi out;
    out.H = (4.0 * f_half - f_full) / 3.0;
    out.extrapolation_error = std::abs(out.H - f_half);
    return out;
}

}  // namespace su11::fock
