#include "su11/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <set>

#include <json.hpp>

namespace su11::sweep {

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<double> phi_grid(const SweepSpec& spec) {
    std::vector<double> phis(spec.phi_steps);
    if (spec.phi_steps == 1) {
        phis[0] = spec.phi_min;
    } else {
        const double step = (spec.phi_max - spec.phi_min) / static_cast<double>(spec.phi_steps - 1);
        for (unsigned i = 0; i < spec.phi_steps; ++i) {
            phis[i] = spec.phi_min + step * static_cast<double>(i);
        }
    }
    return phis;
}

std::string sanitize(std::string msg) {
    for (char& c : msg) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return msg;
}

}  // namespace

const char* const kCsvHeader =
    "scheme,r,theta,phi,N,eta,k,intensity_mode1,intensity_mode2,intensity_total,"
    "qfi,qfi_scaled,delta_phi,method,error";

void validate_spec(const SweepSpec& spec) {
    if (spec.schemes.empty()) throw std::invalid_argument("sweep: no schemes given");
    if (spec.r_values.empty()) throw std::invalid_argument("sweep: no r values given");
    if (spec.phi_steps < 1) throw std::invalid_argument("sweep: phi grid needs at least one point");
    if (spec.loops_min < 1 || spec.loops_min > spec.loops_max) {
        throw std::invalid_argument("sweep: loop range must satisfy 1 <= min <= max");
    }
    if (spec.eta_values.empty()) throw std::invalid_argument("sweep: no eta values given");
    for (double eta : spec.eta_values) {
        if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("sweep: eta outside [0, 1]");
    }
    if (spec.precision < 6 || spec.precision > 17) {
        throw std::invalid_argument("sweep: precision must lie in [6, 17]");
    }
    const bool wants_swapping =
        std::find(spec.schemes.begin(), spec.schemes.end(), SchemeKind::swapping) != spec.schemes.end();
    if (wants_swapping && !spec.swap_auto && spec.swap_interval == 0) {
        throw std::invalid_argument("sweep: swapping scheme needs --swap-interval <k|auto>");
    }
}

std::vector<GridPoint> grid_points(const SweepSpec& spec) {
    validate_spec(spec);
    std::set<SchemeKind> kinds(spec.schemes.begin(), spec.schemes.end());
    const auto rs = sorted_unique(spec.r_values);
    const auto etas = sorted_unique(spec.eta_values);
    const auto phis = phi_grid(spec);

    std::vector<GridPoint> points;
    for (SchemeKind kind : kinds) {
        for (double r : rs) {
            for (double eta : etas) {
                const unsigned n_lo = (kind == SchemeKind::standard) ? 1 : spec.loops_min;
                const unsigned n_hi = (kind == SchemeKind::standard) ? 1 : spec.loops_max;
                for (unsigned n = n_lo; n <= n_hi; ++n) {
                    for (double phi : phis) {
                        GridPoint p;
                        p.kind = kind;
                        p.r = r;
                        p.theta = spec.theta;
                        p.eta = eta;
                        p.loops = n;
                        p.phi = phi;
                        if (kind == SchemeKind::swapping) {
                            p.swap_interval = spec.swap_auto ? 0 : spec.swap_interval;
                            p.period_scan_limit = std::max(2 * spec.loops_max, 64u);
                        }
                        points.push_back(p);
                    }
                }
            }
        }
    }
    return points;
}

SweepRow evaluate_point(const GridPoint& p) {
    SweepRow row;
    row.scheme = to_string(p.kind);
    row.r = p.r;
    row.theta = p.theta;
    row.phi = p.phi;
    row.loops = p.loops;
    row.eta = p.eta;
    row.method = to_string(DerivativeMethod::analytic);
    try {
        SchemeConfig cfg;
        cfg.kind = p.kind;
        cfg.r = p.r;
        cfg.theta1 = p.theta;
        cfg.theta2 = p.theta;
        cfg.loops = p.loops;
        cfg.eta = p.eta;
        if (p.kind == SchemeKind::swapping) {
            unsigned k = p.swap_interval;
            if (k == 0) {
                SchemeConfig scan = cfg;
                scan.kind = SchemeKind::sequential;
                k = estimate_period(scan, p.phi, p.period_scan_limit);
            }
            cfg.swap_interval = k;
            row.swap_interval = k;
        }
        const SchemeOutput out = build_scheme(cfg, p.phi);
        const auto n = intensity(out.state);
        row.intensity_mode1 = n[0];
        row.intensity_mode2 = n.size() > 1 ? n[1] : 0.0;
        row.intensity_total = std::accumulate(n.begin(), n.end(), 0.0);
        const QfiResult q = (p.eta == 0.0) ? qfi_pure(out.state, out.dstate)
                                           : qfi_noisy(out.state, out.dstate);
        row.qfi = q.H;
        row.qfi_scaled = scaled_qfi(q.H, p.loops);
        row.delta_phi = q.delta_phi;
    } catch (const std::exception& e) {
        row.error = sanitize(e.what());
    }
    return row;
}

std::vector<SweepRow> evaluate(const std::vector<GridPoint>& points, const RunOptions& opts) {
    std::vector<SweepRow> rows(points.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
    if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            rows[static_cast<std::size_t>(i)] = evaluate_point(points[static_cast<std::size_t>(i)]);
        }
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            rows[static_cast<std::size_t>(i)] = evaluate_point(points[static_cast<std::size_t>(i)]);
        }
    }
    return rows;
}

std::string format_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, int precision) {
    os << kCsvHeader << '\n';
    for (const SweepRow& row : rows) {
        os << row.scheme << ',' << format_double(row.r, precision) << ','
           << format_double(row.theta, precision) << ',' << format_double(row.phi, precision) << ','
           << row.loops << ',' << format_double(row.eta, precision) << ',' << row.swap_interval
           << ',';
        if (row.error.empty()) {
            os << format_double(row.intensity_mode1, precision) << ','
               << format_double(row.intensity_mode2, precision) << ','
               << format_double(row.intensity_total, precision) << ','
               << format_double(row.qfi, precision) << ','
               << format_double(row.qfi_scaled, precision) << ','
               << format_double(row.delta_phi, precision) << ',' << row.method << ',';
        } else {
            os << ",,,,,," << row.method << ',' << row.error;
        }
        os << '\n';
    }
}

void run_sweep(const SweepSpec& spec, std::ostream& os, const RunOptions& opts) {
    const auto rows = evaluate(grid_points(spec), opts);
    write_csv(os, rows, spec.precision);
}

std::vector<SweepRow> compare_resources(double r, double phi, unsigned n_max,
                                        const RunOptions& opts) {
    if (n_max < 1) {
        throw std::invalid_argument("compare_resources: n_max must be >= 1");
    }
    std::vector<GridPoint> points;
    for (SchemeKind kind : {SchemeKind::standard, SchemeKind::sequential, SchemeKind::partial}) {
        for (unsigned n = 1; n <= n_max; ++n) {
            GridPoint p;
            p.kind = kind;
            p.r = (kind == SchemeKind::standard) ? r * static_cast<double>(n) : r;
            p.eta = 0.0;
            p.loops = (kind == SchemeKind::standard) ? 1 : n;
            p.phi = phi;
            points.push_back(p);
        }
    }
    auto rows = evaluate(points, opts);
    // The standard rows carry the enhanced amplitude in r but are indexed by
    // the resource count N they stand in for.
    for (unsigned n = 1; n <= n_max; ++n) {
        rows[n - 1].loops = n;
    }
    return rows;
}

void run_compare(double r, double phi, unsigned n_max, std::ostream& os, int precision,
                 const RunOptions& opts) {
    write_csv(os, compare_resources(r, phi, n_max, opts), precision);
}

SweepSpec spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("config: top-level JSON value must be an object");
    }
    SweepSpec spec;
    for (const auto& [key, value] : j.items()) {
        if (key == "schemes") {
            for (const auto& s : value) {
                const auto kind = scheme_from_string(s.get<std::string>());
                if (!kind) {
                    throw std::invalid_argument("config: unknown scheme '" + s.get<std::string>() + "'");
                }
                spec.schemes.push_back(*kind);
            }
        } else if (key == "r_values") {
            spec.r_values = value.get<std::vector<double>>();
        } else if (key == "theta") {
            spec.theta = value.get<double>();
        } else if (key == "phi_min") {
            spec.phi_min = value.get<double>();
        } else if (key == "phi_max") {
            spec.phi_max = value.get<double>();
        } else if (key == "phi_steps") {
            spec.phi_steps = value.get<unsigned>();
        } else if (key == "loops_min") {
            spec.loops_min = value.get<unsigned>();
        } else if (key == "loops_max") {
            spec.loops_max = value.get<unsigned>();
        } else if (key == "eta_values") {
            spec.eta_values = value.get<std::vector<double>>();
        } else if (key == "swap_interval") {
            if (value.is_string()) {
                if (value.get<std::string>() != "auto") {
                    throw std::invalid_argument("config: swap_interval must be an integer or \"auto\"");
                }
                spec.swap_auto = true;
            } else {
                spec.swap_interval = value.get<unsigned>();
            }
        } else if (key == "out") {
            spec.out = value.get<std::string>();
        } else if (key == "precision") {
            spec.precision = value.get<int>();
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return spec;
}

}  // namespace su11::sweep
