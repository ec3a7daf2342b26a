#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "su11/qfi.hpp"
#include "su11/schemes.hpp"

// Deterministic parameter-sweep runner. Grid points are independent work
// items evaluated either serially or with OpenMP; rows are always emitted
// in (scheme, r, eta, N, phi) order, so the CSV output is byte-identical
// regardless of the degree of parallelism.

namespace su11::sweep {

struct SweepSpec {
    std::vector<SchemeKind> schemes;
    std::vector<double> r_values;
    double theta = 0.0;
    double phi_min = 0.0;
    double phi_max = 0.0;
    unsigned phi_steps = 1;  // number of grid points
    unsigned loops_min = 1;
    unsigned loops_max = 1;
    std::vector<double> eta_values = {0.0};
    unsigned swap_interval = 0;  // explicit k when > 0
    bool swap_auto = false;      // resolve k per (r, phi) via estimate_period
    std::string out = "-";
    int precision = 12;
};

/// Throws std::invalid_argument when a field is out of range.
void validate_spec(const SweepSpec& spec);

struct GridPoint {
    SchemeKind kind = SchemeKind::standard;
    double r = 0.0;
    double theta = 0.0;
    double eta = 0.0;
    unsigned loops = 1;
    double phi = 0.0;
    unsigned swap_interval = 0;  // 0 = resolve automatically
    unsigned period_scan_limit = 0;
};

struct SweepRow {
    std::string scheme;
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    unsigned loops = 0;
    double eta = 0.0;
    unsigned swap_interval = 0;  // 0 when not applicable
    double intensity_mode1 = 0.0;
    double intensity_mode2 = 0.0;
    double intensity_total = 0.0;
    double qfi = 0.0;
    double qfi_scaled = 0.0;
    double delta_phi = 0.0;
    std::string method;
    std::string error;  // empty on success
};

struct RunOptions {
    bool parallel = true;
};

/// Expands the spec into its deterministic grid-point order.
std::vector<GridPoint> grid_points(const SweepSpec& spec);

/// Runs one grid point through the scheme builders and QFI; failures are
/// reported in the row's error column instead of aborting the run.
SweepRow evaluate_point(const GridPoint& p);

std::vector<SweepRow> evaluate(const std::vector<GridPoint>& points, const RunOptions& opts = {});

extern const char* const kCsvHeader;
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, int precision);

/// Full pipeline: expand, evaluate, emit CSV.
void run_sweep(const SweepSpec& spec, std::ostream& os, const RunOptions& opts = {});

/// Matched-resource comparison: for each N = 1..n_max, the sequential and
/// partial schemes with N loops next to a standard interferometer driven at
/// squeeze amplitude N r.
std::vector<SweepRow> compare_resources(double r, double phi, unsigned n_max,
                                        const RunOptions& opts = {});
void run_compare(double r, double phi, unsigned n_max, std::ostream& os, int precision,
                 const RunOptions& opts = {});

/// Named figure presets (reconstructed grids; see README).
std::vector<std::string> figure_names();
bool is_figure_name(const std::string& name);
void run_figure(const std::string& name, std::ostream& os, int precision,
                const RunOptions& opts = {});
int figure_default_precision();

/// Companion gnuplot script for a preset, reading the given CSV path.
std::string figure_gnuplot(const std::string& name, const std::string& csv_path);

/// Parses a JSON document whose keys mirror the SweepSpec fields.
SweepSpec spec_from_json(const std::string& text);

std::string format_double(double v, int precision);

}  // namespace su11::sweep
