#include "su11/sweep.hpp"

#include <algorithm>
#include <numbers>
#include <ostream>
#include <sstream>

// Figure presets. The source plots do not state their exact grids, so these
// are reconstructions: r = 0.1 defaults, phase values pi/8..pi/2 where a
// phase family is shown, 100-point phi grids over [0, pi] for the phase-
// resolved maps, and k = 4 for the swapping presets.

namespace su11::sweep {

namespace {

constexpr double kPi = std::numbers::pi;

SweepSpec base_spec() {
    SweepSpec spec;
    spec.theta = 0.0;
    spec.eta_values = {0.0};
    spec.precision = 12;
    return spec;
}

SweepSpec preset_fig4a() {
    SweepSpec s = base_spec();
    s.schemes = {SchemeKind::sequential};
    s.r_values = {0.05, 0.1, 0.15, 0.2};
    s.phi_min = s.phi_max = kPi / 4.0;
    s.phi_steps = 1;
    s.loops_min = 1;
    s.loops_max = 20;
    return s;
}

SweepSpec preset_fig4b() {
    SweepSpec s = base_spec();
    s.schemes = {SchemeKind::sequential};
    s.r_values = {0.1};
    s.phi_min = kPi / 8.0;
    s.phi_max = kPi / 2.0;
    s.phi_steps = 4;  // pi/8, pi/4, 3pi/8, pi/2
    s.loops_min = 1;
    s.loops_max = 20;
    return s;
}

SweepSpec preset_fig5a() {
    SweepSpec s = base_spec();
    s.schemes = {SchemeKind::partial};
    s.r_values = {0.05, 0.1, 0.15};
    s.phi_min = s.phi_max = kPi / 4.0;
    s.phi_steps = 1;
    s.loops_min = 1;
    s.loops_max = 10;
    return s;
}

SweepSpec preset_fig5b() {
    SweepSpec s = preset_fig4b();
    s.schemes = {SchemeKind::partial};
    s.loops_max = 10;
    return s;
}

SweepSpec preset_fig6a() {
    SweepSpec s = base_spec();
    s.schemes = {SchemeKind::sequential};
    s.r_values = {0.1};
    s.phi_min = s.phi_max = kPi / 4.0;
    s.phi_steps = 1;
    s.loops_min = 1;
    s.loops_max = 20;
    s.eta_values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    return s;
}

SweepSpec preset_fig6b() {
    SweepSpec s = preset_fig6a();
    s.schemes = {SchemeKind::partial};
    s.loops_max = 10;
    return s;
}

SweepSpec preset_fig8() {
    SweepSpec s = base_spec();
    s.schemes = {SchemeKind::swapping};
    s.r_values = {0.1};
    s.phi_min = 0.0;
    s.phi_max = kPi;
    s.phi_steps = 100;
    s.loops_min = 1;
    s.loops_max = 20;
    s.swap_interval = 4;
    return s;
}

struct CompareFig {
    double r;
    std::vector<double> phis;
    unsigned n_max;
};

// fig7: matched-resource sensitivity comparison at two phases.
CompareFig preset_fig7() {
    return CompareFig{0.1, {kPi / 4.0, kPi / 2.0}, 50};
}

bool row_key_less(const SweepRow& a, const SweepRow& b) {
    const auto key = [](const SweepRow& row) {
        return std::tuple<std::string, double, double, unsigned, double>(row.scheme, row.r, row.eta,
                                                                         row.loops, row.phi);
    };
    return key(a) < key(b);
}

}  // namespace

std::vector<std::string> figure_names() {
    return {"fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b", "fig7", "fig8", "fig9"};
}

bool is_figure_name(const std::string& name) {
    const auto names = figure_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

int figure_default_precision() { return 12; }

void run_figure(const std::string& name, std::ostream& os, int precision, const RunOptions& opts) {
    if (name == "fig7") {
        const CompareFig fig = preset_fig7();
        std::vector<SweepRow> rows;
        for (double phi : fig.phis) {
            auto part = compare_resources(fig.r, phi, fig.n_max, opts);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        std::stable_sort(rows.begin(), rows.end(), row_key_less);
        write_csv(os, rows, precision);
        return;
    }

    SweepSpec spec;
    if (name == "fig4a") spec = preset_fig4a();
    else if (name == "fig4b") spec = preset_fig4b();
    else if (name == "fig5a") spec = preset_fig5a();
    else if (name == "fig5b") spec = preset_fig5b();
    else if (name == "fig6a") spec = preset_fig6a();
    else if (name == "fig6b") spec = preset_fig6b();
    else if (name == "fig8" || name == "fig9") spec = preset_fig8();  // same grid, different plot column
    else throw std::invalid_argument("unknown figure preset '" + name + "'");
    spec.precision = precision;
    run_sweep(spec, os, opts);
}

std::string figure_gnuplot(const std::string& name, const std::string& csv_path) {
    if (!is_figure_name(name)) {
        throw std::invalid_argument("unknown figure preset '" + name + "'");
    }
    std::string ycol = "qfi_scaled";
    std::string xcol = "N";
    if (name == "fig7") ycol = "delta_phi";
    if (name == "fig8") ycol = "intensity_total";
    if (name == "fig9") ycol = "qfi";
    if (name == "fig8" || name == "fig9") xcol = "phi";

    std::ostringstream os;
    os << "# gnuplot companion for preset " << name << "\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead outside\n"
       << "set xlabel '" << xcol << "'\n"
       << "set ylabel '" << ycol << "'\n"
       << "csv = '" << csv_path << "'\n"
       << "plot csv using '" << xcol << "':'" << ycol << "' with linespoints\n";
    return os.str();
}

}  // namespace su11::sweep
