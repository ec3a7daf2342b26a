// su11sim: sweep runner and verification CLI for the SU(1,1) feedback
// interferometer simulator. Exit codes: 0 success, 1 usage error,
// 2 engine/validation failure.

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "su11/sweep.hpp"
#include "su11/validate.hpp"

namespace {

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path == "-") return;
        file.open(path, std::ios::binary);
        if (!file) {
            throw std::invalid_argument("cannot open output file '" + path + "'");
        }
        os = &file;
    }
};

std::pair<unsigned, unsigned> parse_loop_range(const std::string& text) {
    const auto pos = text.find("..");
    try {
        if (pos == std::string::npos) {
            const unsigned n = static_cast<unsigned>(std::stoul(text));
            return {n, n};
        }
        const unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, pos)));
        const unsigned hi = static_cast<unsigned>(std::stoul(text.substr(pos + 2)));
        return {lo, hi};
    } catch (const std::exception&) {
        throw std::invalid_argument("--loops expects <n> or <a..b>");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian phase-space simulator for SU(1,1) interferometers with feedback"};
    app.require_subcommand(1);
    app.fallthrough();  // app-level flags may follow the subcommand

    su11::sweep::RunOptions run_opts;
    app.add_flag_callback("--serial", [&run_opts] { run_opts.parallel = false; },
                          "evaluate grid points serially (output is identical either way)");

    // --- sweep ---------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and emit CSV");
    std::vector<std::string> scheme_names;
    std::vector<double> r_values, eta_values;
    std::string loops_text, swap_text, config_path, out_path;
    double theta = 0.0, phi_min = 0.0, phi_max = 0.0;
    unsigned phi_steps = 0;
    int precision = 0;
    sweep_cmd->add_option("--scheme", scheme_names,
                          "scheme kind(s): standard|sequential|partial|swapping");
    sweep_cmd->add_option("--r", r_values, "squeezing amplitude(s)");
    sweep_cmd->add_option("--theta", theta, "pump phase (radians)");
    sweep_cmd->add_option("--phi-min", phi_min, "phase grid start (radians)");
    sweep_cmd->add_option("--phi-max", phi_max, "phase grid end (radians)");
    sweep_cmd->add_option("--phi-steps", phi_steps, "number of phase grid points");
    sweep_cmd->add_option("--loops", loops_text, "loop count or range a..b");
    sweep_cmd->add_option("--eta", eta_values, "photon loss per loop, value(s) in [0,1]");
    sweep_cmd->add_option("--swap-interval", swap_text, "swap interval k, or 'auto'");
    sweep_cmd->add_option("--config", config_path, "JSON sweep spec (flags override)");
    sweep_cmd->add_option("--out", out_path, "output path or '-' for stdout");
    sweep_cmd->add_option("--precision", precision, "significant digits, 6..17");

    // --- figure --------------------------------------------------------
    auto* figure_cmd = app.add_subcommand("figure", "run a named preset and emit CSV");
    std::string figure_name, gnuplot_path, fig_out;
    int fig_precision = 0;
    figure_cmd->add_option("preset", figure_name, "one of: fig4a fig4b fig5a fig5b fig6a fig6b fig7 fig8 fig9")
        ->required();
    figure_cmd->add_option("--out", fig_out, "output path or '-' for stdout");
    figure_cmd->add_option("--precision", fig_precision, "significant digits, 6..17");
    figure_cmd->add_option("--gnuplot", gnuplot_path, "also write a companion gnuplot script");

    // --- period --------------------------------------------------------
    auto* period_cmd = app.add_subcommand(
        "period", "recommend a swap interval from the sequential intensity oscillation");
    double period_r = 0.1, period_phi = std::numbers::pi / 4.0, period_eta = 0.0;
    unsigned period_max = 64;
    period_cmd->add_option("--r", period_r, "squeezing amplitude");
    period_cmd->add_option("--phi", period_phi, "phase (radians)");
    period_cmd->add_option("--eta", period_eta, "photon loss per loop");
    period_cmd->add_option("--max-loops", period_max, "scan limit");

    // --- compare -------------------------------------------------------
    auto* compare_cmd =
        app.add_subcommand("compare", "matched-resource sensitivity comparison CSV");
    double cmp_r = 0.1, cmp_phi = std::numbers::pi / 4.0;
    unsigned cmp_nmax = 12;
    std::string cmp_out;
    int cmp_precision = 12;
    compare_cmd->add_option("--r", cmp_r, "squeezing amplitude");
    compare_cmd->add_option("--phi", cmp_phi, "phase (radians)");
    compare_cmd->add_option("--n-max", cmp_nmax, "resource range 1..n");
    compare_cmd->add_option("--out", cmp_out, "output path or '-' for stdout");
    compare_cmd->add_option("--precision", cmp_precision, "significant digits, 6..17");

    // --- validate ------------------------------------------------------
    app.add_subcommand("validate", "run the full verification suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (sweep_cmd->parsed()) {
            su11::sweep::SweepSpec spec;
            if (!config_path.empty()) {
                spec = su11::sweep::spec_from_json(read_file(config_path));
            }
            if (!scheme_names.empty()) {
                // flags replace the config's scheme list wholesale
                spec.schemes.clear();
                for (const std::string& name : scheme_names) {
                    const auto kind = su11::scheme_from_string(name);
                    if (!kind) throw std::invalid_argument("unknown scheme '" + name + "'");
                    spec.schemes.push_back(*kind);
                }
            }
            if (!r_values.empty()) spec.r_values = r_values;
            if (sweep_cmd->count("--theta")) spec.theta = theta;
            if (sweep_cmd->count("--phi-min")) spec.phi_min = phi_min;
            if (sweep_cmd->count("--phi-max")) spec.phi_max = phi_max;
            if (sweep_cmd->count("--phi-steps")) spec.phi_steps = phi_steps;
            if (!loops_text.empty()) {
                const auto [lo, hi] = parse_loop_range(loops_text);
                spec.loops_min = lo;
                spec.loops_max = hi;
            }
            if (!eta_values.empty()) spec.eta_values = eta_values;
            if (!swap_text.empty()) {
                if (swap_text == "auto") {
                    spec.swap_auto = true;
                    spec.swap_interval = 0;
                } else {
                    spec.swap_auto = false;
                    spec.swap_interval = static_cast<unsigned>(std::stoul(swap_text));
                }
            }
            if (!out_path.empty()) spec.out = out_path;
            if (sweep_cmd->count("--precision")) spec.precision = precision;

            su11::sweep::validate_spec(spec);
            OutputTarget target;
            target.open(spec.out);
            su11::sweep::run_sweep(spec, *target.os, run_opts);
            return 0;
        }

        if (figure_cmd->parsed()) {
            if (!su11::sweep::is_figure_name(figure_name)) {
                throw std::invalid_argument("unknown figure preset '" + figure_name + "'");
            }
            const int prec = figure_cmd->count("--precision")
                                 ? fig_precision
                                 : su11::sweep::figure_default_precision();
            const std::string out = fig_out.empty() ? "-" : fig_out;
            OutputTarget target;
            target.open(out);
            su11::sweep::run_figure(figure_name, *target.os, prec, run_opts);
            if (!gnuplot_path.empty()) {
                std::ofstream g(gnuplot_path, std::ios::binary);
                if (!g) throw std::invalid_argument("cannot open '" + gnuplot_path + "'");
                g << su11::sweep::figure_gnuplot(figure_name, out == "-" ? "data.csv" : out);
            }
            return 0;
        }

        if (period_cmd->parsed()) {
            su11::SchemeConfig cfg;
            cfg.kind = su11::SchemeKind::sequential;
            cfg.r = period_r;
            cfg.eta = period_eta;
            const unsigned k = su11::estimate_period(cfg, period_phi, period_max);
            std::cout << k << '\n';
            return 0;
        }

        if (compare_cmd->parsed()) {
            const std::string out = cmp_out.empty() ? "-" : cmp_out;
            OutputTarget target;
            target.open(out);
            su11::sweep::run_compare(cmp_r, cmp_phi, cmp_nmax, *target.os, cmp_precision, run_opts);
            return 0;
        }

        // validate
        auto results = su11::validate::run_all(std::cout);
        return su11::validate::all_passed(results) ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
