#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lelosc/cli_commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Stability analysis of a grid-connected large electronic load: "
                 "frequency-domain loop tools and a nonlinear averaged simulator"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration file (built-in defaults if omitted)");

    int rc = lelosc::kExitOk;

    auto* bode = app.add_subcommand("bode", "Frequency sweep of a loop block");
    std::string bode_which;
    std::string bode_out;
    double f_lo = 1.0;
    double f_hi = 100.0;
    bode->add_option("which", bode_which, "Block to sweep: gdvc, gsync, or loopgain")->required();
    bode->add_option("--out", bode_out, "Output CSV path")->required();
    bode->add_option("--f-lo", f_lo, "Sweep start, Hz");
    bode->add_option("--f-hi", f_hi, "Sweep end, Hz");
    bode->callback([&] { rc = lelosc::cmd_bode(config_path, bode_which, f_lo, f_hi, bode_out); });

    auto* step = app.add_subcommand("step", "Closed-loop disturbance step response");
    std::string step_out;
    double k_value = 0.0;
    auto* k_opt = step->add_option("--k", k_value, "Loop gain override (xg*id0)^2, pu^2");
    step->add_option("--out", step_out, "Output CSV path")->required();
    step->callback([&] {
        const std::optional<double> k =
            k_opt->count() > 0 ? std::optional<double>(k_value) : std::nullopt;
        rc = lelosc::cmd_step(config_path, k, step_out);
    });

    auto* sweep = app.add_subcommand("sweep", "Loop-gain sweep and critical gain");
    std::string sweep_out;
    double k_lo = 0.05;
    double k_hi = 0.5;
    int points = 100;
    sweep->add_option("--k-lo", k_lo, "Sweep start gain, pu^2")->required();
    sweep->add_option("--k-hi", k_hi, "Sweep end gain, pu^2")->required();
    sweep->add_option("--points", points, "Grid points");
    sweep->add_option("--out", sweep_out, "Output CSV path")->required();
    sweep->callback([&] { rc = lelosc::cmd_sweep(config_path, k_lo, k_hi, points, sweep_out); });

    auto* sim = app.add_subcommand("sim", "Nonlinear time-domain simulation");
    std::string sim_out;
    double level = 100.0;
    auto* level_opt = sim->add_option("--level", level, "Load level, percent of rated power");
    sim->add_option("--out", sim_out, "Output directory for per-signal CSVs")->required();
    sim->callback([&] {
        const std::optional<double> lv =
            level_opt->count() > 0 ? std::optional<double>(level) : std::nullopt;
        rc = lelosc::cmd_sim(config_path, lv, sim_out);
    });

    auto* analyze = app.add_subcommand("analyze", "Dominant-mode estimate of a CSV series");
    std::string analyze_csv;
    std::string analyze_out;
    double w_start = 0.0;
    double w_end = 0.0;
    analyze->add_option("csv", analyze_csv, "Input CSV (2-column series or 7-column three-phase)")
        ->required();
    auto* ws_opt = analyze->add_option("--window-start", w_start, "Window start, s");
    auto* we_opt = analyze->add_option("--window-end", w_end, "Window end, s");
    analyze->add_option("--out", analyze_out, "Output JSON path")->required();
    analyze->callback([&] {
        const std::optional<double> ws =
            ws_opt->count() > 0 ? std::optional<double>(w_start) : std::nullopt;
        const std::optional<double> we =
            we_opt->count() > 0 ? std::optional<double>(w_end) : std::nullopt;
        rc = lelosc::cmd_analyze(analyze_csv, ws, we, analyze_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return lelosc::kExitParse;
    }
    return rc;
}
