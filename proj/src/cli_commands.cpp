#include "lelosc/cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "lelosc/bode.hpp"
#include "lelosc/config.hpp"
#include "lelosc/csv.hpp"
#include "lelosc/errors.hpp"
#include "lelosc/lelmodel.hpp"
#include "lelosc/modeid.hpp"
#include "lelosc/scan.hpp"
#include "lelosc/state_space.hpp"
#include "lelosc/timesim.hpp"

namespace lelosc {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const BracketInvalid& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoBracket;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

ConfigDocument config_or_default(const std::string& config_path) {
    return config_path.empty() ? default_config() : load_config(config_path);
}

void print_estimate(const ModeEstimate& est, const std::string& unit) {
    std::cout << "mode: frequency " << fmt(est.frequency_hz) << " Hz, peak-to-peak "
              << fmt(est.peak_to_peak) << (unit.empty() ? "" : " " + unit) << ", growth rate "
              << fmt(est.growth_rate) << " 1/s, prominence " << fmt(est.prominence_db) << " dB";
    if (!est.reliable) std::cout << " (unreliable: flat signal)";
    std::cout << '\n';
}

} // namespace

int cmd_bode(const std::string& config_path, const std::string& which, double f_lo, double f_hi,
             const std::string& out_path) {
    return guarded([&]() -> int {
        const ConfigDocument cfg = config_or_default(config_path);
        TransferFunction g;
        if (which == "gdvc") {
            g = build_gdvc(to_params(cfg, 0.0), true);
        } else if (which == "gsync") {
            g = build_gsync(to_params(cfg, 0.0));
        } else if (which == "loopgain") {
            g = build_loop_gain(to_params(cfg, operating_current(cfg)));
        } else {
            throw std::invalid_argument("unknown bode subject '" + which +
                                        "' (expected gdvc, gsync, or loopgain)");
        }
        const auto pts = bode_sweep(g, f_lo, f_hi, 200, Exec::parallel);
        CsvTable table;
        table.header = {"frequency_hz", "magnitude_db", "phase_deg_unwrapped"};
        table.columns.resize(3);
        for (const auto& pt : pts) {
            table.columns[0].push_back(pt.frequency_hz);
            table.columns[1].push_back(pt.magnitude_db);
            table.columns[2].push_back(pt.phase_deg);
        }
        write_csv(out_path, table);
        const ResonantPeak peak = resonant_frequency(g, f_lo, f_hi);
        if (peak.flat)
            std::cout << "flat spectrum (variation < 0.1 dB), no resonant peak\n";
        else
            std::cout << "resonant peak at " << fmt(peak.frequency_hz) << " Hz ("
                      << fmt(peak.magnitude_db) << " dB)\n";
        return kExitOk;
    });
}

int cmd_step(const std::string& config_path, std::optional<double> k_override,
             const std::string& out_path) {
    return guarded([&]() -> int {
        const ConfigDocument cfg = config_or_default(config_path);
        double id0 = 0.0;
        if (k_override) {
            if (!(*k_override >= 0.0))
                throw std::invalid_argument("loop gain override must be nonnegative");
            if (!(cfg.xg > 0.0))
                throw std::invalid_argument("loop gain override needs xg > 0");
            id0 = std::sqrt(*k_override) / cfg.xg;
        } else {
            id0 = operating_current(cfg);
        }
        const FeedbackParams p = to_params(cfg, id0);
        const TransferFunction g = build_closed_loop(p, LoopOutput::ac_voltage);
        const StepResult sr = step_response(g, 2.0, 5e-5);
        TimeSeries y = sr.y;
        y.name = "delta_v_ac";
        y.unit = "";
        write_series_csv(out_path, y);

        const StabilityVerdict v = classify_stability(p);
        std::cout << "verdict: " << to_string(v.cls) << " at k = " << fmt(p.gain())
                  << ", oscillation frequency " << fmt(v.oscillation_frequency_hz) << " Hz\n";
        const double drop = p.xg * p.id0;
        std::cout << "note: the small-signal power gain assumes V = 1 pu; the exact network "
                     "voltage at this operating point is "
                  << fmt(std::sqrt(p.vg * p.vg - drop * drop)) << " pu\n";
        if (sr.diverged) std::cout << "note: response diverged; series holds the prefix\n";
        return kExitOk;
    });
}

int cmd_sweep(const std::string& config_path, double k_lo, double k_hi, int points,
              const std::string& out_path) {
    return guarded([&]() -> int {
        const ConfigDocument cfg = config_or_default(config_path);
        const FeedbackParams p = to_params(cfg, operating_current(cfg));
        const auto rows = gain_scan(p, k_lo, k_hi, points, Exec::parallel);
        CsvTable table;
        table.header = {"k", "max_pole_real", "freq_hz"};
        table.columns.resize(3);
        for (const auto& row : rows) {
            table.columns[0].push_back(row.k);
            table.columns[1].push_back(row.max_pole_real);
            table.columns[2].push_back(row.freq_hz);
        }
        write_csv(out_path, table);
        if (points == 1) return kExitOk;

        const double eps = stability_margin_eps(p);
        const bool lo_stable = rows.front().max_pole_real < -eps;
        const bool hi_stable = rows.back().max_pole_real < -eps;
        if (lo_stable && hi_stable) {
            std::cout << "stable throughout [" << fmt(k_lo) << ", " << fmt(k_hi) << "]\n";
            return kExitNoBracket;
        }
        if (!lo_stable) {
            std::cout << "not stable at k_lo = " << fmt(k_lo) << "; no stable bracket edge\n";
            return kExitNoBracket;
        }
        const double k_star = critical_gain(p, k_lo, k_hi);
        std::cout << "critical gain k* = " << fmt(k_star) << '\n';
        return kExitOk;
    });
}

int cmd_sim(const std::string& config_path, std::optional<double> level_percent,
            const std::string& out_dir) {
    return guarded([&]() -> int {
        const ConfigDocument cfg = config_or_default(config_path);
        const double level = level_percent.value_or(100.0);
        if (!(level > 0.0) || level > 100.0)
            throw std::invalid_argument("load level must be in (0, 100] percent");
        const double target = (level / 100.0) * rated_power(cfg.vg, cfg.xg);

        Scenario sc = to_scenario(cfg);
        if (sc.t_end > 2.0)
            sc.pdc_profile = {{0.0, 0.5 * target}, {1.0, 0.5 * target}, {2.0, target},
                              {sc.t_end, target}};
        else
            sc.pdc_profile = {{0.0, target}, {sc.t_end, target}};

        std::cout << "simulating " << fmt(level) << "% load: target P_dc " << fmt(target)
                  << " pu (" << fmt(target * sc.p_base_mw) << " MW), t_end " << fmt(sc.t_end)
                  << " s\n";
        const SimResult res = simulate(sc);

        std::filesystem::create_directories(out_dir);
        const auto path = [&](const char* base) {
            return (std::filesystem::path(out_dir) / base).string();
        };
        write_series_csv(path("p_ac_mw.csv"), to_mw(res.signals.at("P_ac"), sc.p_base_mw));
        write_series_csv(path("v_ac.csv"), res.signals.at("V"));
        write_series_csv(path("v_dc.csv"), res.signals.at("V_dc"));
        write_series_csv(path("i_d.csv"), res.signals.at("i_d"));
        write_series_csv(path("i_d_ref.csv"), res.signals.at("i_d_ref"));

        if (res.collapsed) {
            std::cout << "fault: voltage collapse at t = " << fmt(res.fault_time)
                      << " s (partial series written)\n";
            return kExitSimFault;
        }
        if (res.diverged) {
            std::cout << "fault: numerical divergence at t = " << fmt(res.fault_time)
                      << " s (partial series written)\n";
            return kExitSimFault;
        }

        const TimeSeries p_mw = to_mw(res.signals.at("P_ac"), sc.p_base_mw);
        const ModeEstimate est =
            dominant_mode(p_mw, p_mw.t_end() - 2.0, p_mw.t_end());
        print_estimate(est, "MW");
        return kExitOk;
    });
}

int cmd_analyze(const std::string& csv_path, std::optional<double> window_start,
                std::optional<double> window_end, const std::string& out_path) {
    return guarded([&]() -> int {
        const CsvTable table = read_csv(csv_path);
        TimeSeries series;
        if (table.header.size() == 2)
            series = series_from_table(table);
        else if (table.header.size() == 7)
            series = instantaneous_power(three_phase_from_table(table));
        else
            throw ParseError("expected a 2-column series or 7-column three-phase CSV, got " +
                             std::to_string(table.header.size()) + " columns");

        const double ws = window_start.value_or(series.t0);
        const double we = window_end.value_or(series.t_end());
        const ModeEstimate est = dominant_mode(series, ws, we);

        const nlohmann::json doc = {
            {"frequency_hz", est.frequency_hz},
            {"peak_to_peak", est.peak_to_peak},
            {"growth_rate", est.growth_rate},
            {"window_start", est.window_start},
            {"window_end", est.window_end},
            {"prominence_db", est.prominence_db},
            {"reliable", est.reliable},
        };
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
        out << doc.dump(2) << '\n';
        if (!out) throw ParseError("write failure on '" + out_path + "'");

        print_estimate(est, "");
        return est.reliable ? kExitOk : kExitFlat;
    });
}

} // namespace lelosc
