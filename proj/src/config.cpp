#include "lelosc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lelosc/errors.hpp"

namespace lelosc {

namespace {

using nlohmann::json;

const json& section(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) throw ConfigError(std::string("config is missing section '") + key + "'");
    if (!it->is_object()) throw ConfigError(std::string("config section '") + key + "' must be an object");
    return *it;
}

double number(const json& obj, const char* where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError(std::string("config is missing key '") + where + "." + key + "'");
    if (!it->is_number())
        throw ConfigError(std::string("config key '") + where + "." + key + "' must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v))
        throw ConfigError(std::string("config key '") + where + "." + key + "' must be finite");
    return v;
}

void reject_unknown(const json& obj, const char* where,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            throw ConfigError(std::string("unknown config key '") + where + "." + key + "'");
    }
}

std::vector<std::pair<double, double>> profile(const json& obj, const char* where) {
    const auto it = obj.find("pdc_profile");
    if (it == obj.end())
        throw ConfigError(std::string("config is missing key '") + where + ".pdc_profile'");
    if (!it->is_array())
        throw ConfigError("config key 'scenario.pdc_profile' must be an array of [t, p] pairs");
    std::vector<std::pair<double, double>> out;
    out.reserve(it->size());
    for (const auto& entry : *it) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
            throw ConfigError("each pdc_profile entry must be a [time, power] number pair");
        const double t = entry[0].get<double>();
        const double p = entry[1].get<double>();
        if (!std::isfinite(t) || !std::isfinite(p))
            throw ConfigError("pdc_profile entries must be finite");
        out.emplace_back(t, p);
    }
    return out;
}

} // namespace

ConfigDocument default_config() {
    ConfigDocument cfg;
    const double full = rated_power(cfg.vg, cfg.xg);
    const double half = 0.5 * full;
    cfg.pdc_profile = {{0.0, half}, {1.0, half}, {2.0, full}, {cfg.t_end, full}};
    return cfg;
}

ConfigDocument parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config JSON syntax error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown(doc, "", {"grid", "dvc", "current_lag", "sync", "scenario"});

    const json& grid = section(doc, "grid");
    reject_unknown(grid, "grid", {"vg", "xg"});
    const json& dvc = section(doc, "dvc");
    reject_unknown(dvc, "dvc", {"kp", "ki", "tau_dc", "vdc_ref"});
    const json& lag = section(doc, "current_lag");
    reject_unknown(lag, "current_lag", {"tau_i"});
    const json& sync = section(doc, "sync");
    reject_unknown(sync, "sync", {"tau_sync"});
    const json& scenario = section(doc, "scenario");
    reject_unknown(scenario, "scenario", {"p_base_mw", "pdc_profile", "t_end", "dt", "i_limit"});

    ConfigDocument cfg;
    cfg.vg = number(grid, "grid", "vg");
    cfg.xg = number(grid, "grid", "xg");
    cfg.kp = number(dvc, "dvc", "kp");
    cfg.ki = number(dvc, "dvc", "ki");
    cfg.tau_dc = number(dvc, "dvc", "tau_dc");
    cfg.vdc_ref = number(dvc, "dvc", "vdc_ref");
    cfg.tau_i = number(lag, "current_lag", "tau_i");
    cfg.tau_sync = number(sync, "sync", "tau_sync");
    cfg.p_base_mw = number(scenario, "scenario", "p_base_mw");
    cfg.pdc_profile = profile(scenario, "scenario");
    cfg.t_end = number(scenario, "scenario", "t_end");
    cfg.dt = number(scenario, "scenario", "dt");
    cfg.i_limit = number(scenario, "scenario", "i_limit");
    return cfg;
}

ConfigDocument load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ConfigDocument& cfg) {
    json profile_json = json::array();
    for (const auto& [t, p] : cfg.pdc_profile) profile_json.push_back({t, p});
    const json doc = {
        {"grid", {{"vg", cfg.vg}, {"xg", cfg.xg}}},
        {"dvc",
         {{"kp", cfg.kp}, {"ki", cfg.ki}, {"tau_dc", cfg.tau_dc}, {"vdc_ref", cfg.vdc_ref}}},
        {"current_lag", {{"tau_i", cfg.tau_i}}},
        {"sync", {{"tau_sync", cfg.tau_sync}}},
        {"scenario",
         {{"p_base_mw", cfg.p_base_mw},
          {"pdc_profile", profile_json},
          {"t_end", cfg.t_end},
          {"dt", cfg.dt},
          {"i_limit", cfg.i_limit}}},
    };
    return doc.dump(2) + "\n";
}

FeedbackParams to_params(const ConfigDocument& cfg, double id0) {
    FeedbackParams p;
    p.kp = cfg.kp;
    p.ki = cfg.ki;
    p.tau_dc = cfg.tau_dc;
    p.tau_i = cfg.tau_i;
    p.tau_sync = cfg.tau_sync;
    p.xg = cfg.xg;
    p.id0 = id0;
    p.vg = cfg.vg;
    p.vdc_ref = cfg.vdc_ref;
    p.validate();
    return p;
}

Scenario to_scenario(const ConfigDocument& cfg) {
    Scenario sc;
    sc.params = to_params(cfg, 0.0);
    sc.p_base_mw = cfg.p_base_mw;
    sc.pdc_profile = cfg.pdc_profile;
    sc.t_end = cfg.t_end;
    sc.dt = cfg.dt;
    sc.i_limit = cfg.i_limit;
    return sc;
}

double operating_current(const ConfigDocument& cfg) {
    if (cfg.pdc_profile.empty())
        throw ConfigError("operating point needs a non-empty pdc_profile");
    return equilibrium_current(cfg.pdc_profile.back().second, cfg.vg, cfg.xg);
}

} // namespace lelosc
