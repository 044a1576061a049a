#include "w2pt/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "w2pt/errors.hpp"

namespace w2pt {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::static_cavity_wavepacket: return "static-cavity-wavepacket";
        case Scenario::dynamic_cavity_vacuum: return "dynamic-cavity-vacuum";
        case Scenario::purity_sweep: return "purity-sweep";
        case Scenario::quality_sweep: return "quality-sweep";
        case Scenario::convergence: return "convergence";
        case Scenario::stability_scan: return "stability-scan";
    }
    return "?";
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "static-cavity-wavepacket") return Scenario::static_cavity_wavepacket;
    if (s == "dynamic-cavity-vacuum") return Scenario::dynamic_cavity_vacuum;
    if (s == "purity-sweep") return Scenario::purity_sweep;
    if (s == "quality-sweep") return Scenario::quality_sweep;
    if (s == "convergence") return Scenario::convergence;
    if (s == "stability-scan") return Scenario::stability_scan;
    throw ConfigError("unknown scenario '" + s + "'");
}

namespace {

struct RawConfig {
    // section -> key -> value tokens
    std::map<std::string, std::map<std::string, std::vector<std::string>>> sections;
};

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

/// Lexer: words plus the punctuation tokens '{', '}', '='. Commas separate
/// list values, '#' comments run to end of line.
std::vector<std::string> lex(const std::string& text) {
    std::vector<std::string> tokens;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) {
            tokens.push_back(word);
            word.clear();
        }
    };
    for (size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            flush();
        } else if (c == '{' || c == '}' || c == '=') {
            flush();
            tokens.push_back(std::string(1, c));
        } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            word += c;
        }
    }
    flush();
    return tokens;
}

RawConfig tokenize(const std::string& text) {
    const std::vector<std::string> toks = lex(text);
    RawConfig raw;
    std::string section;  // "" = top level
    size_t i = 0;
    auto peek = [&](size_t off) -> const std::string& {
        static const std::string empty;
        return i + off < toks.size() ? toks[i + off] : empty;
    };
    while (i < toks.size()) {
        const std::string& tok = toks[i];
        if (tok == "}") {
            if (section.empty()) throw ConfigError("stray '}' in config");
            section.clear();
            ++i;
            continue;
        }
        if (tok == "{" || tok == "=") throw ConfigError("unexpected '" + tok + "' in config");
        if (peek(1) == "{") {
            if (!section.empty()) throw ConfigError("nested sections are not allowed");
            section = tok;
            i += 2;
            continue;
        }
        if (peek(1) != "=") throw ConfigError("expected '=' after key '" + tok + "'");
        const std::string key = tok;
        i += 2;
        std::vector<std::string> values;
        while (i < toks.size()) {
            const std::string& v = toks[i];
            if (v == "}" || v == "{" || v == "=") break;
            if (peek(1) == "=" || peek(1) == "{") break;  // v starts the next entry
            values.push_back(v);
            ++i;
        }
        if (values.empty()) throw ConfigError("key '" + key + "' has no value");
        if (raw.sections[section].count(key)) {
            throw ConfigError("duplicate key '" + key + "' in section '" + section + "'");
        }
        raw.sections[section][key] = std::move(values);
    }
    if (!section.empty()) throw ConfigError("unterminated section '" + section + "'");
    return raw;
}

class SectionReader {
public:
    SectionReader(RawConfig& raw, std::string name) : raw_(raw), name_(std::move(name)) {}

    bool present() const { return raw_.sections.count(name_) > 0; }

    std::optional<std::string> take_one(const std::string& key) {
        auto sec = raw_.sections.find(name_);
        if (sec == raw_.sections.end()) return std::nullopt;
        auto it = sec->second.find(key);
        if (it == sec->second.end()) return std::nullopt;
        if (it->second.size() != 1) {
            throw ConfigError("key '" + key + "' in section '" + name_ + "' expects one value");
        }
        std::string v = it->second.front();
        sec->second.erase(it);
        return v;
    }

    std::optional<std::vector<std::string>> take_list(const std::string& key) {
        auto sec = raw_.sections.find(name_);
        if (sec == raw_.sections.end()) return std::nullopt;
        auto it = sec->second.find(key);
        if (it == sec->second.end()) return std::nullopt;
        std::vector<std::string> v = it->second;
        sec->second.erase(it);
        return v;
    }

    void get(const std::string& key, double& out) {
        if (auto v = take_one(key)) out = parse_double(key, *v);
    }
    void get(const std::string& key, int& out) {
        if (auto v = take_one(key)) out = parse_int(key, *v);
    }
    void get(const std::string& key, bool& out) {
        if (auto v = take_one(key)) {
            if (*v == "true" || *v == "1") out = true;
            else if (*v == "false" || *v == "0") out = false;
            else throw ConfigError("key '" + key + "': expected true/false");
        }
    }
    void get(const std::string& key, std::string& out) {
        if (auto v = take_one(key)) out = *v;
    }
    void get(const std::string& key, std::vector<double>& out) {
        if (auto v = take_list(key)) {
            out.clear();
            for (const auto& t : *v) out.push_back(parse_double(key, t));
        }
    }
    void get(const std::string& key, std::vector<int>& out) {
        if (auto v = take_list(key)) {
            out.clear();
            for (const auto& t : *v) out.push_back(parse_int(key, t));
        }
    }

    double parse_double(const std::string& key, const std::string& v) {
        try {
            size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': '" + v + "' is not a number");
        }
    }
    int parse_int(const std::string& key, const std::string& v) {
        try {
            size_t pos = 0;
            const int i = std::stoi(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return i;
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
        }
    }

private:
    RawConfig& raw_;
    std::string name_;
};

void reject_leftovers(const RawConfig& raw) {
    for (const auto& [section, keys] : raw.sections) {
        for (const auto& [key, _] : keys) {
            const std::string where = section.empty() ? "top level" : "section '" + section + "'";
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RawConfig raw = tokenize(text);
    RunConfig cfg;
    cfg.raw_text = text;

    SectionReader top(raw, "");
    if (auto s = top.take_one("scenario")) cfg.scenario = scenario_from_string(*s);
    top.get("output_dir", cfg.output_dir);

    SectionReader grid(raw, "grid");
    grid.get("length", cfg.length);
    grid.get("n_points", cfg.n_points);

    SectionReader time(raw, "time");
    time.get("t_max", cfg.t_max);
    time.get("cfl_factor", cfg.cfl_factor);

    SectionReader pot(raw, "potential");
    pot.get("model", cfg.potential_model);
    pot.get("v_max", cfg.potential_params.v_max);
    pot.get("ramp_time", cfg.potential_params.ramp_time);
    pot.get("x_left_wall", cfg.potential_params.x_left_wall);
    pot.get("x_right_wall", cfg.potential_params.x_right_wall);
    pot.get("wall_width", cfg.potential_params.wall_width);
    pot.get("sharpness", cfg.potential_params.sharpness);
    pot.get("hold", cfg.potential_hold);
    pot.get("mass", cfg.uniform_mass);

    SectionReader sm(raw, "smearing");
    sm.get("sigma_x", cfg.smearing.sigma_x);
    sm.get("sigma_t", cfg.smearing.sigma_t);

    SectionReader st(raw, "state");
    st.get("kind", cfg.state_kind);
    st.get("alpha", cfg.alpha);
    st.get("x0", cfg.x0);
    st.get("n_modes", cfg.wavepacket_modes);

    SectionReader reg(raw, "region");
    reg.get("x_left", cfg.region.x_left);
    reg.get("x_right", cfg.region.x_right);

    SectionReader mode(raw, "mode");
    mode.get("x_left", cfg.mode_region.x_left);
    mode.get("x_right", cfg.mode_region.x_right);
    mode.get("numbers", cfg.mode_numbers);
    mode.get("window_crossings", cfg.window_crossings);

    SectionReader out(raw, "output");
    out.get("energy_stride", cfg.energy_stride);
    out.get("nu_stride", cfg.nu_stride);
    out.get("t00_times", cfg.t00_times);

    SectionReader sweep(raw, "sweep");
    sweep.get("param", cfg.sweep_param);
    sweep.get("values", cfg.sweep_values);

    SectionReader conv(raw, "convergence");
    conv.get("coarse_n_points", cfg.conv_coarse_points);
    conv.get("x_prime", cfg.conv_x_prime);
    conv.get("t_prime", cfg.conv_t_prime);
    conv.get("t_max", cfg.conv_t_max);
    conv.get("h", cfg.conv_h);
    conv.get("degrade_first_order", cfg.conv_degrade);

    SectionReader stab(raw, "stability");
    stab.get("n_theta", cfg.stability_n_theta);

    SectionReader evo(raw, "evolution");
    evo.get("paper_literal_vprime", cfg.paper_literal_vprime);

    reject_leftovers(raw);
    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

SpatialGrid RunConfig::make_grid() const { return SpatialGrid::make(length, n_points); }

TimeGrid RunConfig::make_time(const SpatialGrid& grid, double t_max_override) const {
    const double t = t_max_override > 0.0 ? t_max_override : scenario_t_max();
    return TimeGrid::with_cfl(grid, t, cfl_factor);
}

Potential RunConfig::make_potential() const {
    if (potential_model == "none") return Potential::none();
    if (potential_model == "uniform-mass") return Potential::uniform_mass(uniform_mass);
    if (potential_model == "double-wall") {
        return Potential::double_wall(potential_params, potential_hold);
    }
    throw ConfigError("unknown potential model '" + potential_model + "'");
}

double RunConfig::scenario_t_max() const {
    if (t_max > 0.0) return t_max;
    const double crossing = mode_region.length();
    switch (scenario) {
        case Scenario::static_cavity_wavepacket:
            return region.length() + 0.5;
        case Scenario::dynamic_cavity_vacuum:
        case Scenario::purity_sweep:
            return potential_params.ramp_time + window_crossings * crossing + 0.5;
        case Scenario::quality_sweep:
            return region.length() + 0.5;
        default:
            return 2.0;
    }
}

void RunConfig::validate() const {
    const SpatialGrid grid = make_grid();  // validates grid numbers
    if (!(cfl_factor > 0.0) || cfl_factor > 1.0) {
        throw ConfigError("cfl_factor must lie in (0, 1]");
    }
    smearing.validate();
    region.validate(length);
    mode_region.validate(length);
    if (state_kind != "vacuum" && state_kind != "wavepacket") {
        throw ConfigError("state kind must be vacuum or wavepacket");
    }
    if (scenario == Scenario::dynamic_cavity_vacuum || scenario == Scenario::purity_sweep) {
        if (state_kind != "vacuum") {
            throw ConfigError(to_string(scenario) + " requires state kind = vacuum");
        }
    }
    if (scenario == Scenario::static_cavity_wavepacket || scenario == Scenario::quality_sweep) {
        if (state_kind != "wavepacket") {
            throw ConfigError(to_string(scenario) + " requires state kind = wavepacket");
        }
    }
    if (state_kind == "wavepacket") {
        if (!(alpha > 0.0)) throw ConfigError("wavepacket alpha must be positive");
        if (!(x0 > 0.0) || !(x0 < length)) throw ConfigError("wavepacket x0 must lie inside the box");
        if (wavepacket_modes < 1) throw ConfigError("wavepacket n_modes must be at least 1");
    }
    for (int n : mode_numbers) {
        if (n < 1) throw ConfigError("mode numbers must be positive");
    }
    if (energy_stride < 1 || nu_stride < 1) throw ConfigError("output strides must be >= 1");
    const Potential pot = make_potential();  // validates parameters
    // CFL bound against the scenario's maximum potential.
    const double bound = cfl_max_timestep(grid.spacing, pot.max_value());
    const double dt = cfl_factor * grid.spacing;
    if (dt > bound * (1.0 + 1e-12)) {
        throw CflError("dt = " + std::to_string(dt) + " violates the stability bound " +
                       std::to_string(bound));
    }
    if (scenario == Scenario::purity_sweep || scenario == Scenario::quality_sweep) {
        if (!sweep_param.empty()) {
            if (sweep_param != "ramp_time" && sweep_param != "sharpness" &&
                sweep_param != "wall_width" && sweep_param != "mode_number") {
                throw ConfigError("unknown sweep parameter '" + sweep_param + "'");
            }
        }
    }
    if (conv_h < 2) throw ConfigError("convergence h must be >= 2");
    if (stability_n_theta < 16) throw ConfigError("stability n_theta must be >= 16");
}

}  // namespace w2pt
