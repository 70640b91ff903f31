#include "fde/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fde/sweep.hpp"

namespace fde {

namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& key) {
    std::istringstream iss(text);
    std::vector<double> out;
    double v;
    while (iss >> v) out.push_back(v);
    std::string rest;
    if (iss.clear(), iss >> rest; !rest.empty())
        throw ConfigError("config: non-numeric value for key '" + key + "'");
    return out;
}

double parse_one(const std::string& text, const std::string& key) {
    auto v = parse_numbers(text, key);
    if (v.size() != 1)
        throw ConfigError("config: key '" + key + "' expects a single number");
    return v[0];
}

Vec3 parse_vec3(const std::string& text, const std::string& key) {
    auto v = parse_numbers(text, key);
    if (v.size() != 3) throw ConfigError("config: key '" + key + "' expects 3 numbers");
    return {v[0], v[1], v[2]};
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

}  // namespace

Pipeline pipeline_from_string(const std::string& name) {
    if (name == "sweep") return Pipeline::sweep;
    if (name == "reconstruct") return Pipeline::reconstruct;
    if (name == "threshold") return Pipeline::threshold;
    if (name == "verify-oracles") return Pipeline::verify_oracles;
    if (name == "roundtrip" || name == "timedomain-roundtrip") return Pipeline::roundtrip;
    throw ConfigError("config: unknown pipeline '" + name + "'");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    ExperimentConfig cfg;
    bool tau_seen = false;
    std::string section, line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = line.substr(1, line.size() - 2);
            if (section != "problem" && section != "probe" && section != "run")
                throw ConfigError("config: unknown section '" + section + "'");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at line " +
                              std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        std::string qual = section + "." + key;

        if (qual == "problem.alpha0") cfg.problem.alpha0 = parse_one(value, key);
        else if (qual == "problem.box_lo") cfg.problem.box.lo = parse_vec3(value, key);
        else if (qual == "problem.box_hi") cfg.problem.box.hi = parse_vec3(value, key);
        else if (qual == "problem.grid_n") {
            auto v = parse_numbers(value, key);
            if (v.size() == 1) cfg.problem.box.n = {int(v[0]), int(v[0]), int(v[0])};
            else if (v.size() == 3) cfg.problem.box.n = {int(v[0]), int(v[1]), int(v[2])};
            else throw ConfigError("config: grid_n expects 1 or 3 integers");
        } else if (qual == "problem.ball") {
            auto v = parse_numbers(value, key);
            if (v.size() != 4)
                throw ConfigError("config: ball expects 'cx cy cz radius'");
            cfg.problem.obstacle.push_back({{v[0], v[1], v[2]}, v[3]});
        } else if (qual == "problem.jump_kind") {
            if (value == "constant") cfg.problem.jump.kind = JumpKind::constant;
            else if (value == "power") cfg.problem.jump.kind = JumpKind::power;
            else throw ConfigError("config: jump_kind must be 'constant' or 'power'");
        } else if (qual == "problem.jump_amplitude")
            cfg.problem.jump.amplitude = parse_one(value, key);
        else if (qual == "problem.jump_gamma") cfg.problem.jump.gamma = parse_one(value, key);
        else if (qual == "probe.flavor") {
            if (value == "ext") cfg.probe.flavor = ProbeFlavor::ext;
            else if (value == "int") cfg.probe.flavor = ProbeFlavor::interior;
            else throw ConfigError("config: probe flavor must be 'ext' or 'int'");
        } else if (qual == "probe.m") cfg.probe.m = int(parse_one(value, key));
        else if (qual == "probe.center") cfg.probe.p = parse_vec3(value, key);
        else if (qual == "probe.eta") cfg.probe.eta = parse_one(value, key);
        else if (qual == "probe.r1") cfg.probe.r1 = parse_one(value, key);
        else if (qual == "probe.r2") cfg.probe.r2 = parse_one(value, key);
        else if (qual == "run.pipeline") cfg.pipeline = pipeline_from_string(value);
        else if (qual == "run.tau_schedule") {
            std::istringstream iss(value);
            std::string mode;
            iss >> mode;
            std::string rest;
            std::getline(iss, rest);
            if (mode == "geometric") {
                auto v = parse_numbers(rest, key);
                if (v.size() != 3)
                    throw ConfigError("config: tau_schedule geometric expects 'min max count'");
                cfg.tau_schedule = geometric_schedule(v[0], v[1], int(v[2]));
            } else if (mode == "list") {
                cfg.tau_schedule = parse_numbers(rest, key);
            } else {
                throw ConfigError("config: tau_schedule mode must be 'geometric' or 'list'");
            }
            tau_seen = true;
        } else if (qual == "run.T_values") cfg.T_values = parse_numbers(value, key);
        else if (qual == "run.out_dir") cfg.out_dir = value;
        else if (qual == "run.workers") cfg.workers = int(parse_one(value, key));
        else if (qual == "run.solver_tol") cfg.solver_tol = parse_one(value, key);
        else if (qual == "run.t_max") cfg.t_max = parse_one(value, key);
        else if (qual == "run.n_times") cfg.n_times = int(parse_one(value, key));
        else if (qual == "run.s_max") cfg.s_max = parse_one(value, key);
        else if (qual == "run.gauss_order") cfg.gauss_order = int(parse_one(value, key));
        else if (qual == "run.roundtrip_taus") cfg.roundtrip_taus = parse_numbers(value, key);
        else throw ConfigError("config: unknown key '" + key + "' in section [" + section + "]");
    }
    // fail-fast geometric validation with the violated constraint named
    cfg.problem.validate();
    cfg.probe.validate(cfg.problem.box);
    if (cfg.pipeline != Pipeline::verify_oracles && cfg.pipeline != Pipeline::roundtrip &&
        !tau_seen)
        throw ConfigError("config: tau_schedule is required for this pipeline");
    if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1");
    return cfg;
}

}  // namespace fde
