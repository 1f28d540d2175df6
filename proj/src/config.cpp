#include "tsg/config.hpp"

#include "tsg/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tsg {

SchemeConfig RunConfig::scheme_config() const {
    SchemeConfig sc;
    sc.scheme = scheme;
    sc.cfl = cfl;
    sc.dt_max = dt_max;
    sc.newton_tol = tol.newton_tol;
    sc.tol = tol;
    return sc;
}

SimState RunConfig::build_state(const Grid& grid) const {
    auto [n1, n2] = build_initial(profiles, grid);
    return regularise_initial(n1, n2, gamma, epsilon);
}

bool RunConfig::compact_initial_data() const {
    if (epsilon > 0.0)
        return false;
    return std::all_of(profiles.begin(), profiles.end(),
                       [](const ProfileSpec& p) { return p.compact(); });
}

namespace {

struct Parser {
    std::vector<std::string> errors;

    void fail(int line, const std::string& msg) {
        errors.push_back("line " + std::to_string(line) + ": " + msg);
    }

    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        if (b == std::string::npos)
            return "";
        return s.substr(b, e - b + 1);
    }

    bool parse_number(const std::string& v, int line, const char* key, double& out) {
        try {
            std::size_t pos = 0;
            out = std::stod(v, &pos);
            if (pos != v.size())
                throw std::invalid_argument(v);
            return true;
        } catch (const std::exception&) {
            fail(line, std::string(key) + ": expected a number, got '" + v + "'");
            return false;
        }
    }

    bool parse_int(const std::string& v, int line, const char* key, int& out) {
        double d;
        if (!parse_number(v, line, key, d))
            return false;
        if (d != std::floor(d)) {
            fail(line, std::string(key) + ": expected an integer, got '" + v + "'");
            return false;
        }
        out = static_cast<int>(d);
        return true;
    }

    bool parse_bool(const std::string& v, int line, const char* key, bool& out) {
        if (v == "true") {
            out = true;
            return true;
        }
        if (v == "false") {
            out = false;
            return true;
        }
        fail(line, std::string(key) + ": expected true or false, got '" + v + "'");
        return false;
    }

    bool parse_list(const std::string& v, int line, const char* key, std::vector<double>& out) {
        out.clear();
        if (trim(v).empty())
            return true;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            double d;
            if (!parse_number(trim(item), line, key, d))
                return false;
            out.push_back(d);
        }
        return true;
    }

    // name(arg, arg, ...) or a bare name
    bool parse_call(const std::string& v, int line, const char* key, std::string& name,
                    std::vector<double>& args) {
        args.clear();
        auto open = v.find('(');
        if (open == std::string::npos) {
            name = trim(v);
            return true;
        }
        if (v.back() != ')') {
            fail(line, std::string(key) + ": missing ')' in '" + v + "'");
            return false;
        }
        name = trim(v.substr(0, open));
        const std::string inner = v.substr(open + 1, v.size() - open - 2);
        return parse_list(inner, line, key, args);
    }

    bool parse_growth(const std::string& v, int line, const char* key, GrowthTerm& out) {
        std::string name;
        std::vector<double> args;
        if (!parse_call(v, line, key, name, args))
            return false;
        try {
            if (name == "zero" && args.empty()) {
                out = GrowthTerm::zero();
                return true;
            }
            if (name == "affine" && args.size() == 2) {
                out = GrowthTerm::affine(args[0], args[1]);
                return true;
            }
            if (name == "affine_truncated" && args.size() == 2) {
                out = GrowthTerm::affine_truncated(args[0], args[1]);
                return true;
            }
        } catch (const ConfigError& e) {
            fail(line, std::string(key) + ": " + e.what());
            return false;
        }
        fail(line, std::string(key) + ": expected zero | affine(a, b) | affine_truncated(a, b), got '" +
                       v + "'");
        return false;
    }

    bool parse_profile(const std::string& v, int line, const char* key, int species,
                       ProfileSpec& out) {
        std::string name;
        std::vector<double> args;
        if (!parse_call(v, line, key, name, args))
            return false;
        try {
            if (name == "indicator" && args.size() == 3) {
                out = ProfileSpec::indicator(species, args[0], args[1], args[2]);
                return true;
            }
            if (name == "bump" && args.size() == 3) {
                out = ProfileSpec::bump(species, args[0], args[1], args[2]);
                return true;
            }
            if (name == "uniform" && args.size() == 1) {
                out = ProfileSpec::uniform(species, args[0]);
                return true;
            }
        } catch (const ConfigError& e) {
            fail(line, std::string(key) + ": " + e.what());
            return false;
        }
        fail(line, std::string(key) +
                       ": expected indicator(x0, x1, h) | bump(center, width, h) | uniform(h), got '" +
                       v + "'");
        return false;
    }
};

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    Parser p;
    ProfileSpec prof1 = ProfileSpec::uniform(1, 0.0);
    ProfileSpec prof2 = ProfileSpec::uniform(2, 0.0);

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = Parser::trim(raw);
        if (s.empty() || s[0] == '#')
            continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            p.fail(line, "expected 'section.key = value', got '" + s + "'");
            continue;
        }
        const std::string key = Parser::trim(s.substr(0, eq));
        const std::string value = Parser::trim(s.substr(eq + 1));

        if (key == "grid.L")
            p.parse_number(value, line, "grid.L", cfg.half_width);
        else if (key == "grid.N")
            p.parse_int(value, line, "grid.N", cfg.cells);
        else if (key == "time.T")
            p.parse_number(value, line, "time.T", cfg.t_end);
        else if (key == "time.cfl")
            p.parse_number(value, line, "time.cfl", cfg.cfl);
        else if (key == "time.dt_max")
            p.parse_number(value, line, "time.dt_max", cfg.dt_max);
        else if (key == "time.output_every")
            p.parse_int(value, line, "time.output_every", cfg.output_every);
        else if (key == "time.snapshot_times")
            p.parse_list(value, line, "time.snapshot_times", cfg.snapshot_times);
        else if (key == "physics.gamma")
            p.parse_number(value, line, "physics.gamma", cfg.gamma);
        else if (key == "physics.epsilon")
            p.parse_number(value, line, "physics.epsilon", cfg.epsilon);
        else if (key == "physics.scheme") {
            if (value == "explicit")
                cfg.scheme = Scheme::explicit_upwind;
            else if (value == "semi_implicit")
                cfg.scheme = Scheme::semi_implicit;
            else
                p.fail(line, "physics.scheme: expected explicit or semi_implicit, got '" + value + "'");
        } else if (key == "model.F1")
            p.parse_growth(value, line, "model.F1", cfg.f1);
        else if (key == "model.F2")
            p.parse_growth(value, line, "model.F2", cfg.f2);
        else if (key == "model.G1")
            p.parse_growth(value, line, "model.G1", cfg.g1);
        else if (key == "model.G2")
            p.parse_growth(value, line, "model.G2", cfg.g2);
        else if (key == "initial.n1")
            p.parse_profile(value, line, "initial.n1", 1, prof1);
        else if (key == "initial.n2")
            p.parse_profile(value, line, "initial.n2", 2, prof2);
        else if (key == "tolerances.vac_tol")
            p.parse_number(value, line, "tolerances.vac_tol", cfg.tol.vac_tol);
        else if (key == "tolerances.tol_pos")
            p.parse_number(value, line, "tolerances.tol_pos", cfg.tol.tol_pos);
        else if (key == "tolerances.seg_tol")
            p.parse_number(value, line, "tolerances.seg_tol", cfg.tol.seg_tol);
        else if (key == "tolerances.newton_tol")
            p.parse_number(value, line, "tolerances.newton_tol", cfg.tol.newton_tol);
        else if (key == "outputs.directory")
            cfg.directory = value;
        else if (key == "outputs.emit_plots")
            p.parse_bool(value, line, "outputs.emit_plots", cfg.emit_plots);
        else
            p.fail(line, "unknown key '" + key + "'");
    }

    cfg.profiles = {prof1, prof2};

    // validation
    if (cfg.half_width <= 0.0)
        p.errors.push_back("grid.L must be positive");
    if (cfg.cells < 16)
        p.errors.push_back("grid.N must be at least 16");
    if (cfg.t_end < 0.0)
        p.errors.push_back("time.T must be nonnegative");
    if (cfg.cfl <= 0.0 || cfg.cfl > 1.0)
        p.errors.push_back("time.cfl must lie in (0, 1]");
    if (cfg.dt_max <= 0.0)
        p.errors.push_back("time.dt_max must be positive");
    if (cfg.output_every < 1)
        p.errors.push_back("time.output_every must be at least 1");
    if (cfg.gamma <= 1.0)
        p.errors.push_back("physics.gamma must exceed 1");
    if (cfg.epsilon < 0.0)
        p.errors.push_back("physics.epsilon must be nonnegative");
    if (cfg.tol.vac_tol <= 0.0 || cfg.tol.tol_pos <= 0.0 || cfg.tol.newton_tol <= 0.0 ||
        cfg.tol.seg_tol <= 0.0)
        p.errors.push_back("tolerances must be positive");
    if (cfg.directory.empty())
        p.errors.push_back("outputs.directory must not be empty");
    for (double t : cfg.snapshot_times)
        if (t < 0.0 || t > cfg.t_end)
            p.errors.push_back("snapshot time " + std::to_string(t) + " outside [0, T]");
    std::vector<double> sorted = cfg.snapshot_times;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        p.errors.push_back("snapshot times must be distinct");

    if (!p.errors.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& e : p.errors)
            msg += "\n  " + e;
        throw ConfigError(msg);
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string resolved_config_text(const RunConfig& cfg) {
    std::ostringstream os;
    os << "grid.L = " << fmt(cfg.half_width) << "\n";
    os << "grid.N = " << cfg.cells << "\n";
    os << "time.T = " << fmt(cfg.t_end) << "\n";
    os << "time.cfl = " << fmt(cfg.cfl) << "\n";
    os << "time.dt_max = " << fmt(cfg.dt_max) << "\n";
    os << "time.output_every = " << cfg.output_every << "\n";
    os << "time.snapshot_times = ";
    for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i)
        os << (i ? ", " : "") << fmt(cfg.snapshot_times[i]);
    os << "\n";
    os << "physics.gamma = " << fmt(cfg.gamma) << "\n";
    os << "physics.epsilon = " << fmt(cfg.epsilon) << "\n";
    os << "physics.scheme = "
       << (cfg.scheme == Scheme::explicit_upwind ? "explicit" : "semi_implicit") << "\n";
    os << "model.F1 = " << cfg.f1.to_string() << "\n";
    os << "model.F2 = " << cfg.f2.to_string() << "\n";
    os << "model.G1 = " << cfg.g1.to_string() << "\n";
    os << "model.G2 = " << cfg.g2.to_string() << "\n";
    for (const auto& prof : cfg.profiles)
        os << "initial.n" << prof.species << " = " << prof.to_string() << "\n";
    os << "tolerances.vac_tol = " << fmt(cfg.tol.vac_tol) << "\n";
    os << "tolerances.tol_pos = " << fmt(cfg.tol.tol_pos) << "\n";
    os << "tolerances.seg_tol = " << fmt(cfg.tol.seg_tol) << "\n";
    os << "tolerances.newton_tol = " << fmt(cfg.tol.newton_tol) << "\n";
    os << "outputs.directory = " << cfg.directory << "\n";
    os << "outputs.emit_plots = " << (cfg.emit_plots ? "true" : "false") << "\n";
    return os.str();
}

} // namespace tsg
