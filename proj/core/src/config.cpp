#include "sulfsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sulfsim/table_io.hpp"

namespace sulfsim {
namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError(key, "not a number: '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError(key, "not an integer: '" + value + "'");
    }
    return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(value);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key, "empty list entry");
        out.push_back(parse_double(key, item));
    }
    return out;
}

std::string join_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

struct KeyHandler {
    const char* key;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

// The schema, in canonical serialization order. Model symbols live at the
// top level; artifact sections use dotted names.
const std::vector<KeyHandler>& schema() {
    auto dbl = [](const char* key, double ModelParameters::* field) {
        return KeyHandler{
            key,
            [key, field](RunConfig& c, const std::string& v) {
                c.model.*field = parse_double(key, v);
            },
            [field](const RunConfig& c) { return format_double(c.model.*field); }};
    };
    static const std::vector<KeyHandler> defs = {
        dbl("d1", &ModelParameters::d1),
        dbl("d2", &ModelParameters::d2),
        dbl("d3", &ModelParameters::d3),
        dbl("beta2", &ModelParameters::beta2),
        dbl("beta3", &ModelParameters::beta3),
        dbl("beta4", &ModelParameters::beta4),
        dbl("B", &ModelParameters::B),
        dbl("H", &ModelParameters::H),
        dbl("phi2", &ModelParameters::phi2),
        dbl("phi3", &ModelParameters::phi3),
        dbl("phi4", &ModelParameters::phi4),
        dbl("k2", &ModelParameters::k2),
        dbl("k3", &ModelParameters::k3),
        dbl("k4", &ModelParameters::k4),
        dbl("beta_bar", &ModelParameters::beta_bar),
        dbl("p", &ModelParameters::p_order),
        dbl("q", &ModelParameters::q_order),
        dbl("k_a", &ModelParameters::k_a),
        dbl("u1_dirichlet", &ModelParameters::u1_dirichlet),
        dbl("gamma_sw_coeff", &ModelParameters::gamma_sw_coeff),
        {"L",
         [](RunConfig& c, const std::string& v) { c.geom.L = parse_double("L", v); },
         [](const RunConfig& c) { return format_double(c.geom.L); }},
        {"ell",
         [](RunConfig& c, const std::string& v) { c.geom.ell = parse_double("ell", v); },
         [](const RunConfig& c) { return format_double(c.geom.ell); }},
        {"grid.nx",
         [](RunConfig& c, const std::string& v) { c.grid.nx = parse_int("grid.nx", v); },
         [](const RunConfig& c) { return std::to_string(c.grid.nx); }},
        {"grid.ny",
         [](RunConfig& c, const std::string& v) { c.grid.ny = parse_int("grid.ny", v); },
         [](const RunConfig& c) { return std::to_string(c.grid.ny); }},
        {"time.t_end",
         [](RunConfig& c, const std::string& v) {
             c.time.t_end = parse_double("time.t_end", v);
         },
         [](const RunConfig& c) { return format_double(c.time.t_end); }},
        {"time.dt_init",
         [](RunConfig& c, const std::string& v) {
             c.time.dt_init = parse_double("time.dt_init", v);
         },
         [](const RunConfig& c) { return format_double(c.time.dt_init); }},
        {"time.snapshots",
         [](RunConfig& c, const std::string& v) {
             c.time.snapshot_times = parse_list("time.snapshots", v);
             c.meta.snapshots_set = true;
         },
         [](const RunConfig& c) { return join_list(c.time.snapshot_times); }},
        {"time.rel_tol",
         [](RunConfig& c, const std::string& v) {
             c.time.rel_tol = parse_double("time.rel_tol", v);
         },
         [](const RunConfig& c) { return format_double(c.time.rel_tol); }},
        {"time.abs_tol",
         [](RunConfig& c, const std::string& v) {
             c.time.abs_tol = parse_double("time.abs_tol", v);
         },
         [](const RunConfig& c) { return format_double(c.time.abs_tol); }},
        {"time.newton_tol",
         [](RunConfig& c, const std::string& v) {
             c.time.newton_tol = parse_double("time.newton_tol", v);
         },
         [](const RunConfig& c) { return format_double(c.time.newton_tol); }},
        {"time.newton_max_iter",
         [](RunConfig& c, const std::string& v) {
             c.time.newton_max_iter = parse_int("time.newton_max_iter", v);
         },
         [](const RunConfig& c) { return std::to_string(c.time.newton_max_iter); }},
        {"initial.u1",
         [](RunConfig& c, const std::string& v) {
             c.initial.u1 = parse_double("initial.u1", v);
         },
         [](const RunConfig& c) { return format_double(c.initial.u1); }},
        {"initial.u2",
         [](RunConfig& c, const std::string& v) {
             c.initial.u2 = parse_double("initial.u2", v);
         },
         [](const RunConfig& c) { return format_double(c.initial.u2); }},
        {"initial.u3",
         [](RunConfig& c, const std::string& v) {
             c.initial.u3 = parse_double("initial.u3", v);
         },
         [](const RunConfig& c) { return format_double(c.initial.u3); }},
        {"initial.u4",
         [](RunConfig& c, const std::string& v) {
             c.initial.u4 = parse_double("initial.u4", v);
         },
         [](const RunConfig& c) { return format_double(c.initial.u4); }},
        {"output.epsilon",
         [](RunConfig& c, const std::string& v) {
             c.output.epsilon = parse_double("output.epsilon", v);
         },
         [](const RunConfig& c) { return format_double(c.output.epsilon); }},
        {"output.kink_hi",
         [](RunConfig& c, const std::string& v) {
             c.output.kink_hi = parse_double("output.kink_hi", v);
         },
         [](const RunConfig& c) { return format_double(c.output.kink_hi); }},
        {"output.kink_lo",
         [](RunConfig& c, const std::string& v) {
             c.output.kink_lo = parse_double("output.kink_lo", v);
         },
         [](const RunConfig& c) { return format_double(c.output.kink_lo); }},
        {"output.cells",
         [](RunConfig& c, const std::string& v) {
             if (v == "none") {
                 c.output.no_cell_dumps = true;
                 c.output.cell_dump_x.clear();
             } else {
                 c.output.no_cell_dumps = false;
                 c.output.cell_dump_x = parse_list("output.cells", v);
             }
         },
         [](const RunConfig& c) {
             return c.output.no_cell_dumps ? std::string("none")
                                           : join_list(c.output.cell_dump_x);
         }},
    };
    return defs;
}

void require(bool ok, const char* key, const char* constraint) {
    if (!ok) throw ConfigError(key, constraint);
}

} // namespace

void finalize_config(RunConfig& cfg) {
    if (cfg.model.gamma_sw_coeff < 0.0) cfg.model.gamma_sw_coeff = cfg.model.phi3;
    if (cfg.output.epsilon < 0.0) cfg.output.epsilon = 0.01 * cfg.model.beta_bar;
    if (cfg.output.cell_dump_x.empty() && !cfg.output.no_cell_dumps) {
        const double L = cfg.geom.L;
        cfg.output.cell_dump_x = {0.0, 0.25 * L, 0.5 * L, 0.75 * L, L};
    }
    if (!cfg.meta.snapshots_set) {
        std::erase_if(cfg.time.snapshot_times, [&](double t) {
            return t < 0.0 || t > cfg.time.t_end;
        });
    }
}

void validate_config(const RunConfig& cfg) {
    const auto& m = cfg.model;
    // Zero diffusivity, transfer rate or rate constants are admitted as
    // degenerate limits used by decoupling checks.
    require(m.d1 >= 0.0, "d1", "must be >= 0");
    require(m.d2 >= 0.0, "d2", "must be >= 0");
    require(m.d3 >= 0.0, "d3", "must be >= 0");
    require(m.beta2 > 0.0, "beta2", "must be > 0");
    require(m.beta3 > 0.0, "beta3", "must be > 0");
    require(m.beta4 > 0.0, "beta4", "must be > 0");
    require(m.B >= 0.0, "B", "must be >= 0");
    require(m.H > 0.0, "H", "must be > 0");
    require(m.phi2 >= 0.0, "phi2", "must be >= 0");
    require(m.phi3 >= 0.0, "phi3", "must be >= 0");
    require(m.phi4 >= 0.0, "phi4", "must be >= 0");
    require(m.k2 >= 0.0, "k2", "must be >= 0");
    require(m.k3 >= 0.0, "k3", "must be >= 0");
    require(m.k4 >= 0.0, "k4", "must be >= 0");
    require(m.beta_bar > 0.0, "beta_bar", "must be > 0");
    require(m.p_order >= 1.0, "p", "must be >= 1");
    require(m.q_order >= 1.0, "q", "must be >= 1");
    require(m.k_a > 0.0, "k_a", "must be > 0");
    require(m.u1_dirichlet >= 0.0, "u1_dirichlet", "must be >= 0");
    require(m.gamma_sw_coeff >= 0.0, "gamma_sw_coeff", "must be >= 0");

    require(cfg.geom.L > 0.0, "L", "must be > 0");
    require(cfg.geom.ell > 0.0, "ell", "must be > 0");
    require(cfg.grid.nx >= 3, "grid.nx", "must be >= 3");
    require(cfg.grid.ny >= 3, "grid.ny", "must be >= 3");

    const auto& t = cfg.time;
    require(t.t_end >= 0.0, "time.t_end", "must be >= 0");
    require(t.dt_init > 0.0, "time.dt_init", "must be > 0");
    if (t.t_end > 0.0) {
        require(t.dt_init <= t.t_end, "time.dt_init", "must be <= time.t_end");
    }
    require(t.rel_tol > 0.0, "time.rel_tol", "must be > 0");
    require(t.abs_tol > 0.0, "time.abs_tol", "must be > 0");
    require(t.newton_tol > 0.0, "time.newton_tol", "must be > 0");
    require(t.newton_max_iter >= 1, "time.newton_max_iter", "must be >= 1");
    for (size_t i = 0; i < t.snapshot_times.size(); ++i) {
        require(t.snapshot_times[i] >= 0.0 && t.snapshot_times[i] <= t.t_end,
                "time.snapshots", "entries must lie in [0, t_end]");
        if (i > 0) {
            require(t.snapshot_times[i] > t.snapshot_times[i - 1], "time.snapshots",
                    "entries must be strictly increasing");
        }
    }

    require(cfg.initial.u1 >= 0.0, "initial.u1", "must be >= 0");
    require(cfg.initial.u2 >= 0.0, "initial.u2", "must be >= 0");
    require(cfg.initial.u3 >= 0.0, "initial.u3", "must be >= 0");
    require(cfg.initial.u4 >= 0.0, "initial.u4", "must be >= 0");
    require(cfg.initial.u4 <= m.beta_bar, "initial.u4", "must be <= beta_bar");

    require(cfg.output.epsilon > 0.0 && cfg.output.epsilon < m.beta_bar,
            "output.epsilon", "must lie in (0, beta_bar)");
    require(cfg.output.kink_lo > 0.0, "output.kink_lo", "must be > 0");
    require(cfg.output.kink_hi < 1.0, "output.kink_hi", "must be < 1");
    require(cfg.output.kink_lo < cfg.output.kink_hi, "output.kink_lo",
            "must be < output.kink_hi");
    for (double x : cfg.output.cell_dump_x) {
        require(x >= 0.0 && x <= cfg.geom.L, "output.cells",
                "positions must lie in [0, L]");
    }
}

RunConfig default_config() {
    RunConfig cfg;
    finalize_config(cfg);
    validate_config(cfg);
    return cfg;
}

RunConfig load_config_text(const std::string& text) {
    RunConfig cfg;
    std::vector<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto pos = stripped.find('=');
        if (pos == std::string::npos) {
            throw ConfigError("", "line " + std::to_string(lineno) +
                                      ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, pos));
        const std::string value = trim(stripped.substr(pos + 1));
        if (key.empty()) {
            throw ConfigError("", "line " + std::to_string(lineno) + ": missing key");
        }
        const auto& defs = schema();
        auto it = std::find_if(defs.begin(), defs.end(),
                               [&](const KeyHandler& h) { return key == h.key; });
        if (it == defs.end()) throw ConfigError(key, "unknown key");
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            throw ConfigError(key, "duplicate key");
        }
        seen.push_back(key);
        it->set(cfg, value);
    }
    finalize_config(cfg);
    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config_text(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& h : schema()) {
        out += h.key;
        out += " = ";
        out += h.get(cfg);
        out += '\n';
    }
    return out;
}

bool operator==(const ModelParameters& a, const ModelParameters& b) {
    return a.d1 == b.d1 && a.d2 == b.d2 && a.d3 == b.d3 && a.beta2 == b.beta2 &&
           a.beta3 == b.beta3 && a.beta4 == b.beta4 && a.B == b.B && a.H == b.H &&
           a.phi2 == b.phi2 && a.phi3 == b.phi3 && a.phi4 == b.phi4 &&
           a.k2 == b.k2 && a.k3 == b.k3 && a.k4 == b.k4 &&
           a.beta_bar == b.beta_bar && a.p_order == b.p_order &&
           a.q_order == b.q_order && a.k_a == b.k_a &&
           a.u1_dirichlet == b.u1_dirichlet && a.gamma_sw_coeff == b.gamma_sw_coeff;
}

// Equality covers the file-representable fields; programmatic profiles are
// deliberately excluded.
bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.model == b.model && a.geom.L == b.geom.L && a.geom.ell == b.geom.ell &&
           a.grid.nx == b.grid.nx && a.grid.ny == b.grid.ny &&
           a.time.t_end == b.time.t_end && a.time.dt_init == b.time.dt_init &&
           a.time.snapshot_times == b.time.snapshot_times &&
           a.time.rel_tol == b.time.rel_tol && a.time.abs_tol == b.time.abs_tol &&
           a.time.newton_tol == b.time.newton_tol &&
           a.time.newton_max_iter == b.time.newton_max_iter &&
           a.initial.u1 == b.initial.u1 && a.initial.u2 == b.initial.u2 &&
           a.initial.u3 == b.initial.u3 && a.initial.u4 == b.initial.u4 &&
           a.output.epsilon == b.output.epsilon &&
           a.output.kink_hi == b.output.kink_hi &&
           a.output.kink_lo == b.output.kink_lo &&
           a.output.cell_dump_x == b.output.cell_dump_x &&
           a.output.no_cell_dumps == b.output.no_cell_dumps;
}

} // namespace sulfsim
