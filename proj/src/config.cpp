#include "wgmlab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wgmlab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ParseError("config parse error: key '" + key +
                         "': not a number: '" + v + "'");
    }
}

std::vector<double> parse_number_list(const std::string& v,
                                      const std::string& key) {
    std::vector<double> out;
    std::istringstream is(v);
    std::string tok;
    while (is >> tok) out.push_back(parse_number(tok, key));
    return out;
}

// One flat map "section.key" -> value string; duplicate keys rejected.
std::map<std::string, std::string> tokenize(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError("config parse error: line " +
                                 std::to_string(lineno) +
                                 ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("config parse error: line " +
                             std::to_string(lineno) + ": expected key = value");
        }
        const std::string key =
            (section.empty() ? "" : section + ".") + trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (kv.count(key)) {
            throw ParseError("config parse error: duplicate key '" + key + "'");
        }
        kv[key] = val;
    }
    return kv;
}

class Reader {
public:
    explicit Reader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string str(const std::string& key, const std::string& fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        used_.insert(key);
        return it->second;
    }
    double num(const std::string& key, double fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        used_.insert(key);
        return parse_number(it->second, key);
    }
    double num_required(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            throw ParseError("config parse error: missing required key '" +
                             key + "'");
        }
        used_.insert(key);
        return parse_number(it->second, key);
    }
    std::vector<double> list(const std::string& key,
                             const std::vector<double>& fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        used_.insert(key);
        return parse_number_list(it->second, key);
    }
    void reject_unknown() const {
        for (const auto& [k, v] : kv_) {
            if (!used_.count(k)) {
                throw ParseError("config parse error: unknown key '" + k + "'");
            }
        }
    }

private:
    std::map<std::string, std::string> kv_;
    std::set<std::string> used_;
};

AngularRate rate_over_2pi(double hz) { return AngularRate::from_over_2pi(hz); }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += fmt(v[i]);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    Reader r(tokenize(text));
    ExperimentConfig cfg;

    cfg.schema_version = static_cast<int>(r.num_required("schema_version"));

    cfg.ion.label = r.str("ion.label", "unnamed");
    cfg.ion.transition_wavelength = r.num_required("ion.transition_wavelength");
    cfg.ion.dipole_moment = r.num_required("ion.dipole_moment");
    cfg.ion.t1 = r.num_required("ion.T1");
    cfg.ion.t2 = r.num_required("ion.T2");
    cfg.ion.hole_lifetimes = r.list("ion.hole_lifetimes", {});
    cfg.ion.hole_weights = r.list("ion.hole_weights", {});

    cfg.resonator.radius = r.num_required("resonator.radius");
    cfg.resonator.refractive_index = r.num_required("resonator.refractive_index");
    cfg.resonator.quality_factor = r.num_required("resonator.quality_factor");
    const std::string shape = r.str("resonator.shape", "sphere");
    if (shape != "sphere") {
        throw ParseError("config parse error: resonator.shape: only 'sphere' "
                         "is supported");
    }
    cfg.resonator.coupling_efficiency =
        r.num("resonator.coupling_efficiency", 0.0);

    EchoSettings& e = cfg.echo;
    e.inhomogeneous_width = rate_over_2pi(
        r.num("echo.inhomogeneous_width_over_2pi", e.inhomogeneous_width.over_2pi()));
    e.distribution = r.str("echo.distribution", e.distribution);
    e.n_classes = static_cast<int>(r.num("echo.n_classes", e.n_classes));
    e.lo_offset = rate_over_2pi(
        r.num("echo.lo_offset_over_2pi", e.lo_offset.over_2pi()));
    e.pulse_area_scale = r.num("echo.pulse_area_scale", e.pulse_area_scale);

    BistabilitySettings& b = cfg.bistability;
    b.g = rate_over_2pi(r.num("bistability.g_over_2pi", b.g.over_2pi()));
    b.n_atoms = r.num("bistability.n_atoms", b.n_atoms);
    b.kappa = rate_over_2pi(r.num("bistability.kappa_over_2pi", b.kappa.over_2pi()));
    b.gamma_h =
        rate_over_2pi(r.num("bistability.gamma_h_over_2pi", b.gamma_h.over_2pi()));
    b.gamma =
        rate_over_2pi(r.num("bistability.gamma_over_2pi", b.gamma.over_2pi()));
    b.coupling = r.num("bistability.coupling", b.coupling);
    b.external_loss = r.num("bistability.external_loss", b.external_loss);
    b.atom_offset_in_kappa =
        r.num("bistability.atom_offset_in_kappa", b.atom_offset_in_kappa);
    b.drive_per_watt = r.num("bistability.drive_per_watt", b.drive_per_watt);
    b.powers_watt = r.list("bistability.powers_watt", b.powers_watt);
    b.sweep_halfspan = rate_over_2pi(
        r.num("bistability.sweep_halfspan_over_2pi", b.sweep_halfspan.over_2pi()));
    b.sweep_steps = static_cast<int>(r.num("bistability.sweep_steps", b.sweep_steps));

    r.reject_unknown();
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("config parse error: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream o;
    o << "schema_version = " << cfg.schema_version << "\n\n";
    o << "[ion]\n";
    o << "label = " << cfg.ion.label << "\n";
    o << "transition_wavelength = " << fmt(cfg.ion.transition_wavelength) << "\n";
    o << "dipole_moment = " << fmt(cfg.ion.dipole_moment) << "\n";
    o << "T1 = " << fmt(cfg.ion.t1) << "\n";
    o << "T2 = " << fmt(cfg.ion.t2) << "\n";
    if (!cfg.ion.hole_lifetimes.empty()) {
        o << "hole_lifetimes = " << fmt_list(cfg.ion.hole_lifetimes) << "\n";
    }
    if (!cfg.ion.hole_weights.empty()) {
        o << "hole_weights = " << fmt_list(cfg.ion.hole_weights) << "\n";
    }
    o << "\n[resonator]\n";
    o << "radius = " << fmt(cfg.resonator.radius) << "\n";
    o << "refractive_index = " << fmt(cfg.resonator.refractive_index) << "\n";
    o << "quality_factor = " << fmt(cfg.resonator.quality_factor) << "\n";
    o << "shape = sphere\n";
    o << "coupling_efficiency = " << fmt(cfg.resonator.coupling_efficiency) << "\n";
    o << "\n[echo]\n";
    o << "inhomogeneous_width_over_2pi = "
      << fmt(cfg.echo.inhomogeneous_width.over_2pi()) << "\n";
    o << "distribution = " << cfg.echo.distribution << "\n";
    o << "n_classes = " << cfg.echo.n_classes << "\n";
    o << "lo_offset_over_2pi = " << fmt(cfg.echo.lo_offset.over_2pi()) << "\n";
    o << "pulse_area_scale = " << fmt(cfg.echo.pulse_area_scale) << "\n";
    o << "\n[bistability]\n";
    o << "g_over_2pi = " << fmt(cfg.bistability.g.over_2pi()) << "\n";
    o << "n_atoms = " << fmt(cfg.bistability.n_atoms) << "\n";
    o << "kappa_over_2pi = " << fmt(cfg.bistability.kappa.over_2pi()) << "\n";
    o << "gamma_h_over_2pi = " << fmt(cfg.bistability.gamma_h.over_2pi()) << "\n";
    o << "gamma_over_2pi = " << fmt(cfg.bistability.gamma.over_2pi()) << "\n";
    o << "coupling = " << fmt(cfg.bistability.coupling) << "\n";
    o << "external_loss = " << fmt(cfg.bistability.external_loss) << "\n";
    o << "atom_offset_in_kappa = " << fmt(cfg.bistability.atom_offset_in_kappa)
      << "\n";
    o << "drive_per_watt = " << fmt(cfg.bistability.drive_per_watt) << "\n";
    o << "powers_watt = " << fmt_list(cfg.bistability.powers_watt) << "\n";
    o << "sweep_halfspan_over_2pi = "
      << fmt(cfg.bistability.sweep_halfspan.over_2pi()) << "\n";
    o << "sweep_steps = " << cfg.bistability.sweep_steps << "\n";
    return o.str();
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write config '" + path + "'");
    f << serialize_config(cfg);
}

ExperimentConfig default_pr_config() {
    ExperimentConfig cfg;
    cfg.ion.label = "Pr3+:Y2SiO5";
    cfg.ion.transition_wavelength = 605.977e-9;
    // Dipole moment chosen so the dipole/mode-volume route reproduces the
    // coupling implied by V = 5.40e-13 m^3 at this transition (n_r = 1.8).
    cfg.ion.dipole_moment = 1.5911145036748545e-32;
    cfg.ion.t1 = 187e-6;
    cfg.ion.t2 = 68e-6;
    cfg.ion.hole_lifetimes = {10.0, 33.9};
    cfg.ion.hole_weights = {0.8, 0.2};
    cfg.resonator.radius = 1.95e-3;
    cfg.resonator.refractive_index = 1.8;  // not a measured value; see configs/
    cfg.resonator.quality_factor = 1.8e6;
    cfg.resonator.coupling_efficiency = 0.206;
    return cfg;
}

}  // namespace wgmlab
