#include "ctmax/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ctmax {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("key " + key + ": '" + text + "' is not a number");
    return v;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = {
        {"a", "2", "dispersion exponent, > 1"},
        {"gamma", "2", "damping exponent of the complex time t + i t^gamma"},
        {"rtol", "1e-6", "relative tolerance of propagator halving checks"},
        {"phase_step", "0.785398163397448", "largest phase advance per frequency step"},
        {"amplitude_cutoff", "1e-17", "relative amplitude below which nodes leave the resolution bound"},
        {"max_refinements", "6", "frequency grid halvings allowed per evaluation"},
        {"max_nodes", "16777216", "frequency node budget"},

        {"phase.as", "1.5,2,3,4", "dispersion exponents of the phase diagram"},
        {"phase.gammas", "0.5,1,1.5,2,3,4,1000000", "damping exponents of the phase diagram"},

        {"scan.vs", "0.2,0.1,0.05", "counterexample scales v"},
        {"scan.s_fractions", "0,0.25,0.5,0.75,1", "Sobolev indices as fractions of the critical exponent"},
        {"scan.s_above", "0.05", "one more index at critical + s_above (negative: none)"},
        {"scan.s_values", "", "explicit Sobolev indices; overrides the two keys above"},
        {"scan.norm_tolerance", "0.1", "relative tolerance of the norm slope 1 - 4s (absolute 0.05 at 0)"},
        {"scan.ratio_slope_tolerance", "0.1", "absolute tolerance of the ratio slope"},
        {"scan.bounded_factor", "2", "max/min spread allowed for a bounded trend"},

        {"ladder.t_min", "1e-4", "first ladder time, lowered to the finest optimal time if needed"},
        {"ladder.t_max", "0.9999", "last ladder time"},
        {"ladder.count", "512", "geometric ladder size"},

        {"instance.v0", "0.5", "largest admissible v"},
        {"instance.transition_nodes", "64", "frequency nodes per bump transition"},
        {"instance.x_step", "0.125", "spatial step as a fraction of v"},
        {"instance.x_left", "6", "spatial extent left of the origin"},
        {"instance.extinction", "12", "damping exponent at which transport is ignored"},

        {"check.F_bound", "1", "bound on the phase remainder over the window"},
        {"check.G_bound", "1", "bound on the damping exponent over the window"},
        {"check.tail_bound", "1e-3", "bound on the L2 mass fraction in the grid ends"},

        {"conv.mode", "smooth", "smooth or family"},
        {"conv.t_min", "1e-6", "smooth mode: smallest time"},
        {"conv.t_max", "0.1", "smooth mode: largest time"},
        {"conv.t_count", "11", "smooth mode: geometric time count"},
        {"conv.x_count", "201", "smooth mode: nodes on [-1, 1]"},
        {"conv.xi_max", "8", "smooth mode: frequency half-width of the Gaussian profile"},
        {"conv.xi_nodes", "1025", "smooth mode: frequency nodes"},
        {"conv.target", "1e-3", "smooth mode: relative deviation required at conv.target_t"},
        {"conv.target_t", "1e-4", "smooth mode: time at which conv.target applies"},
        {"conv.vs", "0.2,0.1,0.05", "family mode: scales v"},
        {"conv.s_values", "0.1,0.3", "family mode: Sobolev indices"},
        {"conv.t_factor", "2", "family mode: t_max(v) = factor * largest window optimal time"},

        {"probe.alpha", "0.55", "Sobolev weight exponent of the kernel probe"},
        {"probe.mu_radius", "1", "radius of the frequency cutoff bump"},
        {"probe.times", "", "time samples (empty: geometric 1e-6 .. 0.9, 8 points)"},
        {"probe.Ns", "", "cutoff scales (empty: 4^0 .. 4^8)"},
        {"probe.x_min", "1e-4", "smallest |x| of the log grid"},
        {"probe.x_max", "32", "largest |x| of the log grid"},
        {"probe.x_count", "48", "log grid size"},
        {"probe.k_cap", "2", "cap on the displayed large-x exponent"},
        {"probe.rtol", "1e-6", "probe halving tolerance"},

        {"dom.g", "t^3", "inner damping path: 0, t^p or c*t^p"},
        {"dom.h", "t^2", "outer damping path"},
        {"dom.t_min", "0.1", "first ladder time"},
        {"dom.t_max", "0.9", "last ladder time"},
        {"dom.t_count", "16", "geometric ladder size"},
        {"dom.x_half", "20", "spatial half-width"},
        {"dom.x_count", "401", "spatial nodes"},
        {"dom.inner_half", "10", "half-width of the region where the convolution identity is compared"},
        {"dom.xi_max", "8", "frequency half-width of the Gaussian profile"},
        {"dom.xi_nodes", "1025", "frequency nodes"},
        {"dom.dilate_count", "128", "dilates in the kernel supremum"},
        {"dom.dilate_min", "1e-3", "smallest dilate (raised to 2 dx)"},
        {"dom.dilate_max", "0.999", "largest dilate"},
        {"dom.kernel_extent", "64", "kernel lattice cut in units of the dilate"},
        {"dom.eps_fraction", "1e-3", "ratio regularization as a fraction of max R"},
        {"dom.conv_rtol", "1e-6", "relative tolerance of the convolution identity"},
        {"dom.ratio_bound", "10", "bound on the domination ratio"},
        {"dom.stability", "0.2", "allowed relative ratio change under one grid refinement"},
        {"dom.refine", "true", "repeat on a grid with half the spacing"},
    };
    return keys;
}

RunConfig::RunConfig() {
    for (const auto& k : config_keys()) values_[k.name] = k.default_value;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second = value;
}

void RunConfig::assign(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::load_text(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        try {
            assign(line);
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    load_text(text.str(), path);
}

const std::string& RunConfig::text(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
    return it->second;
}

double RunConfig::number(const std::string& key) const { return parse_number(key, text(key)); }

Index RunConfig::integer(const std::string& key) const {
    const double v = number(key);
    if (v != std::floor(v)) throw ConfigError("key " + key + ": '" + text(key) + "' is not an integer");
    return static_cast<Index>(v);
}

bool RunConfig::flag(const std::string& key) const {
    const std::string t = trim(text(key));
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    throw ConfigError("key " + key + ": '" + t + "' is not true/false");
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
    std::vector<double> out;
    const std::string& t = text(key);
    if (trim(t).empty()) return out;
    std::istringstream in(t);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_number(key, item));
    return out;
}

}  // namespace ctmax
