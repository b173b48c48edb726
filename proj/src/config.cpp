#include "tripodgate/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tripodgate/propagator.hpp"

namespace tripodgate {

PropagateOptions RunConfig::propagate_options() const
{
    PropagateOptions o;
    o.tol = tolerance;
    o.cadence = ns_to_us(cadence_ns);
    return o;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "n_max",          "omega_max_mhz", "omega_sti_mhz",  "g1_mhz",
    "g2_mhz",         "kappa_mhz",     "gamma_mhz",      "t_p_ns",
    "delay_ns",       "substep_gap_ns", "step_gap_ns",   "delta",
    "theta",          "phi2",          "chi",            "phi1",
    "xi",             "xi_prime",      "phase_corrected", "phi0_2",
    "phi_1_1",        "tolerance",     "output_cadence_ns", "trajectory_states"};

double get_number(const nlohmann::json& j, const char* key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    if (!j[key].is_number())
        throw ConfigError(std::string("config key '") + key + "' must be a number");
    return j[key].get<double>();
}

} // namespace

RunConfig parse_config(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ConfigError("config root must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kKnownKeys.count(key))
            throw ConfigError("unknown config key '" + key + "'");

    RunConfig rc;
    GateConfig& g = rc.gate;

    if (j.contains("n_max")) {
        if (!j["n_max"].is_number_integer())
            throw ConfigError("n_max must be an integer");
        g.n_max = j["n_max"].get<int>();
    }
    g.omega_max = mhz_to_rad_us(get_number(j, "omega_max_mhz", rad_us_to_mhz(g.omega_max)));
    g.omega_sti = mhz_to_rad_us(get_number(j, "omega_sti_mhz", rad_us_to_mhz(g.omega_sti)));
    g.g1 = mhz_to_rad_us(get_number(j, "g1_mhz", rad_us_to_mhz(g.g1)));
    g.g2 = mhz_to_rad_us(get_number(j, "g2_mhz", rad_us_to_mhz(g.g2)));
    g.kappa = mhz_to_rad_us(get_number(j, "kappa_mhz", rad_us_to_mhz(g.kappa)));
    g.gamma = mhz_to_rad_us(get_number(j, "gamma_mhz", rad_us_to_mhz(g.gamma)));
    g.t_p = ns_to_us(get_number(j, "t_p_ns", us_to_ns(g.t_p)));
    g.delay = ns_to_us(get_number(j, "delay_ns", us_to_ns(g.delay)));
    g.sub_gap = ns_to_us(get_number(j, "substep_gap_ns", us_to_ns(g.sub_gap)));
    g.step_gap = ns_to_us(get_number(j, "step_gap_ns", us_to_ns(g.step_gap)));
    g.delta = get_number(j, "delta", g.delta);
    g.theta = get_number(j, "theta", g.theta);
    g.phi2 = get_number(j, "phi2", g.phi2);
    g.chi = get_number(j, "chi", g.chi);
    g.phi1 = get_number(j, "phi1", g.phi1);
    g.xi = get_number(j, "xi", g.xi);
    g.xi_prime = get_number(j, "xi_prime", g.xi_prime);
    g.phi0_2 = get_number(j, "phi0_2", g.phi0_2);
    g.phi_1_1 = get_number(j, "phi_1_1", g.phi_1_1);
    if (j.contains("phase_corrected")) {
        if (!j["phase_corrected"].is_boolean())
            throw ConfigError("phase_corrected must be a boolean");
        g.phase_corrected = j["phase_corrected"].get<bool>();
    }
    rc.tolerance = get_number(j, "tolerance", rc.tolerance);
    rc.cadence_ns = get_number(j, "output_cadence_ns", rc.cadence_ns);

    if (j.contains("trajectory_states")) {
        if (!j["trajectory_states"].is_array())
            throw ConfigError("trajectory_states must be an array of state labels");
        for (const auto& item : j["trajectory_states"]) {
            if (!item.is_string())
                throw ConfigError("trajectory_states entries must be strings like \"a,1,0\"");
            rc.trajectory_states.push_back(parse_state_label(item.get<std::string>()));
        }
    } else {
        rc.trajectory_states = {{AtomLevel::g0, AtomLevel::g0, 0}, {AtomLevel::g0, AtomLevel::g1, 0},
                                {AtomLevel::g1, AtomLevel::g0, 0}, {AtomLevel::g1, AtomLevel::g1, 0},
                                {AtomLevel::anc, AtomLevel::g0, 0}, {AtomLevel::anc, AtomLevel::g1, 0}};
    }

    if (rc.tolerance <= 0.0 || rc.tolerance > 1e-4)
        throw ConfigError("tolerance must be in (0, 1e-4]");
    if (rc.cadence_ns <= 0.0)
        throw ConfigError("output_cadence_ns must be positive");
    try {
        g.validate();
        build_gate_schedule(g); // fail fast on schedule geometry
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return rc;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(j);
}

HilbertSpace::BasisLabel parse_state_label(const std::string& s)
{
    std::stringstream ss(s);
    std::string a1, a2, n;
    if (!std::getline(ss, a1, ',') || !std::getline(ss, a2, ',') || !std::getline(ss, n))
        throw ConfigError("state label must be '<a1>,<a2>,<n>', got '" + s + "'");
    try {
        return {parse_level(a1), parse_level(a2), std::stoi(n)};
    } catch (const std::exception&) {
        throw ConfigError("bad state label '" + s + "'");
    }
}

std::string state_label_string(const HilbertSpace::BasisLabel& l)
{
    return std::string(level_label(l.a1)) + "," + std::string(level_label(l.a2)) + "," +
           std::to_string(l.n);
}

namespace {

QubitVector control_char(char c, const GateConfig& gate)
{
    const double rt = 1.0 / std::sqrt(2.0);
    const double cc = std::cos(gate.chi), sc = std::sin(gate.chi);
    const cplx ep = std::polar(1.0, gate.phi1);
    switch (c) {
    case '0': return {1.0, 0.0};
    case '1': return {0.0, 1.0};
    case '+': return {rt, rt};
    case '-': return {rt, -rt};
    case 'c': return {cc, sc * ep};
    case 'n': return {-sc, cc * ep};
    default: throw ConfigError(std::string("bad control-qubit spec '") + c + "'");
    }
}

QubitVector target_char(char c)
{
    const double rt = 1.0 / std::sqrt(2.0);
    switch (c) {
    case '0': return {1.0, 0.0};
    case '1': return {0.0, 1.0};
    case '+': return {rt, rt};
    case '-': return {rt, -rt};
    default: throw ConfigError(std::string("bad target-qubit spec '") + c + "'");
    }
}

} // namespace

StateVector parse_initial_state(const std::string& spec, const HilbertSpace& space,
                                const GateConfig& gate)
{
    if (spec.rfind("amps:", 0) == 0) {
        std::stringstream ss(spec.substr(5));
        std::array<cplx, 4> a{};
        std::string tok;
        double parts[8];
        for (int i = 0; i < 8; ++i) {
            if (!std::getline(ss, tok, ','))
                throw ConfigError("amps: expects 8 comma-separated numbers (re,im x4)");
            try {
                parts[i] = std::stod(tok);
            } catch (const std::exception&) {
                throw ConfigError("amps: bad number '" + tok + "'");
            }
        }
        if (std::getline(ss, tok, ','))
            throw ConfigError("amps: expects exactly 8 numbers");
        for (int i = 0; i < 4; ++i)
            a[i] = cplx(parts[2 * i], parts[2 * i + 1]);
        double norm = 0.0;
        for (const cplx& v : a)
            norm += std::norm(v);
        if (std::abs(norm - 1.0) > 1e-9)
            throw ConfigError("amps: state must be normalized");
        StateVector psi(space);
        psi[space.index(AtomLevel::g0, AtomLevel::g0, 0)] = a[0];
        psi[space.index(AtomLevel::g0, AtomLevel::g1, 0)] = a[1];
        psi[space.index(AtomLevel::g1, AtomLevel::g0, 0)] = a[2];
        psi[space.index(AtomLevel::g1, AtomLevel::g1, 0)] = a[3];
        return psi;
    }
    if (spec.size() != 2)
        throw ConfigError("initial state must be 2 characters (e.g. \"+0\") or \"amps:...\"");
    return embed_product(space, control_char(spec[0], gate), target_char(spec[1]), 0);
}

} // namespace tripodgate
