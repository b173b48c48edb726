#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tripodgate/hilbert.hpp"
#include "tripodgate/pulses.hpp"

namespace tripodgate {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Run configuration with boundary units: laser/cavity strengths as
// nu = Omega/2pi in MHz, times in ns, angles in rad. Conversion to internal
// angular units happens once, here. Unknown keys are rejected.
struct RunConfig {
    GateConfig gate;
    double tolerance = 1e-10;
    double cadence_ns = 1.0;
    std::vector<HilbertSpace::BasisLabel> trajectory_states; // CSV column selection

    PropagateOptions propagate_options() const;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Initial-state specs: two characters <control><target> with control in
// {0,1,+,-,c,n} (c/n = the configured phi_c/phi_nc) and target in
// {0,1,+,-}; or "amps:re,im,re,im,re,im,re,im" giving the four amplitudes
// over {|00>,|01>,|10>,|11>} (x |0> photons).
StateVector parse_initial_state(const std::string& spec, const HilbertSpace& space,
                                const GateConfig& gate);

HilbertSpace::BasisLabel parse_state_label(const std::string& s);
std::string state_label_string(const HilbertSpace::BasisLabel& l);

} // namespace tripodgate
