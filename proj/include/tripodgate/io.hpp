#pragma once

#include <iosfwd>
#include <vector>

#include "tripodgate/config.hpp"
#include "tripodgate/propagator.hpp"

namespace tripodgate {

// Trajectory export: t_ns, then population and phase (principal value, rad)
// per selected basis state.
void write_trajectory_csv(std::ostream& os, const HilbertSpace& space, const Trajectory& traj,
                          const std::vector<HilbertSpace::BasisLabel>& selection);

// Run summary: final norm / norm loss, overlap and fidelity against the
// initial and (when provided) ideal states, step counts.
void write_summary_json(std::ostream& os, const HilbertSpace& space, const Trajectory& traj,
                        const StateVector& psi0, const StateVector* ideal);

} // namespace tripodgate
