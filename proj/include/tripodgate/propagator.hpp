#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "tripodgate/hamiltonian.hpp"
#include "tripodgate/hilbert.hpp"

namespace tripodgate {

class PropagationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PropagateOptions {
    double tol = 1e-10;        // relative local error per step
    double cadence = 1e-3;     // snapshot spacing (us); default 1 ns
    bool store_snapshots = true;
    bool check_norm = true;    // reject unnormalized psi0 (off when chaining decayed segments)
};

struct Trajectory {
    std::vector<double> times;                // us
    std::vector<std::vector<cplx>> snapshots; // present iff store_snapshots
    std::vector<double> norms;                // per snapshot time
    std::vector<cplx> final_state;
    long steps = 0;
    long rejected = 0;
};

// Integrate d psi/dt = rhs(psi, t) from t0 to t1 with an embedded
// Runge-Kutta-Fehlberg 7(8) controlled stepper. Stepping is deterministic
// for a fixed (tol, t0, t1, cadence); snapshots land exactly on the cadence
// grid. Throws PropagationError if the controller cannot reach the requested
// tolerance (step-size underflow).
using Rhs = std::function<void(const std::vector<cplx>&, std::vector<cplx>&, double)>;
Trajectory integrate(const Rhs& rhs, const std::vector<cplx>& psi0, double t0, double t1,
                     const PropagateOptions& opts);

// Schroedinger propagation under H_eff(t) from the builder.
Trajectory propagate(const HamiltonianBuilder& h, const StateVector& psi0, double t0, double t1,
                     const PropagateOptions& opts = {});
Trajectory propagate(const HamiltonianSpec& spec, const StateVector& psi0, double t0, double t1,
                     const PropagateOptions& opts = {});

std::vector<std::pair<double, double>> norm_history(const Trajectory& traj);

StateVector final_state(const HilbertSpace& space, const Trajectory& traj);

} // namespace tripodgate
