#include "tripodgate/propagator.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "tripodgate/kernels.hpp"

namespace tripodgate {

namespace ode = boost::numeric::odeint;

namespace {

using state_type = std::vector<cplx>;

struct RhsAdapter {
    const Rhs* rhs;
    void operator()(const state_type& x, state_type& dxdt, double t) const { (*rhs)(x, dxdt, t); }
};

} // namespace

Trajectory integrate(const Rhs& rhs, const state_type& psi0, double t0, double t1,
                     const PropagateOptions& opts)
{
    if (!(t1 > t0))
        throw std::invalid_argument("integrate: t1 must exceed t0");
    if (opts.tol <= 0.0 || opts.cadence <= 0.0)
        throw std::invalid_argument("integrate: tol and cadence must be positive");

    using stepper_t = ode::runge_kutta_fehlberg78<state_type>;
    auto stepper = ode::make_controlled<stepper_t>(1e-14, opts.tol);

    Trajectory traj;
    state_type x = psi0;
    RhsAdapter f{&rhs};

    const double dt_min = 1e-13;
    double dt = std::min(1e-3, 0.25 * opts.cadence); // fixed initial step: deterministic

    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.norms.push_back(
            std::sqrt(kernels::norm_sq(x.data(), static_cast<int>(x.size()))));
        if (opts.store_snapshots)
            traj.snapshots.push_back(x);
    };

    record(t0);
    const long n_out = static_cast<long>(std::ceil((t1 - t0) / opts.cadence - 1e-9));
    double t = t0;
    for (long k = 1; k <= n_out; ++k) {
        const double target = (k == n_out) ? t1 : t0 + k * opts.cadence;
        while (target - t > 1e-14) {
            double h = std::min(dt, target - t);
            int fails = 0;
            while (true) {
                const auto res = stepper.try_step(f, x, t, h);
                if (res == ode::success)
                    break;
                ++traj.rejected;
                if (++fails > 60 || h < dt_min)
                    throw PropagationError(
                        "integrator cannot reach the requested tolerance (step underflow at t=" +
                        std::to_string(t) + ")");
            }
            ++traj.steps;
            dt = h; // controller-updated size carried to the next step
        }
        record(target);
        t = target;
    }
    traj.final_state = x;
    return traj;
}

Trajectory propagate(const HamiltonianBuilder& h, const StateVector& psi0, double t0, double t1,
                     const PropagateOptions& opts)
{
    if (psi0.dim() != h.dim())
        throw std::invalid_argument("propagate: state dimension mismatch");
    if (opts.check_norm && std::abs(psi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("propagate: initial state must be normalized");
    std::vector<cplx> G;
    Rhs rhs = [&h, &G](const state_type& x, state_type& dxdt, double t) {
        h.generator(t, G);
        dxdt.resize(x.size());
        kernels::matvec(G.data(), x.data(), dxdt.data(), static_cast<int>(x.size()));
    };
    return integrate(rhs, psi0.amplitudes(), t0, t1, opts);
}

Trajectory propagate(const HamiltonianSpec& spec, const StateVector& psi0, double t0, double t1,
                     const PropagateOptions& opts)
{
    HamiltonianBuilder h(spec);
    return propagate(h, psi0, t0, t1, opts);
}

std::vector<std::pair<double, double>> norm_history(const Trajectory& traj)
{
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.times.size());
    for (size_t i = 0; i < traj.times.size(); ++i)
        out.emplace_back(traj.times[i], traj.norms[i]);
    return out;
}

StateVector final_state(const HilbertSpace& space, const Trajectory& traj)
{
    if (static_cast<int>(traj.final_state.size()) != space.dim())
        throw std::invalid_argument("final_state: dimension mismatch");
    StateVector psi(space);
    psi.amplitudes() = traj.final_state;
    return psi;
}

} // namespace tripodgate
