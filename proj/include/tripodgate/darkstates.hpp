#pragma once

#include <array>
#include <functional>
#include <iosfwd>

#include "tripodgate/hamiltonian.hpp"
#include "tripodgate/hilbert.hpp"
#include "tripodgate/pulses.hpp"

namespace tripodgate {

// The four atom-2 states parametrized by (theta, phi^(2)); phi_nc is exactly
// non-coupled under the elliptic split (Omega cos(theta), Omega sin(theta)),
// phi_c couples to |e^(2)> with the full envelope Omega^(2) e^{-i phi_0^(2)}.
struct Phi2States {
    QubitVector nc; //  cos(t) e^{i p}|1> - sin(t)|0>
    QubitVector c;  //  sin(t) e^{i p}|1> + cos(t)|0>
    QubitVector c2; //  sin(t) e^{i p}|1> - cos(t)|0>
    QubitVector c3; //  cos(t) e^{i p}|1> + sin(t)|0>
};
Phi2States phi_states(double theta, double phi2);

struct DarkAngles {
    double eta = 0.0;
    double psi = 0.0;
    double varphi = 0.0;
    double phi0_2 = 0.0; // atom-2 0-leg laser phase
    double phi1_1 = 0.0; // atom-1 step-2 laser phase (includes the +delta shift when active)
    double theta = 0.0;
    double phi2 = 0.0;
};

// Instantaneous zero-eigenvalue eigenstates of the step-2 Hamiltonian with no
// excited-state amplitude, grouped into the subspaces {1,2}, {3,4}, {5,6}
// driving |00>|0>,|01>|0>; |a0>|0>,|a1>|0>; |10>|0>,|11>|0>. Each state is
// renormalized numerically.
struct DarkStateSet {
    std::array<StateVector, 6> psi;
    DarkAngles angles;

    const StateVector& operator[](int i) const { return psi.at(i); } // 0-based
};

DarkStateSet analytic_dark_states(const DarkAngles& a, const HilbertSpace& space);

// Field-derived angles and phases at time t (Eq.-9 relations, recomputed
// from the schedule at every call; never cached).
DarkAngles angles_at(const PulseSchedule& schedule, double t, double g1, double g2);
DarkStateSet dark_states_at(const PulseSchedule& schedule, double t, double g1, double g2,
                            const HilbertSpace& space);

// residual_i = ||H(t) Psi_i|| / max(g1,g2). Refuses (std::domain_error) if
// any preliminary-transfer field is active at t: the analytic set is only a
// kernel basis for the step-2 linkage.
std::array<double, 6> kernel_residuals(const HamiltonianBuilder& h, double t,
                                       const DarkStateSet& set);

// <Psi_bra| d/dt |Psi_ket> by symmetric finite difference at spacing dt.
// Valid (bra,ket) pairs: (2,1), (4,3), (6,5). theta_fn overrides the
// schedule's constant polarization angle (synthetic diagnostic); with the
// default constant theta all three couplings vanish identically.
cplx nonadiabatic_coupling(int bra, int ket, const PulseSchedule& schedule, double g1, double g2,
                           double t, double dt,
                           const std::function<double(double)>& theta_fn = nullptr);

// Closed-form values for the same couplings given theta_dot at t.
cplx expected_coupling(int bra, int ket, const DarkAngles& a, double theta_dot);

// Numeric-kernel diagnostics (kappa/gamma excluded; H(t) Hermitian).
// Deficit 1 - ||P_K psi||^2 of a unit vector against the numeric kernel K.
double kernel_projection_deficit(const HamiltonianBuilder& h, double t, const StateVector& psi);
// Largest principal angle between span{Psi_1..Psi_6} and the numeric kernel.
double kernel_max_principal_angle(const HamiltonianBuilder& h, double t, const DarkStateSet& set);
// Dimension of ker H(t) restricted to the zero-excited-amplitude sector.
int zero_excited_kernel_dim(const HamiltonianBuilder& h, double t);

// dark-check report: t_ns, residual_1..6, kernel_angle_max_rad, coupling
// magnitudes for the three pairs (constant theta). Samples the step-2 window.
void write_dark_check_csv(std::ostream& os, const HamiltonianBuilder& h, int samples);

} // namespace tripodgate
