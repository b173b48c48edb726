#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "tripodgate/hilbert.hpp"
#include "tripodgate/propagator.hpp"
#include "tripodgate/pulses.hpp"

namespace tripodgate {

// Control basis of atom 1 selected by the preliminary-laser polarization:
// phi_c = sin(chi) e^{i phi1}|1> + cos(chi)|0> is transferred to |a>,
// phi_nc is its orthogonal complement and stays untouched.
struct ControlBasis {
    QubitVector c;
    QubitVector nc;
};
ControlBasis control_basis(double chi, double phi1);

// U(delta, n) = cos(delta/2) I - i sin(delta/2) (n.sigma) with
// n.sigma = [[cos 2theta, sin 2theta e^{-i phi2}], [sin 2theta e^{i phi2},
// -cos 2theta]] in the (|0>,|1>) basis; equivalently
// e^{+i delta/2}|Phi_nc><Phi_nc| + e^{-i delta/2}|Phi_c><Phi_c|.
Eigen::Matrix2cd ideal_unitary(double delta, double theta, double phi2);

// Target 4x4 on {|phi_nc 0>, |phi_nc 1>, |phi_c 0>, |phi_c 1>}:
// blockdiag(I, e^{i(xi-xi'-delta/2)} U). The phase factor is 1 in
// phase-corrected mode.
Eigen::Matrix4cd ideal_gate_matrix(const GateConfig& config);

// Analytic final state for an input in the computational subspace with zero
// photons: the phi_nc component is unchanged, the phi_c component acquires
// e^{i(xi-xi')} e^{-i delta/2} U(delta,n) on the target qubit.
StateVector ideal_final_state(const GateConfig& config, const HilbertSpace& space,
                              const StateVector& psi0);

struct GateRun {
    Trajectory traj;
    std::array<std::vector<cplx>, 3> step_final; // state after each step
};

// Full three-step, seven-pulse protocol.
GateRun run_gate(const GateConfig& config, const HilbertSpace& space, const StateVector& psi0,
                 const PropagateOptions& opts = {});

// Tomography: runs the four ControlBasis x {|0>,|1>} inputs and projects the
// final states back; G[i][j] = <basis_i|psi_final(basis_j)>. The global phase
// makes the largest-magnitude element of the phi_nc block real positive.
Eigen::Matrix4cd extract_gate_matrix(const GateConfig& config, const PropagateOptions& opts = {});

double unitarity_defect(const Eigen::Matrix4cd& G);              // ||G^dag G - I||_F
double off_block_leakage(const Eigen::Matrix4cd& G);             // max |element| off-block
double average_gate_fidelity(const Eigen::Matrix4cd& G, const Eigen::Matrix4cd& ideal);

struct FidelityRecord {
    double omega_mhz = 0.0;
    double g_mhz = 0.0;
    double kappa_mhz = 0.0;
    double f_minus[2] = {0.0, 0.0}; // control |->, target |0>/|1>
    double f_plus[2] = {0.0, 0.0};  // control |+>, target |0>/|1>
    double f_minus_mean() const { return 0.5 * (f_minus[0] + f_minus[1]); }
    double f_plus_mean() const { return 0.5 * (f_plus[0] + f_plus[1]); }
};

struct GridEntry {
    double omega_mhz;
    double g_mhz;
    double kappa_mhz;
};

// The six parameter triples of the reference fidelity study, in order.
std::vector<GridEntry> default_fidelity_grid();

// F = |<ideal|numeric>|^2 against the analytic zero-decay final state; the
// numeric state is left unnormalized so decay lowers F. Entries run
// concurrently; results are ordered as the input grid.
std::vector<FidelityRecord> fidelity_table(const GateConfig& base,
                                           const std::vector<GridEntry>& grid,
                                           const PropagateOptions& opts = {});

void write_fidelity_csv(std::ostream& os, const std::vector<FidelityRecord>& records);

// Projective-measurement circuit (H on the control, the extracted gate with
// U realizing M, H on the control), composed at the matrix level. M must be
// unitary with eigenvalues +1 and -1 (delta = pi). With chi = pi/2 the
// control basis coincides with the computational one.
struct MeasurementDemo {
    Eigen::Matrix4cd circuit;    // composed 4x4, computational basis
    double p0 = 0.0, p1 = 0.0;   // outcome probabilities for the control
    Eigen::Vector2cd post0, post1; // conditioned target states (normalized)
    double eigen_residual0 = 0.0;  // ||M v - <v|M|v> v|| per conditioned state
    double eigen_residual1 = 0.0;
};
MeasurementDemo measurement_demo(const GateConfig& base, const Eigen::Matrix2cd& M,
                                 const QubitVector& input, const PropagateOptions& opts = {});

void write_gate_matrix_json(std::ostream& os, const Eigen::Matrix4cd& G);
void write_measurement_json(std::ostream& os, const MeasurementDemo& demo);

} // namespace tripodgate
