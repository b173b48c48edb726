#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "tripodgate/levels.hpp"

namespace tripodgate {

using cplx = std::complex<double>;

// Internal units are angular frequency in rad/us and time in us. Boundary
// units (config files, CSV output) are nu = Omega/2pi in MHz and ns.
inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline double mhz_to_rad_us(double nu_mhz) { return kTwoPi * nu_mhz; }
inline double rad_us_to_mhz(double omega) { return omega / kTwoPi; }
inline double ns_to_us(double t_ns) { return t_ns * 1e-3; }
inline double us_to_ns(double t_us) { return t_us * 1e3; }

// Gaussian envelope peak*exp(-4 ln2 (t-center)^2 / fwhm^2), hard-clamped to
// zero for |t-center| > window (default 2.5*fwhm, ~1e-8 relative tail).
double gaussian(double t, double center, double fwhm, double peak, double window = -1.0);

// Polarization split of a single elliptic laser into its two circular
// components driving the 0- and 1-legs. Used with angle=theta for the atom-2
// laser (Omega^(2)) and angle=chi for the atom-1 preliminary laser
// (Omega^(1)_sti); both use (Omega cos, Omega sin) so that the non-coupled
// combination is cos(angle) e^{i phi}|1> - sin(angle)|0>.
struct EllipticComponents {
    double comp0; // drives |0>-|upper>
    double comp1; // drives |1>-|upper>
};
EllipticComponents elliptic_components(double omega, double angle);

// All gate parameters, in internal units.
struct GateConfig {
    double delta = 0.5 * kTwoPi / 2.0;  // rotation angle (rad); default pi/2
    double theta = kTwoPi / 8.0;        // rotation-axis polar parameter (rad); default pi/4
    double phi2 = kTwoPi / 4.0;         // phi^(2) = phi1^(2)-phi0^(2) (rad); default pi/2
    double chi = kTwoPi / 8.0;          // control-state parameter (rad); default pi/4
    double phi1 = 0.0;                  // phi^(1) control-state phase (rad)
    double xi = 0.0;                    // step-1 f-STIRAP relative phase (rad)
    double xi_prime = 0.0;              // step-3 f-STIRAP relative phase (rad)
    bool phase_corrected = true;        // enforce xi - xi' - delta/2 = 0 (xi derived)
    double phi0_2 = 0.0;                // absolute phase of the atom-2 0-leg (rad)
    double phi_1_1 = 0.0;               // phase of the step-2 atom-1 laser (rad)

    double omega_max = mhz_to_rad_us(14.0); // peak of Omega_1^(1) and Omega^(2)
    double omega_sti = mhz_to_rad_us(14.0); // peak of the preliminary lasers
    double g1 = mhz_to_rad_us(34.0);
    double g2 = mhz_to_rad_us(34.0);
    double kappa = 0.0;                 // cavity decay (rad/us)
    double gamma = 0.0;                 // uniform excited-level decay (rad/us)

    double t_p = 0.1;                   // pulse FWHM (us)
    double delay = 0.07;                // counterintuitive delay within a pair (us)
    double sub_gap = 0.14;              // spacing of the two merged Omega^(2) humps (us)
    double step_gap = 0.25;             // gap between step windows (us)

    int n_max = 3;

    double xi_effective() const { return phase_corrected ? xi_prime + 0.5 * delta : xi; }
    void validate() const; // throws std::invalid_argument on bad values
};

// A sum of truncated Gaussians sharing one phase; the merged Omega^(2)
// occupation of step 2 is the only two-hump case.
struct Envelope {
    struct Hump {
        double center;
        double fwhm;
        double peak;
        double window;
    };
    std::vector<Hump> humps;

    double value(double t) const;
    double start() const;
    double end() const;
};

// One of the seven schedule entries: an envelope plus the transition legs it
// drives. Elliptic lasers carry two legs with fixed weights; the complex
// coupling that enters the Hamiltonian is weight * envelope(t) * e^{-i phase}.
struct ScheduleEntry {
    std::string name;
    int step = 0; // 1..3
    Envelope env;
    struct Leg {
        int atom;
        AtomLevel lower;
        AtomLevel upper;
        double weight; // polarization weight, in [0,1]
        double phase;  // static laser phase (rad)
    };
    std::vector<Leg> legs;
};

// Complex Rabi couplings at one instant, stored exactly as they appear in
// the Hamiltonian: coef = Omega(t) e^{-i phi}. Overlapping pulses on the
// same transition add coherently.
struct FieldSnapshot {
    cplx omega11{};  // atom 1, |1>-|e>
    cplx omega20{};  // atom 2, |0>-|e>
    cplx omega21{};  // atom 2, |1>-|e>
    cplx sti0{};     // atom 1, |0>-|e2>
    cplx sti1{};     // atom 1, |1>-|e2>
    cplx sti_a{};    // atom 1, |a>-|e2>

    double omega2_envelope() const; // sqrt(|omega20|^2 + |omega21|^2)
    bool preliminary_active(double eps = 0.0) const;
};

struct MixingAngles {
    double eta;    // tan(eta) = Omega^(2)/g^(2)
    double psi;    // tan(psi) = Omega_1^(1)/g^(1)
    double varphi; // tan(varphi) = sin(psi)/tan(eta); 0 when psi=0 (incl. degenerate)
};

class PulseSchedule {
public:
    PulseSchedule(std::vector<ScheduleEntry> entries, GateConfig config);

    const std::vector<ScheduleEntry>& entries() const { return entries_; }
    const GateConfig& config() const { return config_; }
    double t_start() const { return t_start_; }
    double t_end() const { return t_end_; }
    std::pair<double, double> step_window(int step) const; // step 1..3

    FieldSnapshot fields(double t) const;

private:
    std::vector<ScheduleEntry> entries_;
    GateConfig config_;
    double t_start_;
    double t_end_;
    std::array<std::pair<double, double>, 3> windows_;
};

// The full seven-pulse three-step schedule. Throws if the step windows
// overlap (gaps too small).
PulseSchedule build_gate_schedule(const GateConfig& config);

// Steps 2 only / a single step, for diagnostics and the spectator checks.
PulseSchedule build_step_schedule(const GateConfig& config, int step);

MixingAngles mixing_angles(const PulseSchedule& schedule, double t, double g1, double g2);
MixingAngles mixing_angles_from_fields(double omega2, double omega11, double g1, double g2);

// CSV export: t_ns, Omega_1_1, Omega_2, Omega_sti, Omega_a_sti (nu in MHz)
// plus phase columns (rad).
void write_schedule_csv(std::ostream& os, const PulseSchedule& schedule, double dt_ns);

} // namespace tripodgate
