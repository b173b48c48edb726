#include "tripodgate/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace tripodgate {

namespace {
constexpr double kFourLn2 = 2.77258872223978123766892848583;
constexpr double kWindowFactor = 2.5; // hard cutoff at +-2.5*T_P from each center
} // namespace

double gaussian(double t, double center, double fwhm, double peak, double window)
{
    if (fwhm <= 0.0)
        throw std::invalid_argument("gaussian: fwhm must be positive");
    if (window < 0.0)
        window = kWindowFactor * fwhm;
    const double dt = t - center;
    if (std::abs(dt) > window)
        return 0.0;
    return peak * std::exp(-kFourLn2 * dt * dt / (fwhm * fwhm));
}

EllipticComponents elliptic_components(double omega, double angle)
{
    if (omega < 0.0)
        throw std::invalid_argument("elliptic_components: omega must be non-negative");
    return EllipticComponents{omega * std::cos(angle), omega * std::sin(angle)};
}

void GateConfig::validate() const
{
    if (omega_max < 0.0 || omega_sti < 0.0)
        throw std::invalid_argument("peak Rabi frequencies must be non-negative");
    if (g1 <= 0.0 || g2 <= 0.0)
        throw std::invalid_argument("cavity couplings g1, g2 must be positive");
    if (kappa < 0.0 || gamma < 0.0)
        throw std::invalid_argument("decay rates must be non-negative");
    if (t_p <= 0.0)
        throw std::invalid_argument("pulse width t_p must be positive");
    if (delay <= 0.0 || sub_gap < 0.0)
        throw std::invalid_argument("pulse delays must be positive");
    if (n_max < 2)
        throw std::invalid_argument("n_max must be >= 2");
    if (phase_corrected && std::abs(xi_effective() - xi_prime - 0.5 * delta) > 1e-12)
        throw std::invalid_argument("phase-corrected mode requires xi - xi' - delta/2 = 0");
}

double Envelope::value(double t) const
{
    double v = 0.0;
    for (const Hump& h : humps)
        v += gaussian(t, h.center, h.fwhm, h.peak, h.window);
    return v;
}

double Envelope::start() const
{
    double s = std::numeric_limits<double>::infinity();
    for (const Hump& h : humps)
        s = std::min(s, h.center - h.window);
    return s;
}

double Envelope::end() const
{
    double e = -std::numeric_limits<double>::infinity();
    for (const Hump& h : humps)
        e = std::max(e, h.center + h.window);
    return e;
}

double FieldSnapshot::omega2_envelope() const
{
    return std::hypot(std::abs(omega20), std::abs(omega21));
}

bool FieldSnapshot::preliminary_active(double eps) const
{
    return std::abs(sti0) > eps || std::abs(sti1) > eps || std::abs(sti_a) > eps;
}

PulseSchedule::PulseSchedule(std::vector<ScheduleEntry> entries, GateConfig config)
    : entries_(std::move(entries)), config_(config)
{
    t_start_ = std::numeric_limits<double>::infinity();
    t_end_ = -std::numeric_limits<double>::infinity();
    for (auto& w : windows_)
        w = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const ScheduleEntry& e : entries_) {
        if (e.step < 1 || e.step > 3)
            throw std::invalid_argument("schedule entry step must be 1..3");
        auto& w = windows_[e.step - 1];
        w.first = std::min(w.first, e.env.start());
        w.second = std::max(w.second, e.env.end());
        t_start_ = std::min(t_start_, e.env.start());
        t_end_ = std::max(t_end_, e.env.end());
    }
    // steps present in the schedule must occupy disjoint, ordered windows
    const double tol = 0.0;
    for (int s = 0; s < 2; ++s) {
        if (windows_[s].second == -std::numeric_limits<double>::infinity())
            continue;
        for (int s2 = s + 1; s2 < 3; ++s2) {
            if (windows_[s2].second == -std::numeric_limits<double>::infinity())
                continue;
            if (windows_[s2].first < windows_[s].second - tol)
                throw std::invalid_argument("pulse steps overlap: increase step_gap");
        }
    }
}

std::pair<double, double> PulseSchedule::step_window(int step) const
{
    if (step < 1 || step > 3)
        throw std::invalid_argument("step must be 1..3");
    return windows_[step - 1];
}

FieldSnapshot PulseSchedule::fields(double t) const
{
    FieldSnapshot f;
    for (const ScheduleEntry& e : entries_) {
        const double env = e.env.value(t);
        if (env == 0.0)
            continue;
        for (const ScheduleEntry::Leg& leg : e.legs) {
            const cplx coef = env * leg.weight * std::polar(1.0, -leg.phase);
            if (leg.atom == 1 && leg.upper == AtomLevel::exc && leg.lower == AtomLevel::g1)
                f.omega11 += coef;
            else if (leg.atom == 2 && leg.upper == AtomLevel::exc && leg.lower == AtomLevel::g0)
                f.omega20 += coef;
            else if (leg.atom == 2 && leg.upper == AtomLevel::exc && leg.lower == AtomLevel::g1)
                f.omega21 += coef;
            else if (leg.atom == 1 && leg.upper == AtomLevel::exc2 && leg.lower == AtomLevel::g0)
                f.sti0 += coef;
            else if (leg.atom == 1 && leg.upper == AtomLevel::exc2 && leg.lower == AtomLevel::g1)
                f.sti1 += coef;
            else if (leg.atom == 1 && leg.upper == AtomLevel::exc2 && leg.lower == AtomLevel::anc)
                f.sti_a += coef;
            else
                throw std::logic_error("schedule entry drives an unknown transition");
        }
    }
    return f;
}

namespace {

Envelope single_hump(double center, const GateConfig& c, double peak)
{
    return Envelope{{Envelope::Hump{center, c.t_p, peak, kWindowFactor * c.t_p}}};
}

} // namespace

PulseSchedule build_gate_schedule(const GateConfig& config)
{
    config.validate();
    const GateConfig& c = config;
    const double w = kWindowFactor * c.t_p;
    const double xi = c.xi_effective();

    // step 1: Omega_a(sti) then Omega^(1)_sti (counterintuitive for the
    // phi_c -> a transfer); relative phase xi rides on the a-leg laser
    const double c1 = w;
    const double c2 = c1 + c.delay;
    // step 2: Omega_1^(1), merged Omega^(2) (two humps), Omega_1^(1) shifted by +delta
    const double c3 = c2 + w + c.step_gap + w;
    const double c4a = c3 + c.delay;
    const double c4b = c4a + c.sub_gap;
    const double c5 = c4b + c.delay;
    // step 3: reversed order of step 1, relative phase xi'
    const double c6 = c5 + w + c.step_gap + w;
    const double c7 = c6 + c.delay;

    const EllipticComponents sti = elliptic_components(1.0, c.chi);
    const EllipticComponents pol2 = elliptic_components(1.0, c.theta);
    const double phi0_2 = c.phi0_2;
    const double phi1_2 = c.phi0_2 + c.phi2;

    std::vector<ScheduleEntry> entries;
    entries.push_back({"Omega_a_sti_1", 1, single_hump(c1, c, c.omega_sti),
                       {{1, AtomLevel::anc, AtomLevel::exc2, 1.0, xi}}});
    entries.push_back({"Omega_sti_1", 1, single_hump(c2, c, c.omega_sti),
                       {{1, AtomLevel::g0, AtomLevel::exc2, sti.comp0, 0.0},
                        {1, AtomLevel::g1, AtomLevel::exc2, sti.comp1, c.phi1}}});
    entries.push_back({"Omega_1_1_a", 2, single_hump(c3, c, c.omega_max),
                       {{1, AtomLevel::g1, AtomLevel::exc, 1.0, c.phi_1_1}}});
    {
        Envelope merged = single_hump(c4a, c, c.omega_max);
        merged.humps.push_back(Envelope::Hump{c4b, c.t_p, c.omega_max, w});
        entries.push_back({"Omega_2", 2, merged,
                           {{2, AtomLevel::g0, AtomLevel::exc, pol2.comp0, phi0_2},
                            {2, AtomLevel::g1, AtomLevel::exc, pol2.comp1, phi1_2}}});
    }
    entries.push_back({"Omega_1_1_b", 2, single_hump(c5, c, c.omega_max),
                       {{1, AtomLevel::g1, AtomLevel::exc, 1.0, c.phi_1_1 + c.delta}}});
    entries.push_back({"Omega_sti_3", 3, single_hump(c6, c, c.omega_sti),
                       {{1, AtomLevel::g0, AtomLevel::exc2, sti.comp0, 0.0},
                        {1, AtomLevel::g1, AtomLevel::exc2, sti.comp1, c.phi1}}});
    entries.push_back({"Omega_a_sti_3", 3, single_hump(c7, c, c.omega_sti),
                       {{1, AtomLevel::anc, AtomLevel::exc2, 1.0, c.xi_prime}}});

    return PulseSchedule(std::move(entries), config);
}

PulseSchedule build_step_schedule(const GateConfig& config, int step)
{
    PulseSchedule full = build_gate_schedule(config);
    std::vector<ScheduleEntry> kept;
    for (const ScheduleEntry& e : full.entries())
        if (e.step == step)
            kept.push_back(e);
    if (kept.empty())
        throw std::invalid_argument("no entries for requested step");
    return PulseSchedule(std::move(kept), config);
}

MixingAngles mixing_angles_from_fields(double omega2, double omega11, double g1, double g2)
{
    if (g1 <= 0.0 || g2 <= 0.0)
        throw std::invalid_argument("mixing_angles: g1, g2 must be positive");
    MixingAngles m{};
    m.eta = std::atan(omega2 / g2);
    m.psi = std::atan(omega11 / g1);
    // tan(varphi) = sin(psi)/tan(eta); varphi = pi/2 when eta = 0 and psi > 0,
    // and 0 when psi = 0 (including the degenerate eta = psi = 0 case).
    if (m.psi == 0.0)
        m.varphi = 0.0;
    else
        m.varphi = std::atan2(std::sin(m.psi), std::tan(m.eta));
    return m;
}

MixingAngles mixing_angles(const PulseSchedule& schedule, double t, double g1, double g2)
{
    const FieldSnapshot f = schedule.fields(t);
    return mixing_angles_from_fields(f.omega2_envelope(), std::abs(f.omega11), g1, g2);
}

void write_schedule_csv(std::ostream& os, const PulseSchedule& schedule, double dt_ns)
{
    if (dt_ns <= 0.0)
        throw std::invalid_argument("dt_ns must be positive");
    os << "t_ns,Omega_1_1,Omega_2,Omega_sti,Omega_a_sti,"
          "phase_1_1,phase_2_0,phase_2_1,phase_sti_0,phase_sti_1,phase_a_sti\n";
    const double dt = ns_to_us(dt_ns);
    const auto phase_of = [](const cplx& coef) { return coef == cplx{} ? 0.0 : -std::arg(coef); };
    char buf[360];
    for (double t = schedule.t_start(); t <= schedule.t_end() + 0.5 * dt; t += dt) {
        const FieldSnapshot f = schedule.fields(t);
        std::snprintf(buf, sizeof buf,
                      "%.6f,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                      us_to_ns(t), rad_us_to_mhz(std::abs(f.omega11)),
                      rad_us_to_mhz(f.omega2_envelope()),
                      rad_us_to_mhz(std::hypot(std::abs(f.sti0), std::abs(f.sti1))),
                      rad_us_to_mhz(std::abs(f.sti_a)), phase_of(f.omega11),
                      phase_of(f.omega20), phase_of(f.omega21), phase_of(f.sti0),
                      phase_of(f.sti1), phase_of(f.sti_a));
        os << buf;
    }
}

} // namespace tripodgate
