#include "tripodgate/darkstates.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>

namespace tripodgate {

Phi2States phi_states(double theta, double phi2)
{
    const double ct = std::cos(theta), st = std::sin(theta);
    const cplx ep = std::polar(1.0, phi2);
    Phi2States p;
    p.nc = QubitVector{-st, ct * ep};
    p.c = QubitVector{ct, st * ep};
    p.c2 = QubitVector{-ct, st * ep};
    p.c3 = QubitVector{st, ct * ep};
    return p;
}

namespace {

void add_pair(StateVector& psi, AtomLevel a1, const QubitVector& q2, int n, cplx amp)
{
    const HilbertSpace& sp = psi.space();
    psi[sp.index(a1, AtomLevel::g0, n)] += amp * q2.a0;
    psi[sp.index(a1, AtomLevel::g1, n)] += amp * q2.a1;
}

void add_one(StateVector& psi, AtomLevel a1, AtomLevel a2, int n, cplx amp)
{
    psi[psi.space().index(a1, a2, n)] += amp;
}

} // namespace

DarkStateSet analytic_dark_states(const DarkAngles& a, const HilbertSpace& space)
{
    const Phi2States phi = phi_states(a.theta, a.phi2);
    const double ce = std::cos(a.eta), se = std::sin(a.eta);
    const double cp = std::cos(a.psi), sp = std::sin(a.psi);
    const double cv = std::cos(a.varphi), sv = std::sin(a.varphi);
    const cplx em_p0 = std::polar(1.0, -a.phi0_2);
    const cplx ep_p1 = std::polar(1.0, a.phi1_1);

    DarkStateSet set{{StateVector(space), StateVector(space), StateVector(space),
                      StateVector(space), StateVector(space), StateVector(space)},
                     a};

    // subspace {1,2}: atom 1 in |0>
    add_pair(set.psi[0], AtomLevel::g0, phi.nc, 0, 1.0);
    add_pair(set.psi[1], AtomLevel::g0, phi.c, 0, ce);
    add_one(set.psi[1], AtomLevel::g0, AtomLevel::anc, 1, -se * em_p0);

    // subspace {3,4}: atom 1 in |a>
    add_pair(set.psi[2], AtomLevel::anc, phi.nc, 0, 1.0);
    add_pair(set.psi[3], AtomLevel::anc, phi.c, 0, sv);
    add_one(set.psi[3], AtomLevel::g1, AtomLevel::anc, 0, cp * cv * ep_p1 * em_p0);
    add_one(set.psi[3], AtomLevel::anc, AtomLevel::anc, 1, -sp * cv * em_p0);

    // subspace {5,6}: atom 1 in |1>. The bright-pair state mirrors the
    // {1,2}/{3,4} construction with phi_nc/phi_c; its two-photon component
    // carries the +sin(eta)sin(psi) sign that closes all four excited
    // channels (the printed form is not a kernel member).
    add_pair(set.psi[4], AtomLevel::g1, phi.nc, 0, cp * ep_p1);
    add_pair(set.psi[4], AtomLevel::anc, phi.nc, 1, -sp);

    const double rt2 = std::sqrt(2.0);
    add_pair(set.psi[5], AtomLevel::g1, phi.c, 0, rt2 * ce * cp * ep_p1);
    add_pair(set.psi[5], AtomLevel::anc, phi.c, 1, -rt2 * ce * sp);
    add_one(set.psi[5], AtomLevel::g1, AtomLevel::anc, 1, -rt2 * se * cp * ep_p1 * em_p0);
    add_one(set.psi[5], AtomLevel::anc, AtomLevel::anc, 2, se * sp * em_p0);

    for (StateVector& s : set.psi)
        s.normalize();
    return set;
}

DarkAngles angles_at(const PulseSchedule& schedule, double t, double g1, double g2)
{
    const FieldSnapshot f = schedule.fields(t);
    const MixingAngles m =
        mixing_angles_from_fields(f.omega2_envelope(), std::abs(f.omega11), g1, g2);
    const GateConfig& c = schedule.config();
    DarkAngles a;
    a.eta = m.eta;
    a.psi = m.psi;
    a.varphi = m.varphi;
    a.theta = c.theta;
    a.phi2 = c.phi2;
    a.phi0_2 = std::abs(f.omega20) > 0.0 ? -std::arg(f.omega20) : c.phi0_2;
    a.phi1_1 = std::abs(f.omega11) > 0.0 ? -std::arg(f.omega11) : c.phi_1_1;
    return a;
}

DarkStateSet dark_states_at(const PulseSchedule& schedule, double t, double g1, double g2,
                            const HilbertSpace& space)
{
    return analytic_dark_states(angles_at(schedule, t, g1, g2), space);
}

std::array<double, 6> kernel_residuals(const HamiltonianBuilder& h, double t,
                                       const DarkStateSet& set)
{
    const FieldSnapshot f = h.spec().schedule->fields(t);
    if (f.preliminary_active())
        throw std::domain_error(
            "kernel_residuals: preliminary-transfer fields active; the analytic dark states "
            "are defined for the step-2 linkage only");
    const double scale = std::max(h.spec().g1, h.spec().g2);
    std::array<double, 6> r{};
    std::vector<cplx> y(h.dim());
    for (int i = 0; i < 6; ++i) {
        h.apply(t, set.psi[i].data(), y.data());
        double s = 0.0;
        for (const cplx& v : y)
            s += std::norm(v);
        r[i] = std::sqrt(s) / scale;
    }
    return r;
}

cplx nonadiabatic_coupling(int bra, int ket, const PulseSchedule& schedule, double g1, double g2,
                           double t, double dt, const std::function<double(double)>& theta_fn)
{
    const bool ok = (bra == 2 && ket == 1) || (bra == 4 && ket == 3) || (bra == 6 && ket == 5);
    if (!ok)
        throw std::invalid_argument("nonadiabatic_coupling: pair must be (2,1), (4,3) or (6,5)");
    const double t_p = schedule.config().t_p;
    if (!(dt > 0.0) || dt > t_p / 50.0)
        throw std::invalid_argument(
            "nonadiabatic_coupling: dt too large for the second-order finite difference");

    const HilbertSpace space(schedule.config().n_max);
    auto states = [&](double tau) {
        DarkAngles a = angles_at(schedule, tau, g1, g2);
        if (theta_fn)
            a.theta = theta_fn(tau);
        return analytic_dark_states(a, space);
    };
    const DarkStateSet mid = states(t);
    const DarkStateSet fwd = states(t + dt);
    const DarkStateSet bwd = states(t - dt);

    cplx acc(0.0, 0.0);
    const StateVector& b = mid.psi[bra - 1];
    const StateVector& kf = fwd.psi[ket - 1];
    const StateVector& kb = bwd.psi[ket - 1];
    for (int i = 0; i < b.dim(); ++i)
        acc += std::conj(b[i]) * (kf[i] - kb[i]);
    return acc / (2.0 * dt);
}

cplx expected_coupling(int bra, int ket, const DarkAngles& a, double theta_dot)
{
    if (bra == 2 && ket == 1)
        return -theta_dot * std::cos(a.eta);
    if (bra == 4 && ket == 3)
        return -theta_dot * std::sin(a.varphi);
    if (bra == 6 && ket == 5) {
        const double ce = std::cos(a.eta), se = std::sin(a.eta), cp = std::cos(a.psi);
        const double norm = std::sqrt(1.0 + ce * ce + se * se * cp * cp);
        return -theta_dot * std::sqrt(2.0) * ce / norm;
    }
    throw std::invalid_argument("expected_coupling: pair must be (2,1), (4,3) or (6,5)");
}

namespace {

Eigen::MatrixXcd hermitian_at(const HamiltonianBuilder& h, double t)
{
    std::vector<cplx> H;
    h.assemble(t, H);
    const int n = h.dim();
    Eigen::MatrixXcd M(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            M(r, c) = H[static_cast<std::ptrdiff_t>(r) * n + c];
    return M;
}

// Columns: orthonormal basis of the numeric kernel of H(t).
Eigen::MatrixXcd numeric_kernel(const HamiltonianBuilder& h, double t)
{
    const Eigen::MatrixXcd M = hermitian_at(h, t);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    const double thresh = 1e-7 * std::max(h.spec().g1, h.spec().g2);
    const auto& vals = es.eigenvalues();
    int count = 0;
    for (int i = 0; i < vals.size(); ++i)
        if (std::abs(vals[i]) < thresh)
            ++count;
    Eigen::MatrixXcd K(M.rows(), count);
    int c = 0;
    for (int i = 0; i < vals.size(); ++i)
        if (std::abs(vals[i]) < thresh)
            K.col(c++) = es.eigenvectors().col(i);
    return K;
}

} // namespace

double kernel_projection_deficit(const HamiltonianBuilder& h, double t, const StateVector& psi)
{
    const Eigen::MatrixXcd K = numeric_kernel(h, t);
    Eigen::VectorXcd v(psi.dim());
    for (int i = 0; i < psi.dim(); ++i)
        v[i] = psi[i];
    v.normalize();
    const double proj = (K.adjoint() * v).squaredNorm();
    return std::max(0.0, 1.0 - proj);
}

double kernel_max_principal_angle(const HamiltonianBuilder& h, double t, const DarkStateSet& set)
{
    const Eigen::MatrixXcd K = numeric_kernel(h, t);
    Eigen::MatrixXcd A(h.dim(), 6);
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < h.dim(); ++i)
            A(i, j) = set.psi[j][i];
    // analytic states are orthonormal; principal angles from the singular
    // values of K^dagger A
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(K.adjoint() * A);
    const double smin = svd.singularValues().size() < 6
                            ? 0.0
                            : svd.singularValues()(svd.singularValues().size() - 1);
    return std::acos(std::min(1.0, smin));
}

int zero_excited_kernel_dim(const HamiltonianBuilder& h, double t)
{
    const Eigen::MatrixXcd M = hermitian_at(h, t);
    const HilbertSpace& sp = *h.spec().space;
    std::vector<int> ground, excited;
    for (int i = 0; i < sp.dim(); ++i) {
        const auto l = sp.label(i);
        (is_excited(l.a1) || is_excited(l.a2) ? excited : ground).push_back(i);
    }
    Eigen::MatrixXcd B(excited.size(), ground.size());
    for (size_t r = 0; r < excited.size(); ++r)
        for (size_t c = 0; c < ground.size(); ++c)
            B(r, c) = M(excited[r], ground[c]);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
    const double thresh = 1e-9 * std::max(h.spec().g1, h.spec().g2);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > thresh)
            ++rank;
    return static_cast<int>(ground.size()) - rank;
}

void write_dark_check_csv(std::ostream& os, const HamiltonianBuilder& h, int samples)
{
    if (samples < 2)
        throw std::invalid_argument("dark-check needs at least 2 samples");
    const PulseSchedule& sched = *h.spec().schedule;
    const auto [w0, w1] = sched.step_window(2);
    const double g1 = h.spec().g1, g2 = h.spec().g2;
    const HilbertSpace& space = *h.spec().space;
    const double fd_dt = sched.config().t_p / 100.0;

    os << "t_ns,residual_1,residual_2,residual_3,residual_4,residual_5,residual_6,"
          "kernel_angle_max_rad,coupling_21_abs,coupling_43_abs,coupling_65_abs\n";
    char buf[320];
    for (int k = 0; k < samples; ++k) {
        const double t = w0 + (w1 - w0) * (k + 0.5) / samples;
        const DarkStateSet set = dark_states_at(sched, t, g1, g2, space);
        const auto res = kernel_residuals(h, t, set);
        const double angle = kernel_max_principal_angle(h, t, set);
        const double c21 = std::abs(nonadiabatic_coupling(2, 1, sched, g1, g2, t, fd_dt));
        const double c43 = std::abs(nonadiabatic_coupling(4, 3, sched, g1, g2, t, fd_dt));
        const double c65 = std::abs(nonadiabatic_coupling(6, 5, sched, g1, g2, t, fd_dt));
        std::snprintf(buf, sizeof buf,
                      "%.6f,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e,%.6e\n",
                      us_to_ns(t), res[0], res[1], res[2], res[3], res[4], res[5], angle, c21,
                      c43, c65);
        os << buf;
    }
}

} // namespace tripodgate
