#include "tripodgate/gate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>

#include <nlohmann/json.hpp>

#include "tripodgate/hamiltonian.hpp"

namespace tripodgate {

ControlBasis control_basis(double chi, double phi1)
{
    const double c = std::cos(chi), s = std::sin(chi);
    const cplx ep = std::polar(1.0, phi1);
    return ControlBasis{QubitVector{c, s * ep}, QubitVector{-s, c * ep}};
}

Eigen::Matrix2cd ideal_unitary(double delta, double theta, double phi2)
{
    const cplx i(0.0, 1.0);
    const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
    Eigen::Matrix2cd ns;
    ns << c2, s2 * std::polar(1.0, -phi2), s2 * std::polar(1.0, phi2), -c2;
    return std::cos(0.5 * delta) * Eigen::Matrix2cd::Identity() - i * std::sin(0.5 * delta) * ns;
}

Eigen::Matrix4cd ideal_gate_matrix(const GateConfig& config)
{
    const cplx phase = std::polar(1.0, config.xi_effective() - config.xi_prime - 0.5 * config.delta);
    Eigen::Matrix4cd G = Eigen::Matrix4cd::Zero();
    G.block<2, 2>(0, 0) = Eigen::Matrix2cd::Identity();
    G.block<2, 2>(2, 2) = phase * ideal_unitary(config.delta, config.theta, config.phi2);
    return G;
}

namespace {

std::array<StateVector, 4> tomography_basis(const GateConfig& c, const HilbertSpace& space)
{
    const ControlBasis cb = control_basis(c.chi, c.phi1);
    const QubitVector q0{1.0, 0.0}, q1{0.0, 1.0};
    return {embed_product(space, cb.nc, q0, 0), embed_product(space, cb.nc, q1, 0),
            embed_product(space, cb.c, q0, 0), embed_product(space, cb.c, q1, 0)};
}

} // namespace

StateVector ideal_final_state(const GateConfig& config, const HilbertSpace& space,
                              const StateVector& psi0)
{
    const auto basis = tomography_basis(config, space);
    std::array<cplx, 4> alpha{};
    double total = 0.0;
    for (int j = 0; j < 4; ++j) {
        alpha[j] = overlap(basis[j], psi0);
        total += std::norm(alpha[j]);
    }
    if (std::abs(total - psi0.norm_sq()) > 1e-9)
        throw std::invalid_argument(
            "initial state must lie in the computational subspace with zero photons");

    const Eigen::Matrix2cd U = ideal_unitary(config.delta, config.theta, config.phi2);
    const cplx phase =
        std::polar(1.0, config.xi_effective() - config.xi_prime - 0.5 * config.delta);
    const cplx b0 = phase * (U(0, 0) * alpha[2] + U(0, 1) * alpha[3]);
    const cplx b1 = phase * (U(1, 0) * alpha[2] + U(1, 1) * alpha[3]);

    StateVector out(space);
    for (int i = 0; i < space.dim(); ++i)
        out[i] = alpha[0] * basis[0][i] + alpha[1] * basis[1][i] + b0 * basis[2][i] +
                 b1 * basis[3][i];
    return out;
}

namespace {

void append_segment(Trajectory& into, Trajectory&& seg)
{
    const size_t skip = into.times.empty() ? 0 : 1; // boundary point already recorded
    for (size_t i = skip; i < seg.times.size(); ++i) {
        into.times.push_back(seg.times[i]);
        into.norms.push_back(seg.norms[i]);
    }
    for (size_t i = skip; i < seg.snapshots.size(); ++i)
        into.snapshots.push_back(std::move(seg.snapshots[i]));
    into.steps += seg.steps;
    into.rejected += seg.rejected;
    into.final_state = std::move(seg.final_state);
}

} // namespace

GateRun run_gate(const GateConfig& config, const HilbertSpace& space, const StateVector& psi0,
                 const PropagateOptions& opts)
{
    if (space.n_max() != config.n_max)
        throw std::invalid_argument("run_gate: space does not match config.n_max");
    {
        // the protocol starts from the computational subspace with no photons
        double comp = 0.0;
        for (const auto q1 : {AtomLevel::g0, AtomLevel::g1})
            for (const auto q2 : {AtomLevel::g0, AtomLevel::g1})
                comp += population(psi0, q1, q2, 0);
        if (std::abs(comp - 1.0) > 1e-9)
            throw std::invalid_argument(
                "run_gate: initial state must lie in the computational subspace with |0> photons");
    }

    const PulseSchedule schedule = build_gate_schedule(config);
    const HamiltonianBuilder h(make_spec(space, schedule));

    GateRun run;
    StateVector psi = psi0;
    double t = schedule.t_start();
    for (int step = 1; step <= 3; ++step) {
        const double t_next = step == 3 ? schedule.t_end() : schedule.step_window(step).second;
        PropagateOptions o = opts;
        o.check_norm = (step == 1);
        append_segment(run.traj, propagate(h, psi, t, t_next, o));
        psi.amplitudes() = run.traj.final_state;
        run.step_final[step - 1] = run.traj.final_state;
        t = t_next;
    }
    return run;
}

Eigen::Matrix4cd extract_gate_matrix(const GateConfig& config, const PropagateOptions& opts)
{
    const HilbertSpace space(config.n_max);
    const auto basis = tomography_basis(config, space);

    PropagateOptions o = opts;
    o.store_snapshots = false;

    Eigen::Matrix4cd G;
    for (int j = 0; j < 4; ++j) {
        const GateRun run = run_gate(config, space, basis[j], o);
        StateVector fin = final_state(space, run.traj);
        for (int i = 0; i < 4; ++i)
            G(i, j) = overlap(basis[i], fin);
    }

    // global phase: largest element of the phi_nc block made real positive
    int bi = 0, bj = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (std::abs(G(i, j)) > std::abs(G(bi, bj))) {
                bi = i;
                bj = j;
            }
    if (std::abs(G(bi, bj)) > 0.0)
        G *= std::polar(1.0, -std::arg(G(bi, bj)));
    return G;
}

double unitarity_defect(const Eigen::Matrix4cd& G)
{
    return (G.adjoint() * G - Eigen::Matrix4cd::Identity()).norm();
}

double off_block_leakage(const Eigen::Matrix4cd& G)
{
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j)
            m = std::max({m, std::abs(G(i, j)), std::abs(G(j, i))});
    return m;
}

double average_gate_fidelity(const Eigen::Matrix4cd& G, const Eigen::Matrix4cd& ideal)
{
    return std::abs((G.adjoint() * ideal).trace()) / 4.0;
}

std::vector<GridEntry> default_fidelity_grid()
{
    return {{14.0, 34.0, 4.1}, {14.0, 34.0, 2.05}, {14.0, 34.0, 1.0},
            {14.0, 68.0, 4.1}, {14.0, 68.0, 2.05}, {14.0, 68.0, 1.0}};
}

std::vector<FidelityRecord> fidelity_table(const GateConfig& base,
                                           const std::vector<GridEntry>& grid,
                                           const PropagateOptions& opts)
{
    for (const GridEntry& e : grid)
        if (e.kappa_mhz < 0.0)
            throw std::invalid_argument("fidelity_table: kappa must be non-negative");

    auto run_entry = [&base, &opts](GridEntry e) {
        GateConfig c = base;
        c.omega_max = mhz_to_rad_us(e.omega_mhz);
        c.g1 = c.g2 = mhz_to_rad_us(e.g_mhz);
        c.kappa = mhz_to_rad_us(e.kappa_mhz);
        const HilbertSpace space(c.n_max);

        PropagateOptions o = opts;
        o.store_snapshots = false;

        const double rt = 1.0 / std::sqrt(2.0);
        const QubitVector minus{rt, -rt}, plus{rt, rt};
        const QubitVector targets[2] = {{1.0, 0.0}, {0.0, 1.0}};

        FidelityRecord rec;
        rec.omega_mhz = e.omega_mhz;
        rec.g_mhz = e.g_mhz;
        rec.kappa_mhz = e.kappa_mhz;
        for (int s = 0; s < 2; ++s) {
            for (int ctrl = 0; ctrl < 2; ++ctrl) {
                const StateVector psi0 =
                    embed_product(space, ctrl == 0 ? minus : plus, targets[s], 0);
                const StateVector ideal = ideal_final_state(c, space, psi0);
                const GateRun run = run_gate(c, space, psi0, o);
                const StateVector num = final_state(space, run.traj);
                const double f = std::norm(overlap(ideal, num));
                (ctrl == 0 ? rec.f_minus : rec.f_plus)[s] = f;
            }
        }
        return rec;
    };

    std::vector<std::future<FidelityRecord>> futures;
    futures.reserve(grid.size());
    for (const GridEntry& e : grid)
        futures.push_back(std::async(std::launch::async, run_entry, e));
    std::vector<FidelityRecord> records;
    records.reserve(grid.size());
    for (auto& f : futures)
        records.push_back(f.get());
    return records;
}

void write_fidelity_csv(std::ostream& os, const std::vector<FidelityRecord>& records)
{
    os << "omega_max_mhz,g_mhz,kappa_mhz,F_minus_0,F_minus_1,F_minus_mean,"
          "F_plus_0,F_plus_1,F_plus_mean\n";
    char buf[256];
    for (const FidelityRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6g,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                      r.omega_mhz, r.g_mhz, r.kappa_mhz, r.f_minus[0], r.f_minus[1],
                      r.f_minus_mean(), r.f_plus[0], r.f_plus[1], r.f_plus_mean());
        os << buf;
    }
}

MeasurementDemo measurement_demo(const GateConfig& base, const Eigen::Matrix2cd& M,
                                 const QubitVector& input, const PropagateOptions& opts)
{
    if ((M - M.adjoint()).norm() > 1e-9 ||
        (M * M - Eigen::Matrix2cd::Identity()).norm() > 1e-9 || std::abs(M.trace()) > 1e-9)
        throw std::invalid_argument(
            "measurement_demo: M must be unitary with eigenvalues +1 and -1");
    if (std::abs(input.norm_sq() - 1.0) > 1e-12)
        throw std::invalid_argument("measurement_demo: input must be normalized");

    // M = n.sigma; delta = pi realizes U = -i n.sigma, and xi - xi' = pi
    // turns the phi_c block e^{i(xi-xi')} e^{-i delta/2} U into exactly M.
    GateConfig c = base;
    c.delta = kTwoPi / 2.0;
    c.theta = 0.5 * std::acos(std::clamp(M(0, 0).real(), -1.0, 1.0));
    c.phi2 = std::abs(M(1, 0)) > 1e-12 ? std::arg(M(1, 0)) : 0.0;
    c.chi = kTwoPi / 4.0; // control basis = computational basis
    c.phi1 = 0.0;
    c.phase_corrected = false;
    c.xi = kTwoPi / 2.0;
    c.xi_prime = 0.0;

    const Eigen::Matrix4cd G = extract_gate_matrix(c, opts);

    // {phi_nc, phi_c} = {-|0>, |1>} at chi = pi/2: basis change is diag(-1,-1,1,1)
    Eigen::Matrix4cd V = Eigen::Matrix4cd::Identity();
    V(0, 0) = V(1, 1) = -1.0;
    const Eigen::Matrix4cd Gc = V * G * V.adjoint();

    Eigen::Matrix4cd Hc = Eigen::Matrix4cd::Zero(); // Hadamard on the control
    const double rt = 1.0 / std::sqrt(2.0);
    for (int t = 0; t < 2; ++t) {
        Hc(t, t) = rt;
        Hc(t, 2 + t) = rt;
        Hc(2 + t, t) = rt;
        Hc(2 + t, 2 + t) = -rt;
    }

    MeasurementDemo demo;
    demo.circuit = Hc * Gc * Hc;
    Eigen::Vector4cd in;
    in << input.a0, input.a1, 0.0, 0.0;
    const Eigen::Vector4cd out = demo.circuit * in;
    demo.p0 = std::norm(out(0)) + std::norm(out(1));
    demo.p1 = std::norm(out(2)) + std::norm(out(3));
    demo.post0 = demo.p0 > 1e-14 ? Eigen::Vector2cd(out(0), out(1)).normalized()
                                 : Eigen::Vector2cd(0.0, 0.0);
    demo.post1 = demo.p1 > 1e-14 ? Eigen::Vector2cd(out(2), out(3)).normalized()
                                 : Eigen::Vector2cd(0.0, 0.0);
    auto residual = [&M](const Eigen::Vector2cd& v) {
        if (v.norm() == 0.0)
            return 0.0;
        const cplx lambda = v.adjoint() * (M * v);
        return (M * v - lambda * v).norm();
    };
    demo.eigen_residual0 = residual(demo.post0);
    demo.eigen_residual1 = residual(demo.post1);
    return demo;
}

namespace {

nlohmann::json complex_json(const cplx& v) { return nlohmann::json::array({v.real(), v.imag()}); }

} // namespace

void write_gate_matrix_json(std::ostream& os, const Eigen::Matrix4cd& G)
{
    nlohmann::json j;
    j["basis_order"] = {"phi_nc,0", "phi_nc,1", "phi_c,0", "phi_c,1"};
    j["format"] = "entries are [re, im]";
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < 4; ++k)
            row.push_back(complex_json(G(i, k)));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    os << j.dump(2) << "\n";
}

void write_measurement_json(std::ostream& os, const MeasurementDemo& demo)
{
    nlohmann::json j;
    j["outcome_probabilities"] = {demo.p0, demo.p1};
    j["post_state_0"] = {complex_json(demo.post0(0)), complex_json(demo.post0(1))};
    j["post_state_1"] = {complex_json(demo.post1(0)), complex_json(demo.post1(1))};
    j["eigen_residuals"] = {demo.eigen_residual0, demo.eigen_residual1};
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < 4; ++k)
            row.push_back(complex_json(demo.circuit(i, k)));
        rows.push_back(row);
    }
    j["circuit_matrix"] = rows;
    j["circuit_basis_order"] = {"00", "01", "10", "11"};
    os << j.dump(2) << "\n";
}

} // namespace tripodgate
