// Command-line front end: configuration ingestion, run orchestration and
// file emission for the adiabatic-passage controlled-unitary gate simulator.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tripodgate/config.hpp"
#include "tripodgate/darkstates.hpp"
#include "tripodgate/gate.hpp"
#include "tripodgate/io.hpp"
#include "tripodgate/kernels.hpp"

namespace fs = std::filesystem;
using namespace tripodgate;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::ofstream open_output(const fs::path& dir, const std::string& name)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path p = dir / name;
    std::ofstream os(p);
    if (!os)
        throw ConfigError("cannot write output file: " + p.string());
    return os;
}

Eigen::Matrix2cd parse_measurement_operator(const std::string& spec)
{
    Eigen::Matrix2cd M;
    if (spec == "sx") {
        M << 0.0, 1.0, 1.0, 0.0;
    } else if (spec == "sy") {
        M << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
    } else if (spec == "sz") {
        M << 1.0, 0.0, 0.0, -1.0;
    } else if (spec.rfind("json:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        if (!in)
            throw ConfigError("cannot open measurement-operator file");
        nlohmann::json j;
        in >> j;
        if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2)
            throw ConfigError("measurement operator JSON must be a 2x2 array of [re,im]");
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                M(r, c) = cplx(j[r][c][0].get<double>(), j[r][c][1].get<double>());
    } else {
        throw ConfigError("-m must be sx, sy, sz or json:<path>");
    }
    return M;
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    double kappa_override_mhz = -1.0;

    RunConfig load() const
    {
        RunConfig rc = load_config(config_path);
        if (kappa_override_mhz >= 0.0)
            rc.gate.kappa = mhz_to_rad_us(kappa_override_mhz);
        return rc;
    }
};

void add_common(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--config", args.config_path, "JSON run configuration")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default .)");
    cmd->add_option("--kappa", args.kappa_override_mhz, "override cavity decay kappa (MHz)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"adiabatic-passage controlled-unitary gate simulator (two tripod atoms, one "
                 "cavity mode)"};
    app.require_subcommand(1);

    CommonArgs sim_args, tomo_args, fid_args, dark_args, meas_args;
    std::string initial_spec = "+0";
    std::string grid_path;
    std::string m_spec = "sx";
    std::string meas_input = "0";
    int dark_samples = 64;

    CLI::App* sim = app.add_subcommand("simulate", "propagate one initial state; emits "
                                                   "trajectory.csv, schedule.csv, summary.json");
    add_common(sim, sim_args);
    sim->add_option("--initial-state", initial_spec,
                    "two-character spec (e.g. +0, -1, 00, c1) or amps:re,im x4");

    CLI::App* tomo = app.add_subcommand("tomography", "extract the 4x4 gate matrix; emits "
                                                      "gate_matrix.json");
    add_common(tomo, tomo_args);

    CLI::App* fid = app.add_subcommand("fidelity-table",
                                       "fidelity vs (Omega_max, g, kappa) grid; emits fidelity.csv");
    add_common(fid, fid_args);
    fid->add_option("--grid", grid_path, "JSON array of [omega_mhz, g_mhz, kappa_mhz] triples "
                                         "(default: the built-in six-triple grid)");

    CLI::App* dark = app.add_subcommand("dark-check", "dark-state residual/coupling report over "
                                                      "the step-2 window; emits dark_check.csv");
    add_common(dark, dark_args);
    dark->add_option("--samples", dark_samples, "number of sample times (default 64)");

    CLI::App* meas = app.add_subcommand("demo-measure", "projective-measurement circuit demo; "
                                                        "emits measurement.json");
    add_common(meas, meas_args);
    meas->add_option("-m,--measurement", m_spec, "sx|sy|sz|json:<path>");
    meas->add_option("--input", meas_input, "target-qubit input: 0, 1, + or -");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) {
            const RunConfig rc = sim_args.load();
            const HilbertSpace space(rc.gate.n_max);
            const StateVector psi0 = parse_initial_state(initial_spec, space, rc.gate);
            const StateVector ideal = ideal_final_state(rc.gate, space, psi0);
            const GateRun run = run_gate(rc.gate, space, psi0, rc.propagate_options());

            auto sched_os = open_output(sim_args.out_dir, "schedule.csv");
            write_schedule_csv(sched_os, build_gate_schedule(rc.gate), rc.cadence_ns);
            auto traj_os = open_output(sim_args.out_dir, "trajectory.csv");
            write_trajectory_csv(traj_os, space, run.traj, rc.trajectory_states);
            auto sum_os = open_output(sim_args.out_dir, "summary.json");
            write_summary_json(sum_os, space, run.traj, psi0, &ideal);
            std::cout << "simulate: " << run.traj.times.size() << " samples, final norm "
                      << run.traj.norms.back() << " (kernels: "
                      << kernels::impl_name(kernels::active()) << ")\n";
        } else if (tomo->parsed()) {
            const RunConfig rc = tomo_args.load();
            const Eigen::Matrix4cd G = extract_gate_matrix(rc.gate, rc.propagate_options());
            auto os = open_output(tomo_args.out_dir, "gate_matrix.json");
            write_gate_matrix_json(os, G);
            std::cout << "tomography: unitarity defect " << unitarity_defect(G)
                      << ", off-block leakage " << off_block_leakage(G) << "\n";
        } else if (fid->parsed()) {
            const RunConfig rc = fid_args.load();
            std::vector<GridEntry> grid;
            if (grid_path.empty()) {
                grid = default_fidelity_grid();
            } else {
                std::ifstream in(grid_path);
                if (!in)
                    throw ConfigError("cannot open grid file: " + grid_path);
                nlohmann::json j;
                in >> j;
                if (!j.is_array())
                    throw ConfigError("grid must be a JSON array of triples");
                for (const auto& row : j) {
                    if (!row.is_array() || row.size() != 3)
                        throw ConfigError("grid rows must be [omega_mhz, g_mhz, kappa_mhz]");
                    grid.push_back({row[0].get<double>(), row[1].get<double>(),
                                    row[2].get<double>()});
                }
            }
            const auto records = fidelity_table(rc.gate, grid, rc.propagate_options());
            auto os = open_output(fid_args.out_dir, "fidelity.csv");
            write_fidelity_csv(os, records);
            std::cout << "fidelity-table: " << records.size() << " rows\n";
        } else if (dark->parsed()) {
            const RunConfig rc = dark_args.load();
            const HilbertSpace space(rc.gate.n_max);
            const PulseSchedule schedule = build_gate_schedule(rc.gate);
            const HamiltonianBuilder h(make_spec(space, schedule));
            auto os = open_output(dark_args.out_dir, "dark_check.csv");
            write_dark_check_csv(os, h, dark_samples);
            std::cout << "dark-check: " << dark_samples << " samples\n";
        } else if (meas->parsed()) {
            const RunConfig rc = meas_args.load();
            const Eigen::Matrix2cd M = parse_measurement_operator(m_spec);
            QubitVector input{1.0, 0.0};
            if (meas_input.size() == 1) {
                const double rt = 1.0 / std::sqrt(2.0);
                switch (meas_input[0]) {
                case '0': input = {1.0, 0.0}; break;
                case '1': input = {0.0, 1.0}; break;
                case '+': input = {rt, rt}; break;
                case '-': input = {rt, -rt}; break;
                default: throw ConfigError("bad --input");
                }
            } else {
                throw ConfigError("bad --input");
            }
            const MeasurementDemo demo =
                measurement_demo(rc.gate, M, input, rc.propagate_options());
            auto os = open_output(meas_args.out_dir, "measurement.json");
            write_measurement_json(os, demo);
            std::cout << "demo-measure: outcome probabilities " << demo.p0 << " / " << demo.p1
                      << "\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PropagationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
