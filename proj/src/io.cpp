#include "tripodgate/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace tripodgate {

void write_trajectory_csv(std::ostream& os, const HilbertSpace& space, const Trajectory& traj,
                          const std::vector<HilbertSpace::BasisLabel>& selection)
{
    if (traj.snapshots.size() != traj.times.size())
        throw std::invalid_argument("trajectory has no stored snapshots");
    os << "t_ns";
    for (const auto& l : selection) {
        const std::string tag = std::string(level_label(l.a1)) + std::string(level_label(l.a2)) +
                                "_" + std::to_string(l.n);
        os << ",pop_" << tag << ",phase_" << tag;
    }
    os << "\n";
    std::vector<int> idx;
    idx.reserve(selection.size());
    for (const auto& l : selection)
        idx.push_back(space.index(l.a1, l.a2, l.n));
    char buf[64];
    for (size_t k = 0; k < traj.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.6f", us_to_ns(traj.times[k]));
        os << buf;
        for (const int i : idx) {
            const cplx a = traj.snapshots[k][i];
            std::snprintf(buf, sizeof buf, ",%.9e,%.9f", std::norm(a),
                          std::abs(a) > 0.0 ? std::arg(a) : 0.0);
            os << buf;
        }
        os << "\n";
    }
}

void write_summary_json(std::ostream& os, const HilbertSpace& space, const Trajectory& traj,
                        const StateVector& psi0, const StateVector* ideal)
{
    StateVector fin = final_state(space, traj);
    const double norm = fin.norm();
    const cplx ov0 = overlap(psi0, fin);

    nlohmann::json j;
    j["final_norm"] = norm;
    j["norm_loss"] = 1.0 - norm * norm;
    j["overlap_initial"] = {ov0.real(), ov0.imag()};
    j["fidelity_vs_initial"] = std::norm(ov0);
    if (ideal != nullptr) {
        const cplx ovi = overlap(*ideal, fin);
        j["overlap_ideal"] = {ovi.real(), ovi.imag()};
        j["fidelity_vs_ideal"] = std::norm(ovi);
    }
    j["integrator_steps"] = traj.steps;
    j["integrator_rejected_steps"] = traj.rejected;
    j["t_final_ns"] = us_to_ns(traj.times.back());

    nlohmann::json pops = nlohmann::json::object();
    for (int i = 0; i < space.dim(); ++i) {
        const double p = std::norm(fin[i]);
        if (p > 1e-6) {
            const auto l = space.label(i);
            pops[std::string(level_label(l.a1)) + std::string(level_label(l.a2)) + "|" +
                 std::to_string(l.n)] = p;
        }
    }
    j["final_populations_above_1e-6"] = pops;
    os << j.dump(2) << "\n";
}

} // namespace tripodgate
