#pragma once

#include <memory>
#include <vector>

#include "tripodgate/hilbert.hpp"
#include "tripodgate/pulses.hpp"

namespace tripodgate {

struct HamiltonianSpec {
    const HilbertSpace* space = nullptr;
    const PulseSchedule* schedule = nullptr;
    double g1 = 0.0;
    double g2 = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;

    void validate() const;
};

HamiltonianSpec make_spec(const HilbertSpace& space, const PulseSchedule& schedule);

// RWA interaction Hamiltonian of the two tripod atoms coupled to one cavity
// mode, decomposed as H(t) = H_static + sum_k f_k(t) T_k with the envelopes
// f_k(t) >= 0 from the schedule and constant dense term matrices T_k (laser
// phases and polarization weights are folded into the T_k):
//
//   H = Omega_1^(1) e^{-i phi_1^(1)} |e^(1)><1^(1)| + g^(1) a |e^(1)><a^(1)|
//     + Omega_0^(2) e^{-i phi_0^(2)} |e^(2)><0^(2)|
//     + Omega_1^(2) e^{-i phi_1^(2)} |e^(2)><1^(2)| + g^(2) a |e^(2)><a^(2)|
//     + Omega_a(sti) e^{-i xi} |e2^(1)><a^(1)|
//     + Omega_0(sti) |e2^(1)><0^(1)| + Omega_1(sti) e^{-i phi^(1)} |e2^(1)><1^(1)|
//     + h.c.
//
// e2 has no cavity coupling. The non-Hermitian extension adds
// -i(kappa/2) N_cav - i(gamma/2) P_exc where N_cav is the photon-number
// operator and P_exc projects onto states with an excited (e or e2) atom.
class HamiltonianBuilder {
public:
    explicit HamiltonianBuilder(const HamiltonianSpec& spec);

    int dim() const { return dim_; }
    const HamiltonianSpec& spec() const { return spec_; }
    double t_min() const;
    double t_max() const;

    // Hermitian H(t) (kappa and gamma excluded).
    void assemble(double t, std::vector<cplx>& H) const;
    // H_eff(t) = H(t) - i(kappa/2) N_cav - i(gamma/2) P_exc.
    void effective(double t, std::vector<cplx>& H) const;
    // G(t) = -i H_eff(t), the generator of d psi/dt = G psi.
    void generator(double t, std::vector<cplx>& G) const;

    // y = H(t) x without materializing H (assembles into a scratch buffer).
    void apply(double t, const cplx* x, cplx* y) const;

private:
    void accumulate(double t, const std::vector<cplx>& stat,
                    const std::vector<std::vector<cplx>>& terms, std::vector<cplx>& out) const;

    HamiltonianSpec spec_;
    int dim_;
    // Hermitian parts
    std::vector<cplx> static_h_;                 // cavity couplings
    std::vector<std::vector<cplx>> terms_h_;     // per schedule entry
    // Generator parts: -i * (above), with decay folded into the static part
    std::vector<cplx> static_g_;
    std::vector<std::vector<cplx>> terms_g_;
    mutable std::vector<cplx> scratch_;
};

// Row-major complex CSV dump for debugging, with the basis order documented
// in the header line.
void write_matrix_csv(std::ostream& os, const HilbertSpace& space, const std::vector<cplx>& H);

} // namespace tripodgate
