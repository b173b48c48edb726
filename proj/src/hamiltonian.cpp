#include "tripodgate/hamiltonian.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "tripodgate/kernels.hpp"

namespace tripodgate {

void HamiltonianSpec::validate() const
{
    if (space == nullptr || schedule == nullptr)
        throw std::invalid_argument("HamiltonianSpec: space and schedule required");
    if (g1 <= 0.0 || g2 <= 0.0)
        throw std::invalid_argument("HamiltonianSpec: g1, g2 must be positive");
    if (kappa < 0.0 || gamma < 0.0)
        throw std::invalid_argument("HamiltonianSpec: decay rates must be non-negative");
}

HamiltonianSpec make_spec(const HilbertSpace& space, const PulseSchedule& schedule)
{
    const GateConfig& c = schedule.config();
    HamiltonianSpec s;
    s.space = &space;
    s.schedule = &schedule;
    s.g1 = c.g1;
    s.g2 = c.g2;
    s.kappa = c.kappa;
    s.gamma = c.gamma;
    return s;
}

namespace {

void add_hc(std::vector<cplx>& M, int dim, int row, int col, cplx v)
{
    M[static_cast<std::ptrdiff_t>(row) * dim + col] += v;
    M[static_cast<std::ptrdiff_t>(col) * dim + row] += std::conj(v);
}

} // namespace

HamiltonianBuilder::HamiltonianBuilder(const HamiltonianSpec& spec) : spec_(spec)
{
    spec_.validate();
    const HilbertSpace& sp = *spec_.space;
    dim_ = sp.dim();
    const std::ptrdiff_t sz = static_cast<std::ptrdiff_t>(dim_) * dim_;
    static_h_.assign(sz, cplx{});
    scratch_.assign(sz, cplx{});

    // cavity couplings g_k a |e^(k)><a^(k)| + h.c.; the photon factor sqrt(n)
    // comes from a|n> = sqrt(n)|n-1>
    for (int n = 1; n <= sp.n_max(); ++n) {
        const double rt = std::sqrt(static_cast<double>(n));
        for (int j = 0; j < kLevelsAtom2; ++j) {
            const auto a2 = static_cast<AtomLevel>(j);
            add_hc(static_h_, dim_, sp.index(AtomLevel::exc, a2, n - 1),
                   sp.index(AtomLevel::anc, a2, n), spec_.g1 * rt);
        }
        for (int i = 0; i < kLevelsAtom1; ++i) {
            const auto a1 = static_cast<AtomLevel>(i);
            add_hc(static_h_, dim_, sp.index(a1, AtomLevel::exc, n - 1),
                   sp.index(a1, AtomLevel::anc, n), spec_.g2 * rt);
        }
    }

    // one dense term per schedule entry; all its legs share the envelope
    for (const ScheduleEntry& e : spec_.schedule->entries()) {
        std::vector<cplx> T(sz, cplx{});
        for (const ScheduleEntry::Leg& leg : e.legs) {
            const cplx coef = leg.weight * std::polar(1.0, -leg.phase);
            for (int n = 0; n <= sp.n_max(); ++n) {
                if (leg.atom == 1) {
                    for (int j = 0; j < kLevelsAtom2; ++j) {
                        const auto a2 = static_cast<AtomLevel>(j);
                        add_hc(T, dim_, sp.index(leg.upper, a2, n), sp.index(leg.lower, a2, n),
                               coef);
                    }
                } else {
                    for (int i = 0; i < kLevelsAtom1; ++i) {
                        const auto a1 = static_cast<AtomLevel>(i);
                        add_hc(T, dim_, sp.index(a1, leg.upper, n), sp.index(a1, leg.lower, n),
                               coef);
                    }
                }
            }
        }
        terms_h_.push_back(std::move(T));
    }

    // generator: G(t) = -i H(t) - (kappa/2) N_cav - (gamma/2) P_exc
    const cplx mi(0.0, -1.0);
    static_g_.assign(sz, cplx{});
    for (std::ptrdiff_t k = 0; k < sz; ++k)
        static_g_[k] = mi * static_h_[k];
    for (int idx = 0; idx < dim_; ++idx) {
        const auto lbl = sp.label(idx);
        double d = 0.5 * spec_.kappa * lbl.n;
        if (is_excited(lbl.a1) || is_excited(lbl.a2))
            d += 0.5 * spec_.gamma;
        static_g_[static_cast<std::ptrdiff_t>(idx) * dim_ + idx] -= d;
    }
    terms_g_.reserve(terms_h_.size());
    for (const auto& T : terms_h_) {
        std::vector<cplx> G(sz);
        for (std::ptrdiff_t k = 0; k < sz; ++k)
            G[k] = mi * T[k];
        terms_g_.push_back(std::move(G));
    }
}

double HamiltonianBuilder::t_min() const { return spec_.schedule->t_start(); }
double HamiltonianBuilder::t_max() const { return spec_.schedule->t_end(); }

void HamiltonianBuilder::accumulate(double t, const std::vector<cplx>& stat,
                                    const std::vector<std::vector<cplx>>& terms,
                                    std::vector<cplx>& out) const
{
    const auto& entries = spec_.schedule->entries();
    double coeffs[16];
    const cplx* ptrs[16];
    int active = 0;
    for (size_t k = 0; k < entries.size(); ++k) {
        const double f = entries[k].env.value(t);
        if (f == 0.0)
            continue;
        coeffs[active] = f;
        ptrs[active] = terms[k].data();
        ++active;
    }
    out.resize(stat.size());
    kernels::scaled_sum(out.data(), stat.data(), coeffs, ptrs, active,
                        static_cast<int>(stat.size()));
}

void HamiltonianBuilder::assemble(double t, std::vector<cplx>& H) const
{
    accumulate(t, static_h_, terms_h_, H);
}

void HamiltonianBuilder::effective(double t, std::vector<cplx>& H) const
{
    assemble(t, H);
    const HilbertSpace& sp = *spec_.space;
    const cplx mi(0.0, -1.0);
    for (int idx = 0; idx < dim_; ++idx) {
        const auto lbl = sp.label(idx);
        double d = 0.5 * spec_.kappa * lbl.n;
        if (is_excited(lbl.a1) || is_excited(lbl.a2))
            d += 0.5 * spec_.gamma;
        H[static_cast<std::ptrdiff_t>(idx) * dim_ + idx] += mi * d;
    }
}

void HamiltonianBuilder::generator(double t, std::vector<cplx>& G) const
{
    accumulate(t, static_g_, terms_g_, G);
}

void HamiltonianBuilder::apply(double t, const cplx* x, cplx* y) const
{
    accumulate(t, static_h_, terms_h_, scratch_);
    kernels::matvec(scratch_.data(), x, y, dim_);
}

void write_matrix_csv(std::ostream& os, const HilbertSpace& space, const std::vector<cplx>& H)
{
    const int dim = space.dim();
    os << "# basis order: flat index = (atom1*4 + atom2)*(n_max+1) + n, labels ";
    for (int i = 0; i < dim; ++i) {
        const auto l = space.label(i);
        os << level_label(l.a1) << level_label(l.a2) << "|" << l.n
           << (i + 1 < dim ? " " : "\n");
    }
    char buf[64];
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            const cplx v = H[static_cast<std::ptrdiff_t>(r) * dim + c];
            std::snprintf(buf, sizeof buf, "%.12g%+.12gi", v.real(), v.imag());
            os << buf << (c + 1 < dim ? "," : "\n");
        }
    }
}

} // namespace tripodgate
