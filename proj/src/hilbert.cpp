#include "tripodgate/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tripodgate {

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max)
{
    if (n_max < 2)
        throw std::invalid_argument(
            "n_max must be >= 2: the dark state of the |1 s2>|0> pair contains a "
            "two-photon component |aa>|2>, got n_max=" + std::to_string(n_max));
    dim_ = kLevelsAtom1 * kLevelsAtom2 * (n_max_ + 1);
}

int HilbertSpace::index(AtomLevel a1, AtomLevel a2, int n) const
{
    if (!level_valid_for_atom(1, a1))
        throw std::invalid_argument("invalid atom-1 level");
    if (!level_valid_for_atom(2, a2))
        throw std::invalid_argument("invalid atom-2 level (e2 exists only on atom 1)");
    if (n < 0 || n > n_max_)
        throw std::invalid_argument("photon number out of range: n=" + std::to_string(n));
    return (static_cast<int>(a1) * kLevelsAtom2 + static_cast<int>(a2)) * (n_max_ + 1) + n;
}

HilbertSpace::BasisLabel HilbertSpace::label(int index) const
{
    if (index < 0 || index >= dim_)
        throw std::out_of_range("basis index out of range");
    const int per = n_max_ + 1;
    const int n = index % per;
    const int rest = index / per;
    return BasisLabel{static_cast<AtomLevel>(rest / kLevelsAtom2),
                      static_cast<AtomLevel>(rest % kLevelsAtom2), n};
}

double StateVector::norm_sq() const
{
    double s = 0.0;
    for (const cplx& a : amp_)
        s += std::norm(a);
    return s;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

void StateVector::normalize()
{
    const double n = norm();
    if (n == 0.0)
        throw std::domain_error("cannot normalize the zero vector");
    for (cplx& a : amp_)
        a /= n;
}

QubitVector QubitVector::normalized() const
{
    const double n = std::sqrt(norm_sq());
    if (n == 0.0)
        throw std::domain_error("cannot normalize the zero qubit vector");
    return QubitVector{a0 / n, a1 / n};
}

HilbertSpace build_space(int n_max) { return HilbertSpace(n_max); }

StateVector basis_state(const HilbertSpace& space, AtomLevel a1, AtomLevel a2, int n)
{
    StateVector psi(space);
    psi[space.index(a1, a2, n)] = cplx(1.0, 0.0);
    return psi;
}

namespace {

void factor_amplitudes(const AtomFactor& f, int atom, cplx (&amps)[kLevelsAtom1])
{
    for (cplx& a : amps)
        a = cplx(0.0, 0.0);
    if (f.is_level()) {
        if (!level_valid_for_atom(atom, f.level()))
            throw std::invalid_argument("level not valid for this atom slot");
        amps[static_cast<int>(f.level())] = cplx(1.0, 0.0);
    } else {
        amps[static_cast<int>(AtomLevel::g0)] = f.qubit().a0;
        amps[static_cast<int>(AtomLevel::g1)] = f.qubit().a1;
    }
}

} // namespace

StateVector embed_product(const HilbertSpace& space, const AtomFactor& q1,
                          const AtomFactor& q2, int n)
{
    if (std::abs(q1.norm_sq() - 1.0) > 1e-12 || std::abs(q2.norm_sq() - 1.0) > 1e-12)
        throw std::invalid_argument("embed_product requires normalized factors");
    if (n < 0 || n > space.n_max())
        throw std::invalid_argument("photon number out of range");

    cplx a1[kLevelsAtom1];
    cplx a2[kLevelsAtom1];
    factor_amplitudes(q1, 1, a1);
    factor_amplitudes(q2, 2, a2);

    StateVector psi(space);
    for (int i = 0; i < kLevelsAtom1; ++i) {
        if (a1[i] == cplx(0.0, 0.0))
            continue;
        for (int j = 0; j < kLevelsAtom2; ++j) {
            if (a2[j] == cplx(0.0, 0.0))
                continue;
            psi[space.index(static_cast<AtomLevel>(i), static_cast<AtomLevel>(j), n)] =
                a1[i] * a2[j];
        }
    }
    return psi;
}

cplx overlap(const StateVector& a, const StateVector& b)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("overlap: dimension mismatch");
    cplx s(0.0, 0.0);
    for (int i = 0; i < a.dim(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

double population(const StateVector& psi, AtomLevel a1, AtomLevel a2, int n)
{
    return std::norm(psi[psi.space().index(a1, a2, n)]);
}

} // namespace tripodgate
