#pragma once

#include <complex>
#include <vector>

#include "tripodgate/levels.hpp"

namespace tripodgate {

using cplx = std::complex<double>;

// Tensor basis atom1 ⊗ atom2 ⊗ cavity Fock states |s1 s2⟩|n⟩, flattened
// row-major with atom 1 outermost and the photon number innermost, so file
// output ordering is deterministic. n_max must be at least 2: the dark state
// spanning the |1 s2⟩|0⟩ pair contains a two-photon component |aa⟩|2⟩.
class HilbertSpace {
public:
    explicit HilbertSpace(int n_max);

    int n_max() const { return n_max_; }
    int dim() const { return dim_; }

    struct BasisLabel {
        AtomLevel a1;
        AtomLevel a2;
        int n;
    };

    int index(AtomLevel a1, AtomLevel a2, int n) const;
    BasisLabel label(int index) const;

private:
    int n_max_;
    int dim_;
};

// Complex amplitude vector over a HilbertSpace basis. The space is held by
// pointer and must outlive the state (spaces are immutable after
// construction and shared freely).
class StateVector {
public:
    explicit StateVector(const HilbertSpace& space)
        : space_(&space), amp_(space.dim(), cplx(0.0, 0.0))
    {
    }

    const HilbertSpace& space() const { return *space_; }
    int dim() const { return static_cast<int>(amp_.size()); }

    cplx& operator[](int i) { return amp_[i]; }
    const cplx& operator[](int i) const { return amp_[i]; }
    cplx* data() { return amp_.data(); }
    const cplx* data() const { return amp_.data(); }
    std::vector<cplx>& amplitudes() { return amp_; }
    const std::vector<cplx>& amplitudes() const { return amp_; }

    double norm() const;
    double norm_sq() const;
    void normalize();

private:
    const HilbertSpace* space_;
    std::vector<cplx> amp_;
};

// Two complex amplitudes on {|0⟩, |1⟩} of one atom.
struct QubitVector {
    cplx a0{0.0, 0.0};
    cplx a1{0.0, 0.0};

    double norm_sq() const { return std::norm(a0) + std::norm(a1); }
    QubitVector normalized() const;
};

inline cplx qubit_overlap(const QubitVector& a, const QubitVector& b)
{
    return std::conj(a.a0) * b.a0 + std::conj(a.a1) * b.a1;
}

// One tensor factor of a product state: either a bare level or a
// superposition over the computational pair {|0⟩, |1⟩}.
class AtomFactor {
public:
    AtomFactor(AtomLevel l) : level_(l), is_level_(true) {}      // NOLINT(google-explicit-constructor)
    AtomFactor(const QubitVector& q) : qubit_(q), is_level_(false) {} // NOLINT(google-explicit-constructor)

    bool is_level() const { return is_level_; }
    AtomLevel level() const { return level_; }
    const QubitVector& qubit() const { return qubit_; }
    double norm_sq() const { return is_level_ ? 1.0 : qubit_.norm_sq(); }

private:
    AtomLevel level_{AtomLevel::g0};
    QubitVector qubit_{};
    bool is_level_;
};

HilbertSpace build_space(int n_max);

StateVector basis_state(const HilbertSpace& space, AtomLevel a1, AtomLevel a2, int n);

// Product state q1 ⊗ q2 ⊗ |n⟩. Inputs must be normalized (1e-12).
StateVector embed_product(const HilbertSpace& space, const AtomFactor& q1,
                          const AtomFactor& q2, int n);

cplx overlap(const StateVector& a, const StateVector& b);
double population(const StateVector& psi, AtomLevel a1, AtomLevel a2, int n);

} // namespace tripodgate
