#ifndef MOULDCALC_ENGINES_HAMILTONIAN_HPP
#define MOULDCALC_ENGINES_HAMILTONIAN_HPP

#include "mouldcalc/engines/vector_field.hpp" // MultiIndex
#include "mouldcalc/lie.hpp"

namespace mouldcalc::engines {

enum class HamGrading { Degree, Epsilon };

// Formal Hamiltonians in the complex coordinates u = x + iy, v = ix + y
// (the paper-normalized pair rescaled by √2, which keeps every conversion in
// the Gaussian rationals), Poisson bracket 2·Σ(∂_u ∂_v − ∂_v ∂_u).
// Monomials u^k v^l diagonalize ad_{X0}: {X0, u^k v^l} = i⟨k−l,ω⟩ u^k v^l.
class PolyHamiltonian {
public:
    struct Key {
        MultiIndex k, l;
        std::int32_t eps = 0;
        auto operator<=>(const Key&) const = default;
    };

    PolyHamiltonian() = default;
    PolyHamiltonian(int dof, HamGrading grading) : dof_(dof), grading_(grading) {}

    int dof() const { return dof_; }
    HamGrading grading() const { return grading_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Scalar>& terms() const { return terms_; }

    void add_term(MultiIndex k, MultiIndex l, int eps, const Scalar& c);

    friend bool operator==(const PolyHamiltonian& a, const PolyHamiltonian& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const PolyHamiltonian& a, const PolyHamiltonian& b) {
        return !(a == b);
    }

    PolyHamiltonian operator-() const;
    PolyHamiltonian operator+(const PolyHamiltonian& o) const;
    PolyHamiltonian operator-(const PolyHamiltonian& o) const;
    PolyHamiltonian operator*(const Scalar& c) const;

private:
    int dof_ = 0;
    HamGrading grading_ = HamGrading::Degree;
    std::map<Key, Scalar> terms_;
};

PolyHamiltonian bracket(const PolyHamiltonian& a, const PolyHamiltonian& b);
int order_of(const PolyHamiltonian& a);
PolyHamiltonian truncated(const PolyHamiltonian& a, int m);

// The conjugate-linear involution fixing the real Hamiltonians:
// c·u^k v^l ε^p ↦ (−i)^{|k|+|l|}·conj(c)·u^l v^k ε^p.
PolyHamiltonian involution(const PolyHamiltonian& a);
bool is_real(const PolyHamiltonian& a);

// X0 = Σ ω_j/2·(x_j²+y_j²) = −(i/2)·Σ ω_j u_j v_j.
PolyHamiltonian oscillator_hamiltonian(const std::vector<Rational>& omega, HamGrading grading);

// Exact conversion from real coordinates: x^kx y^ky ↦ ((u−iv)/2)^kx ((v−iu)/2)^ky.
PolyHamiltonian from_xy_terms(
    int dof, HamGrading grading,
    const std::vector<std::tuple<MultiIndex, MultiIndex, int, Scalar>>& xy_terms);

struct BirkhoffProblem {
    HomogeneousProblem<PolyHamiltonian> problem;
    std::vector<Rational> omega;
};

// Groups monomials by the difference mode n = k − l ∈ Z^d; λ(n) = i⟨n,ω⟩.
// Degree grading expects series order ≥ 3, epsilon grading ε-order ≥ 1.
// With `real` set the input must satisfy the realness condition C(B) = B.
BirkhoffProblem birkhoff_decompose(const std::vector<Rational>& omega,
                                   const PolyHamiltonian& b, int order, bool real);
BirkhoffProblem birkhoff_decompose(const FrequencyModel& model, const PolyHamiltonian& b,
                                   int order, bool real);

// Difference modes present in an element.
std::vector<IntVec> element_modes(const PolyHamiltonian& x);

} // namespace mouldcalc::engines

#endif
