#ifndef MOULDCALC_ORACLE_HPP
#define MOULDCALC_ORACLE_HPP

#include "mouldcalc/engines/hamiltonian.hpp"
#include "mouldcalc/engines/matrix_op.hpp"

// Deliberately slow, simple verifiers for the test suite and `verify --deep`.
// These never share an algorithm with the main path they check.
namespace mouldcalc::oracle {

// Literal enumeration of the permutation set defining the shuffling
// coefficient; words of combined length ≤ 8 only.
long long shuffle_by_permutations(const Word& a, const Word& b, const Word& n);

// Order-by-order homological-equation normalization (classical Lie series).
// Input: ε-graded Hamiltonian perturbation of the oscillator with frequency
// vector ω; returns the normalized perturbation through ε^{order−1}.
// Throws ResonantAmbiguity when a reachable nonzero mode is resonant.
engines::PolyHamiltonian deprit_birkhoff(const std::vector<Rational>& omega,
                                         const engines::PolyHamiltonian& b, int order);

// Textbook perturbation series for X0 = diag(energies) with simple spectrum
// and perturbation B = Σ ε^p V_p: diagonal corrections per order 1..upto
// (upto ≤ 3, dimension ≤ 6).
std::vector<std::vector<Scalar>> rayleigh_schrodinger(const std::vector<Scalar>& energies,
                                                      const engines::MatrixOperator& b,
                                                      int upto);

// e^{ad_Y} X recomputed by raw ad-iteration in Horner form (an evaluation
// order different from the library's exp_ad).
template <LieElement E>
E direct_conjugacy(const E& y, const E& x, int truncation) {
    if (order_of(y) < 1)
        throw OrderViolation("conjugacy generator must have order >= 1");
    E acc = x;
    for (int j = truncation - 1; j >= 1; --j) {
        acc = x + truncated(bracket(y, acc), truncation) * Scalar(Rational(1, j));
    }
    return truncated(acc, truncation);
}

} // namespace mouldcalc::oracle

#endif
