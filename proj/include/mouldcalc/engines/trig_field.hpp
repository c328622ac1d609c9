#ifndef MOULDCALC_ENGINES_TRIG_FIELD_HPP
#define MOULDCALC_ENGINES_TRIG_FIELD_HPP

#include "mouldcalc/engines/vector_field.hpp" // MultiIndex
#include "mouldcalc/lie.hpp"

namespace mouldcalc::engines {

// Slow-fast engine: ε-formal vector fields (or Hamiltonians) on T^d × R^N
// whose coefficients are trigonometric polynomials e^{i⟨n,φ⟩} times
// polynomials in the slow variables I.
//
// comp = −1 stores a Hamiltonian function; comp ∈ [0,d) a ∂_{φ_j} component;
// comp ∈ [d, d+N) a ∂_{I_k} component. Filtration is the ε-order.
class TrigPoly {
public:
    struct Key {
        std::int32_t comp = -1;
        IntVec n;         // Fourier mode
        MultiIndex alpha; // powers of I
        std::int32_t eps = 0;
        auto operator<=>(const Key&) const = default;
    };

    TrigPoly() = default;
    TrigPoly(int fast, int slow, bool hamiltonian)
        : d_(fast), nslow_(slow), hamiltonian_(hamiltonian) {}

    int fast_dims() const { return d_; }
    int slow_dims() const { return nslow_; }
    bool hamiltonian() const { return hamiltonian_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Scalar>& terms() const { return terms_; }

    void add_term(int comp, IntVec n, MultiIndex alpha, int eps, const Scalar& c);

    friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const TrigPoly& a, const TrigPoly& b) { return !(a == b); }

    TrigPoly operator-() const;
    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;
    TrigPoly operator*(const Scalar& c) const;

private:
    int d_ = 0, nslow_ = 0;
    bool hamiltonian_ = false;
    std::map<Key, Scalar> terms_;
};

// Vector-field commutator, or the Poisson bracket
// {f,g} = Σ_j (∂_{I_j} f ∂_{φ_j} g − ∂_{φ_j} f ∂_{I_j} g) for Σ dI_j ∧ dφ_j.
TrigPoly bracket(const TrigPoly& a, const TrigPoly& b);
int order_of(const TrigPoly& a);
TrigPoly truncated(const TrigPoly& a, int m);

// Conjugation: mode n coefficients map to conjugates at −n.
TrigPoly involution(const TrigPoly& a);
bool is_real(const TrigPoly& a);

// X0 = Σ ω_j ∂_{φ_j}, or ⟨ω,I⟩ in the Hamiltonian flavor.
TrigPoly fast_rotation(const std::vector<Rational>& omega, int nslow, bool hamiltonian);

struct AveragingProblem {
    HomogeneousProblem<TrigPoly> problem;
    std::vector<Rational> omega;
};

// Groups by Fourier mode; λ(n) = i⟨n,ω⟩. Perturbation must have ε-order ≥ 1.
AveragingProblem averaging_decompose(const std::vector<Rational>& omega, const TrigPoly& b,
                                     int order, bool real);
AveragingProblem averaging_decompose(const FrequencyModel& model, const TrigPoly& b, int order,
                                     bool real);

// Fourier modes present in an element (for resonance-lattice scans).
std::vector<IntVec> element_modes(const TrigPoly& x);
// True when no term with a nonzero Fourier mode survives below ε^upto.
bool phase_free(const TrigPoly& x, int upto);

} // namespace mouldcalc::engines

#endif
