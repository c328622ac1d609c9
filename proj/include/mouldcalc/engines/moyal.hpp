#ifndef MOULDCALC_ENGINES_MOYAL_HPP
#define MOULDCALC_ENGINES_MOYAL_HPP

#include "mouldcalc/engines/vector_field.hpp" // MultiIndex
#include "mouldcalc/lie.hpp"

namespace mouldcalc::engines {

// Polynomial in ħ with Gaussian-rational coefficients (sparse by power).
using HbarPoly = std::map<int, Scalar>;

HbarPoly hbar_mul(const HbarPoly& a, const HbarPoly& b);
HbarPoly hbar_shift(const HbarPoly& a, int power, const Scalar& factor);

// Weyl symbols: polynomials in (x, ξ) with ħ-polynomial coefficients, per
// ε power. The `quantum` flag selects the bracket: the Moyal bracket
// (1/ħ)·sin(ħD) evaluated on the diagonal, or its ħ=0 limit, the Poisson
// bracket. ħ is a polynomial indeterminate, never a float, so the
// semi-classical limit is substitution.
class MoyalSymbol {
public:
    struct Key {
        MultiIndex x, xi;
        std::int32_t eps = 0;
        auto operator<=>(const Key&) const = default;
    };

    MoyalSymbol() = default;
    MoyalSymbol(int d, bool quantum) : d_(d), quantum_(quantum) {}

    int dims() const { return d_; }
    bool quantum() const { return quantum_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, HbarPoly>& terms() const { return terms_; }

    void add_term(MultiIndex x, MultiIndex xi, int eps, const HbarPoly& c);
    void add_term(MultiIndex x, MultiIndex xi, int eps, const Scalar& c) {
        add_term(std::move(x), std::move(xi), eps, HbarPoly{{0, c}});
    }

    friend bool operator==(const MoyalSymbol& a, const MoyalSymbol& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MoyalSymbol& a, const MoyalSymbol& b) { return !(a == b); }

    MoyalSymbol operator-() const;
    MoyalSymbol operator+(const MoyalSymbol& o) const;
    MoyalSymbol operator-(const MoyalSymbol& o) const;
    MoyalSymbol operator*(const Scalar& c) const;

private:
    int d_ = 0;
    bool quantum_ = false;
    std::map<Key, HbarPoly> terms_;
};

// Moyal bracket of plain symbols: (1/ħ)·sin(ħ(∂_q∂_{p'} − ∂_p∂_{q'}))(f⊗g)
// on the diagonal; exact polynomial in ħ, finite on polynomials.
MoyalSymbol moyal_bracket(const MoyalSymbol& f, const MoyalSymbol& g);
MoyalSymbol poisson_bracket(const MoyalSymbol& f, const MoyalSymbol& g);

// Dispatches on the quantum flag (both operands must agree).
MoyalSymbol bracket(const MoyalSymbol& a, const MoyalSymbol& b);
int order_of(const MoyalSymbol& a);
MoyalSymbol truncated(const MoyalSymbol& a, int m);

MoyalSymbol at_hbar_zero(const MoyalSymbol& a, bool quantum_flag = false);
bool hbar_powers_even(const MoyalSymbol& a);
MoyalSymbol flagged(const MoyalSymbol& a, bool quantum);

// σ0 = Σ (ξ_j² + ω_j² x_j²)/2.
MoyalSymbol oscillator_symbol(const std::vector<Rational>& omega, bool quantum);

struct SymbolProblem {
    HomogeneousProblem<MoyalSymbol> problem;
    std::vector<Rational> omega;
};

// Mode decomposition of a perturbation of σ0: group by n = k−l in the
// complex coordinates u_j = ω_j x_j + iξ_j, v_j = iω_j x_j + ξ_j, converted
// back to (x,ξ) exactly; λ(n) = i⟨n,ω⟩. Identical modes feed both the
// Poisson and the Moyal comoulds.
SymbolProblem symbol_decompose(const std::vector<Rational>& omega, const MoyalSymbol& b,
                               int order, bool quantum);

struct SemiclassicalRow {
    int eps = 0;
    std::string classical;   // Z^cl coefficient table, canonical rendering
    std::string quantum_h0;  // Z^qu at ħ=0
    std::string corrections; // ħ-dependent part of Z^qu
    bool equal = false;
};

struct SemiclassicalReport {
    bool termwise_equal = false;
    bool corrections_even_in_hbar = false;
    bool classical_ok = false; // classical normal form residuals vanish
    bool quantum_ok = false;   // quantum normal form residuals vanish
    std::vector<SemiclassicalRow> rows;
    MoyalSymbol z_classical, z_quantum;
    bool ok() const {
        return termwise_equal && corrections_even_in_hbar && classical_ok && quantum_ok;
    }
};

// Runs the same mould through the Poisson comould and the Moyal comould and
// compares Z^qu|_{ħ=0} with Z^cl termwise in ε up to ε^{order−1}.
SemiclassicalReport semiclassical_compare(const std::vector<Rational>& omega,
                                          const MoyalSymbol& b_classical, int order);

} // namespace mouldcalc::engines

#endif
