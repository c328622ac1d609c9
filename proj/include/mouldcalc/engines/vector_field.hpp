#ifndef MOULDCALC_ENGINES_VECTOR_FIELD_HPP
#define MOULDCALC_ENGINES_VECTOR_FIELD_HPP

#include "mouldcalc/lie.hpp"

namespace mouldcalc::engines {

using MultiIndex = std::vector<std::int32_t>;

inline int total_degree(const MultiIndex& k) {
    int s = 0;
    for (auto e : k) s += e;
    return s;
}

// Formal vector fields Σ b_{j,k} z^k ∂_{z_j} with no constant terms,
// filtered by ord(z^k ∂_{z_j}) = |k| − 1.
class PolyVectorField {
public:
    using Key = std::pair<std::int32_t, MultiIndex>; // (j, k)

    PolyVectorField() = default;
    explicit PolyVectorField(int nvars) : nvars_(nvars) {}

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Scalar>& terms() const { return terms_; }

    void add_term(int j, MultiIndex k, const Scalar& c);

    friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const PolyVectorField& a, const PolyVectorField& b) {
        return !(a == b);
    }

    PolyVectorField operator-() const;
    PolyVectorField operator+(const PolyVectorField& o) const;
    PolyVectorField operator-(const PolyVectorField& o) const;
    PolyVectorField operator*(const Scalar& c) const;

private:
    int nvars_ = 0;
    std::map<Key, Scalar> terms_;
};

// Commutator of vector fields, [X,Y]_j = Σ_l (X_l ∂_l Y_j − Y_l ∂_l X_j).
PolyVectorField bracket(const PolyVectorField& a, const PolyVectorField& b);
int order_of(const PolyVectorField& a);
PolyVectorField truncated(const PolyVectorField& a, int m);

PolyVectorField diagonal_field(const std::vector<Rational>& omega);

struct PdProblem {
    HomogeneousProblem<PolyVectorField> problem;
    std::vector<Rational> omega; // the effective (surrogate) spectrum vector
};

// Groups the monomials of B by the eigenvalue ⟨k,ω⟩ − ω_j of ad_{X0};
// letters are the distinct eigenvalues in their canonical order. With a
// FrequencyModel the effective rational spectrum qᵀΩ is used, so every
// eigen-identity is exact while the resonance structure is the declared one.
PdProblem pd_decompose(const std::vector<Rational>& omega, const PolyVectorField& b, int order);
PdProblem pd_decompose(const FrequencyModel& model, const PolyVectorField& b, int order);

// Eigenvalues of the monomials of an element, for resonance scans.
std::vector<Scalar> element_modes(const PolyVectorField& x, const std::vector<Rational>& omega);

} // namespace mouldcalc::engines

#endif
