#ifndef MOULDCALC_FREQUENCY_HPP
#define MOULDCALC_FREQUENCY_HPP

#include <cstdint>
#include <vector>

#include "mouldcalc/scalar.hpp"

namespace mouldcalc {

using IntVec = std::vector<std::int64_t>;

// Resonance-faithful rational surrogate for a frequency vector.
//
// The quotient map q (an e×d integer matrix of full row rank) declares the
// resonance structure: λ(n) = 0 exactly when q·n = 0. The surrogate
// frequencies Ω_j = (2R+1)^{j-1} guarantee ⟨v,Ω⟩ ≠ 0 for every nonzero
// integer v with |v_j| ≤ R (base-(2R+1) digits), so within the range bound R
// the rational model reproduces exactly the declared resonance structure.
class FrequencyModel {
public:
    static FrequencyModel build(std::vector<IntVec> q, std::int64_t range_bound);

    int dim() const { return d_; }
    int rank() const { return static_cast<int>(q_.size()); }
    std::int64_t range_bound() const { return range_bound_; }
    const std::vector<IntVec>& quotient_map() const { return q_; }
    const std::vector<Rational>& surrogate() const { return omega_; }

    // q·n, with the range check |.|_inf <= R.
    IntVec quotient(const IntVec& n) const;

    bool is_resonant(const IntVec& n) const; // q·n == 0

    // <q·n, Ω>; exact, real.
    Rational pairing(const IntVec& n) const;

    // λ(n) = i·<q·n, Ω>; purely imaginary.
    Scalar eigenvalue(const IntVec& n) const;

    // qᵀΩ, the effective rational frequency vector in the mode lattice.
    std::vector<Rational> effective_frequency() const;

    // Smallest range bound that keeps sums of up to max_word_len of the given
    // modes within range: max_word_len × max ‖q·n‖_∞ (at least 1).
    static std::int64_t auto_range_bound(const std::vector<IntVec>& q,
                                         const std::vector<IntVec>& modes, int max_word_len);

private:
    FrequencyModel() = default;

    int d_ = 0;
    std::vector<IntVec> q_; // e rows of length d
    std::int64_t range_bound_ = 0;
    std::vector<Rational> omega_;
};

} // namespace mouldcalc

#endif
