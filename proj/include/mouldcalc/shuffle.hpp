#ifndef MOULDCALC_SHUFFLE_HPP
#define MOULDCALC_SHUFFLE_HPP

#include <optional>
#include <utility>

#include "mouldcalc/mould.hpp"

namespace mouldcalc {

// Number of ways the word n arises by interdigitating a and b while keeping
// their internal orders; dynamic programming over prefixes. Zero whenever
// r(a)+r(b) ≠ r(n).
long long shuffle_coefficient(const Word& a, const Word& b, const Word& n);

// Δ(M)^{a,b} = Σ_n sh(a,b;n) M^n, evaluated by enumerating the merges of a
// and b. Only meaningful for r(a)+r(b) ≤ max_len of M.
Scalar delta_coproduct(const Mould& m, const Word& a, const Word& b);

struct ShuffleCheck {
    bool ok = true;
    // First violating pair (a̅, b̅) in canonical order, when !ok. The pair
    // (∅, ∅) flags a wrong value on the empty word.
    std::optional<std::pair<Word, Word>> violation;
};

// M^∅ = 0 and Σ sh(a,b;n) M^n = 0 for all nonempty a,b with r(a)+r(b) ≤ upto.
ShuffleCheck is_alternal(const Mould& m, int upto);
ShuffleCheck is_alternal(const Mould& m); // upto = max_len

// S^∅ = 1 and Σ sh(a,b;n) S^n = S^a S^b within range.
ShuffleCheck is_symmetral(const Mould& s, int upto);
ShuffleCheck is_symmetral(const Mould& s);

// J_λ(M) = [e^{−M} × ∇₁(e^{M})]_{λ=0}; requires M alternal, and the output
// is checked to be alternal and λ-resonant.
Mould gauge_generator(const Mould& m);

} // namespace mouldcalc

#endif
