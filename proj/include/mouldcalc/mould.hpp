#ifndef MOULDCALC_MOULD_HPP
#define MOULDCALC_MOULD_HPP

#include <functional>
#include <limits>
#include <map>
#include <set>

#include "mouldcalc/alphabet.hpp"

namespace mouldcalc {

inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

// A length-truncated mould: a sparse map word → Scalar over an alphabet.
// Values on words longer than max_len are unrepresented (unknown); zero
// values are never stored. Entries iterate in canonical word order.
class Mould {
public:
    using EntryMap = std::map<Word, Scalar, WordLess>;

    Mould() : alphabet_(Alphabet::empty()), max_len_(0) {}
    Mould(AlphabetPtr alphabet, int max_len)
        : alphabet_(std::move(alphabet)), max_len_(max_len) {}

    const AlphabetPtr& alphabet() const { return alphabet_; }
    int max_len() const { return max_len_; }
    const EntryMap& entries() const { return entries_; }

    Scalar value(const Word& w) const {
        auto it = entries_.find(w);
        return it == entries_.end() ? Scalar() : it->second;
    }
    Scalar empty_value() const { return value(Word{}); }

    void set(const Word& w, const Scalar& v) {
        if (length(w) > max_len_) return;
        if (v.is_zero())
            entries_.erase(w);
        else
            entries_[w] = v;
    }
    void add(const Word& w, const Scalar& v) {
        if (length(w) > max_len_ || v.is_zero()) return;
        auto [it, inserted] = entries_.emplace(w, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    bool is_zero() const { return entries_.empty(); }

    // min stored word length with nonzero value; kInfiniteOrder if none.
    int order() const {
        return entries_.empty() ? kInfiniteOrder : length(entries_.begin()->first);
    }

    // Equality of sparse maps (zero entries are never stored).
    friend bool operator==(const Mould& a, const Mould& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const Mould& a, const Mould& b) { return !(a == b); }

private:
    AlphabetPtr alphabet_;
    int max_len_;
    EntryMap entries_;
};

// Elementary moulds.
Mould mould_zero(const AlphabetPtr& a, int max_len);
Mould mould_one(const AlphabetPtr& a, int max_len);  // 1 on ∅
Mould mould_letters(const AlphabetPtr& a, int max_len); // I: 1 on each 1-letter word

// Linear structure.
Mould mould_add(const Mould& m, const Mould& n);
Mould mould_sub(const Mould& m, const Mould& n);
Mould mould_neg(const Mould& m);
Mould mould_scale(const Mould& m, const Scalar& c);

// (M×N)^w = Σ_{w=ab} M^a N^b, truncated at min(max_len).
Mould mould_mul(const Mould& m, const Mould& n);
Mould mould_bracket(const Mould& m, const Mould& n); // M×N − N×M

// Multiplicative inverse, by length induction; requires M^∅ ≠ 0.
Mould mould_inverse(const Mould& m);

// exp requires M^∅ = 0, log requires S^∅ = 1.
Mould mould_exp(const Mould& m);
Mould mould_log(const Mould& s);

// (∇_φ M)^w = φ(w)·M^w with φ(w) = Σ φ(letters).
Mould nabla(const Mould& m, const std::function<Scalar(LetterId)>& phi);
Mould nabla_lambda(const Mould& m); // φ = the alphabet's eigenvalue map
Mould nabla_one(const Mould& m);    // φ ≡ 1: entry times word length

// M_{λ=0}: keep words with λ(w) = 0 (via the alphabet's realization).
Mould resonant_part(const Mould& m);
bool is_resonant(const Mould& m);

// Zero out entries with r(w) ≥ cutoff (the paper-style truncation keeps
// lengths < cutoff), resp. entries using letters outside `keep`.
Mould truncate_below(const Mould& m, int cutoff);
Mould restrict_letters(const Mould& m, const std::set<LetterId>& keep);

// φ*: pullback along phi : target alphabet → m's alphabet (id table).
Mould pullback(const Mould& m, const std::vector<LetterId>& phi, const AlphabetPtr& target);

std::string to_string(const Mould& m);

} // namespace mouldcalc

#endif
