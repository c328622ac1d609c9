#ifndef MOULDCALC_WORD_HPP
#define MOULDCALC_WORD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mouldcalc/frequency.hpp"

namespace mouldcalc {

// A letter of an alphabet: an integer vector (a mode n ∈ Z^d) or, for
// alphabets indexed by opaque symbols, a single-entry vector holding the
// symbol index. Letters inside one alphabet all share the same dimension.
using Letter = IntVec;

// Words are sequences of indices into an Alphabet; the empty word is {}.
using LetterId = std::int32_t;
using Word = std::vector<LetterId>;

inline int length(const Word& w) { return static_cast<int>(w.size()); }

// Canonical order: by length, then lexicographically. Letter ids are
// assigned in lexicographic letter order, so this matches the spec's
// (length, letters) order.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

inline Word prefix(const Word& w, int len) { return Word(w.begin(), w.begin() + len); }
inline Word suffix(const Word& w, int from) { return Word(w.begin() + from, w.end()); }
// `n̄ : the word without its first letter.
inline Word behead(const Word& w) { return Word(w.begin() + 1, w.end()); }
inline Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

std::string to_string(const Word& w);

} // namespace mouldcalc

#endif
