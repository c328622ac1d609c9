#ifndef MOULDCALC_ALPHABET_HPP
#define MOULDCALC_ALPHABET_HPP

#include <memory>
#include <optional>
#include <vector>

#include "mouldcalc/word.hpp"

namespace mouldcalc {

// A finite alphabet together with its eigenvalue map λ: N → k.
//
// Two realizations of λ are supported:
//   - an explicit table of Scalar values, one per letter (the general map of
//     the theory; used when letters are eigenvalues themselves or opaque);
//   - a FrequencyModel, with λ(n) = i·⟨q·n, Ω⟩ on integer-vector letters.
// Letters are stored sorted (lexicographically) and referred to by index.
class Alphabet {
public:
    static std::shared_ptr<const Alphabet> with_table(std::vector<Letter> letters,
                                                      std::vector<Scalar> eigenvalues);
    static std::shared_ptr<const Alphabet> with_model(std::vector<Letter> letters,
                                                      FrequencyModel model);
    static std::shared_ptr<const Alphabet> empty();

    int size() const { return static_cast<int>(letters_.size()); }
    const Letter& letter(LetterId id) const { return letters_.at(id); }
    const std::vector<Letter>& letters() const { return letters_; }

    const Scalar& lambda(LetterId id) const { return lambda_.at(id); }
    Scalar lambda(const Word& w) const {
        Scalar acc;
        for (LetterId id : w) acc += lambda_.at(id);
        return acc;
    }

    std::optional<LetterId> find(const Letter& l) const;
    LetterId require(const Letter& l) const;

    // The letter with eigenvalue -λ(id), when present: for integer-vector
    // letters the negated vector, otherwise a table lookup by value.
    std::optional<LetterId> negation(LetterId id) const;

    bool has_model() const { return model_.has_value(); }
    const FrequencyModel& model() const;

    // Word-sum resonance. For model alphabets this checks q·(n_1+...+n_r)=0
    // within the range bound; for tables it checks λ(w) == 0.
    bool word_resonant(const Word& w) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.letters_ == b.letters_;
    }

private:
    Alphabet() = default;

    std::vector<Letter> letters_; // sorted, unique
    std::vector<Scalar> lambda_;  // cached eigenvalues, one per letter
    std::optional<FrequencyModel> model_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

// Throws AlphabetMismatch unless both alphabets have the same letters.
void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

} // namespace mouldcalc

#endif
