#ifndef MOULDCALC_TEST_SUPPORT_HPP
#define MOULDCALC_TEST_SUPPORT_HPP

#include <random>

#include "mouldcalc/shuffle.hpp"

// Shared generators for the randomized (property-style) tests. Everything is
// seeded explicitly so runs are reproducible.
namespace mouldcalc::testing {

inline constexpr unsigned kDefaultSeed = 20240801u;

using Rng = std::mt19937_64;

inline Scalar random_scalar(Rng& rng, int span = 6) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, span);
    return Scalar(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
}

inline Scalar random_nonzero_scalar(Rng& rng, int span = 6) {
    for (;;) {
        Scalar s = random_scalar(rng, span);
        if (!s.is_zero()) return s;
    }
}

inline Word random_word(Rng& rng, int nletters, int len) {
    std::uniform_int_distribution<int> pick(0, nletters - 1);
    Word w(len);
    for (auto& id : w) id = static_cast<LetterId>(pick(rng));
    return w;
}

// Sparse random mould with entries up to max_len.
inline Mould random_mould(Rng& rng, const AlphabetPtr& alphabet, int max_len,
                          int per_length = 3) {
    Mould m(alphabet, max_len);
    if (alphabet->size() == 0) return m;
    std::uniform_int_distribution<int> pick(0, alphabet->size() - 1);
    for (int r = 1; r <= max_len; ++r)
        for (int t = 0; t < per_length; ++t) m.set(random_word(rng, alphabet->size(), r),
                                                   random_scalar(rng));
    return m;
}

// Random alternal moulds: span of iterated mould brackets of the one-letter
// moulds (alternality is closed under brackets and linear combinations).
inline Mould random_alternal(Rng& rng, const AlphabetPtr& alphabet, int max_len,
                             int generators = 6) {
    Mould acc(alphabet, max_len);
    if (alphabet->size() == 0) return acc;
    std::uniform_int_distribution<int> pick(0, alphabet->size() - 1);
    std::uniform_int_distribution<int> depth_dist(1, std::max(1, max_len));
    for (int g = 0; g < generators; ++g) {
        int depth = depth_dist(rng);
        Mould cur(alphabet, max_len);
        cur.set({static_cast<LetterId>(pick(rng))}, Scalar(1));
        for (int d = 1; d < depth; ++d) {
            Mould next(alphabet, max_len);
            next.set({static_cast<LetterId>(pick(rng))}, Scalar(1));
            cur = mould_bracket(cur, next);
        }
        acc = mould_add(acc, mould_scale(cur, random_scalar(rng)));
    }
    return acc;
}

inline Mould random_symmetral(Rng& rng, const AlphabetPtr& alphabet, int max_len) {
    return mould_exp(random_alternal(rng, alphabet, max_len));
}

inline Mould random_resonant_alternal(Rng& rng, const AlphabetPtr& alphabet, int max_len) {
    return resonant_part(random_alternal(rng, alphabet, max_len));
}

// Alphabet over opaque letters 0..n−1 with the given eigenvalue table.
inline AlphabetPtr table_alphabet(const std::vector<Scalar>& eigenvalues) {
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        letters.push_back({static_cast<std::int64_t>(i)});
    return Alphabet::with_table(std::move(letters), eigenvalues);
}

} // namespace mouldcalc::testing

#endif
