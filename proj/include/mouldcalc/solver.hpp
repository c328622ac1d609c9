#ifndef MOULDCALC_SOLVER_HPP
#define MOULDCALC_SOLVER_HPP

#include <string>
#include <vector>

#include "mouldcalc/shuffle.hpp"

namespace mouldcalc {

// Solution bundle of the mould equation
//   ∇_λ F = 0,   ∇_λ S = I×S − S×F,
// with S symmetral, F alternal λ-resonant, G = log S, N = inv(S)×∇₁S and
// gauge generator N_{λ=0} = A.
struct MouldSolution {
    AlphabetPtr alphabet;
    int max_len = 0;
    Mould F, S, G, N, gauge;
};

// The length induction computing (S,F,N) for a gauge generator A (alternal,
// λ-resonant, checked), then G = log S. A's alphabet must match.
MouldSolution solve(const AlphabetPtr& alphabet, const Mould& gauge, int max_len);
MouldSolution solve_zero_gauge(const AlphabetPtr& alphabet, int max_len);

struct ClosedFormReport {
    // Words where the product formula applies but the solver value differs;
    // empty on a correct solver.
    std::vector<std::pair<Word, std::string>> mismatches;
    long long words_checked = 0;
    long long words_skipped = 0;
    bool ok() const { return mismatches.empty(); }
};

// Checks the explicit product formulas: on words with nonvanishing suffix
// sums, S = 1/(λ(n1..nr)·λ(n2..nr)···λ(nr)) and F vanishes on all suffixes;
// on resonant words with nonvanishing strict-suffix sums,
// F = 1/(λ(nr)·(λ(nr)+λ(n_{r−1}))···(λ(nr)+...+λ(n2))).
ClosedFormReport closed_form_check(const MouldSolution& sol);

// Right action of the gauge group: K symmetral and λ-resonant maps
// (F,S) to (inv(K)×F×K, S×K); the stored gauge becomes
// inv(K)×J_λ(log S)×K + inv(K)×∇₁K.
MouldSolution gauge_transform(const MouldSolution& sol, const Mould& k);

// Unique K with K^∅ = 1 and ∇₁K = K×A; λ-resonant and symmetral (checked).
Mould gauge_from_generator(const Mould& a, int max_len);

// The unique gauge choice with G_{λ=0} = 0, reached by the fixed-point
// iteration J ← J − [log(e^G × e^J)]_{λ=0}.
MouldSolution normalize_zero_resonant(const MouldSolution& sol);

struct SolutionReport {
    struct Item {
        std::string name;
        bool ok;
        std::string detail;
    };
    std::vector<Item> items;
    bool all_ok() const {
        for (const auto& it : items)
            if (!it.ok) return false;
        return true;
    }
};

// Recomputes both sides of the mould equation and the gauge generator with
// words-moulds primitives only and reports exact residuals; alternality and
// symmetrality are re-checked as well.
SolutionReport verify_solution(const MouldSolution& sol);

} // namespace mouldcalc

#endif
