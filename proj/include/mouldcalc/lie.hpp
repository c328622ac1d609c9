#ifndef MOULDCALC_LIE_HPP
#define MOULDCALC_LIE_HPP

#include <concepts>

#include "mouldcalc/solver.hpp"

namespace mouldcalc {

// A complete filtered Lie algebra element, truncated semantics. Zero is the
// default-constructed value and has order kInfiniteOrder.
template <typename E>
concept LieElement = std::regular<E> && requires(const E& x, const E& y, const Scalar& c, int m) {
    { x + y } -> std::same_as<E>;
    { x - y } -> std::same_as<E>;
    { -x } -> std::same_as<E>;
    { x * c } -> std::same_as<E>;
    { bracket(x, y) } -> std::same_as<E>;
    { order_of(x) } -> std::same_as<int>;
    { truncated(x, m) } -> std::same_as<E>;
};

// X0 plus homogeneous components B_n (ord ≥ 1, nonzero, eigenvectors of
// ad_{X0}), truncated at filtration order m. The key set is exactly
// N_m = {n : ord(B_n) < m}.
template <LieElement E>
struct HomogeneousProblem {
    E x0;
    AlphabetPtr alphabet;
    std::map<LetterId, E> components;
    int order = 0; // m

    const E& component(LetterId id) const {
        auto it = components.find(id);
        if (it == components.end())
            throw UnknownLetter("letter " + std::to_string(id) + " has no component");
        return it->second;
    }

    E perturbation() const {
        E acc{};
        for (const auto& [id, b] : components) acc = acc + b;
        return acc;
    }

    // [X0, B_n] = λ(n)·B_n for every component, ord(B_n) ≥ 1, N_m as stated.
    void validate() const {
        for (const auto& [id, b] : components) {
            if (b == E{}) throw SchemaError("zero component stored in problem");
            if (order_of(b) < 1)
                throw OrderViolation("component of order < 1 in problem");
            if (order_of(b) >= order)
                throw OrderViolation("component beyond the truncation order");
            E residual = bracket(x0, b) - b * alphabet->lambda(id);
            if (!(residual == E{}))
                throw SchemaError("component is not an eigenvector of ad_X0");
        }
    }
};

template <LieElement E>
struct NormalFormResult {
    E z, y;
    MouldSolution moulds;
    E commutation_residual; // [X0, Z_m], must be exactly zero
    E conjugacy_residual;   // e^{ad_Y}(X0+B) − X0 − Z_m mod L≥m
    bool ok() const { return commutation_residual == E{} && conjugacy_residual == E{}; }
};

// B_[n̄] = [B_{n_r},[...[B_{n_2},B_{n_1}]...]], built right-to-left.
template <LieElement E>
E lie_comould(const HomogeneousProblem<E>& p, const Word& w) {
    if (w.empty()) return E{};
    E acc = p.component(w.front());
    for (std::size_t i = 1; i < w.size(); ++i) acc = bracket(p.component(w[i]), acc);
    return acc;
}

namespace detail {

// Memoized Lie comoulds shared by the contraction loops; B_[w·c] = [B_c, B_[w]].
template <LieElement E>
class ComouldCache {
public:
    explicit ComouldCache(const HomogeneousProblem<E>& p) : p_(p) {}

    const E& get(const Word& w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        E value = w.size() == 1 ? p_.component(w.front())
                                : bracket(p_.component(w.back()), get(prefix(w, length(w) - 1)));
        return cache_.emplace(w, std::move(value)).first->second;
    }

private:
    const HomogeneousProblem<E>& p_;
    std::map<Word, E, WordLess> cache_;
};

} // namespace detail

// Σ (1/r) M^w B_[w] over the stored entries of M.
template <LieElement E>
E contract_lie(const HomogeneousProblem<E>& p, const Mould& m) {
    require_same_alphabet(p.alphabet, m.alphabet());
    detail::ComouldCache<E> cache(p);
    E acc{};
    for (const auto& [w, v] : m.entries()) {
        if (w.empty()) continue;
        acc = acc + cache.get(w) * (v / Scalar(Rational(length(w))));
    }
    return acc;
}

// Σ M^w ad_{B_{n_r}}...ad_{B_{n_1}} applied to x, truncated at ord m; the
// contraction through the algebra of operators on L (no 1/r factor).
template <LieElement E>
E associative_contraction(const HomogeneousProblem<E>& p, const Mould& m, const E& x,
                          int truncation) {
    require_same_alphabet(p.alphabet, m.alphabet());
    E acc = truncated(x * m.empty_value(), truncation);
    std::map<Word, E, WordLess> applied; // T_w(x) by word, built from prefixes
    for (const auto& [w, v] : m.entries()) {
        if (w.empty()) continue;
        // locate the longest computed prefix, then extend
        Word key;
        E cur = x;
        for (LetterId id : w) {
            key.push_back(id);
            auto it = applied.find(key);
            if (it == applied.end())
                it = applied.emplace(key, truncated(bracket(p.component(id), cur), truncation))
                         .first;
            cur = it->second;
        }
        acc = acc + cur * v;
    }
    return truncated(acc, truncation);
}

// e^{ad_Y}(X) = Σ_{k<m} ad_Y^k(X)/k!, the result known mod L≥m.
template <LieElement E>
E exp_ad(const E& y, const E& x, int truncation) {
    if (order_of(y) < 1)
        throw OrderViolation("exp_ad generator must have order >= 1");
    E acc = x;
    E term = x;
    for (int k = 1; k < truncation; ++k) {
        term = bracket(y, term) * Scalar(Rational(1, k));
        term = truncated(term, truncation);
        if (term == E{}) break;
        acc = acc + term;
    }
    return truncated(acc, truncation);
}

// Baker-Campbell-Hausdorff composition mod L≥m, through the mould algebra on
// a two-letter alphabet: C = log(e^{1_b} × e^{1_a}) contracted against
// (B_a, B_b) = (w, y) gives z with e^{ad_z} = e^{ad_w} e^{ad_y} mod m.
template <LieElement E>
E bch(const E& w, const E& y, int truncation) {
    if (order_of(w) < 1 || order_of(y) < 1)
        throw OrderViolation("bch arguments must have order >= 1");
    auto alphabet = Alphabet::with_table({{0}, {1}}, {Scalar(), Scalar()});
    const int L = truncation - 1;
    Mould ea(alphabet, L), eb(alphabet, L);
    ea.set({alphabet->require({0})}, Scalar(1));
    eb.set({alphabet->require({1})}, Scalar(1));
    Mould c = mould_log(mould_mul(mould_exp(eb), mould_exp(ea)));
    HomogeneousProblem<E> p;
    p.x0 = E{};
    p.alphabet = alphabet;
    p.order = truncation;
    if (!(w == E{})) p.components.emplace(alphabet->require({0}), w);
    if (!(y == E{})) p.components.emplace(alphabet->require({1}), y);
    Mould cc = c;
    if (p.components.size() < 2) {
        // degenerate cases: log(e^a) = a etc., keep only stored letters
        std::set<LetterId> keep;
        for (const auto& [id, b] : p.components) keep.insert(id);
        cc = restrict_letters(c, keep);
    }
    return contract_lie(p, cc);
}

// Truncated normalization: runs the mould solver on the problem's alphabet
// to length m−1 and contracts F and G against the Lie comould.
template <LieElement E>
NormalFormResult<E> normal_form(const HomogeneousProblem<E>& p, const Mould& gauge) {
    p.validate();
    const int m = p.order;
    NormalFormResult<E> result;
    result.moulds = solve(p.alphabet, gauge, m - 1);
    result.z = contract_lie(p, result.moulds.F);
    result.y = contract_lie(p, result.moulds.G);
    result.commutation_residual = bracket(p.x0, result.z);
    E x = p.x0 + p.perturbation();
    E conj = (result.y == E{}) ? truncated(x, m) : exp_ad(result.y, x, m);
    result.conjugacy_residual = truncated(conj - p.x0 - result.z, m);
    return result;
}

template <LieElement E>
NormalFormResult<E> normal_form_zero_gauge(const HomogeneousProblem<E>& p) {
    return normal_form(p, mould_zero(p.alphabet, p.order - 1));
}

// Remark-style derived solutions: W in the centralizer of X0 (exactly) gives
// Z̃ = e^{ad_W} Z and Ỹ = BCH(W, Y), verified again mod m.
template <LieElement E>
NormalFormResult<E> tilde_solution(const HomogeneousProblem<E>& p,
                                   const NormalFormResult<E>& result, const E& w) {
    if (!(bracket(p.x0, w) == E{}))
        throw NotResonant("tilde generator does not commute with X0");
    NormalFormResult<E> out = result;
    if (w == E{}) return out;
    if (order_of(w) < 1) throw OrderViolation("tilde generator must have order >= 1");
    const int m = p.order;
    out.z = exp_ad(w, result.z, m);
    out.y = (result.y == E{}) ? truncated(w, m) : bch(w, result.y, m);
    out.commutation_residual = bracket(p.x0, out.z);
    E x = p.x0 + p.perturbation();
    E conj = (out.y == E{}) ? truncated(x, m) : exp_ad(out.y, x, m);
    out.conjugacy_residual = truncated(conj - p.x0 - out.z, m);
    return out;
}

struct NormalFormReport {
    bool commutation_ok = false;
    bool conjugacy_ok = false;
    bool all_ok() const { return commutation_ok && conjugacy_ok; }
};

// Recomputes both residuals with engine arithmetic only.
template <LieElement E>
NormalFormReport verify_normal_form(const HomogeneousProblem<E>& p,
                                    const NormalFormResult<E>& result) {
    NormalFormReport report;
    report.commutation_ok = bracket(p.x0, result.z) == E{};
    E x = p.x0 + p.perturbation();
    E conj = (result.y == E{}) ? truncated(x, p.order) : exp_ad(result.y, x, p.order);
    report.conjugacy_ok = truncated(conj - p.x0 - result.z, p.order) == E{};
    return report;
}

} // namespace mouldcalc

#endif
