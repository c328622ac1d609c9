#include "mouldcalc/solver.hpp"

namespace mouldcalc {

namespace {

void require_admissible_gauge(const Mould& a, int max_len) {
    if (!a.empty_value().is_zero())
        throw GaugeNotAdmissible("gauge generator must vanish on the empty word");
    auto alt = is_alternal(a, max_len);
    if (!alt.ok)
        throw GaugeNotAdmissible("gauge generator fails alternality at pair " +
                                 to_string(alt.violation->first) + ", " +
                                 to_string(alt.violation->second));
    if (!is_resonant(a))
        throw GaugeNotAdmissible("gauge generator has non-resonant entries");
}

// Σ over nontrivial splits w = a·b of S^a · X^b.
Scalar split_sum(const Mould& s, const Mould& x, const Word& w) {
    Scalar acc;
    const int r = length(w);
    for (int cut = 1; cut < r; ++cut) {
        Scalar sv = s.value(prefix(w, cut));
        if (sv.is_zero()) continue;
        Scalar xv = x.value(suffix(w, cut));
        if (xv.is_zero()) continue;
        acc += sv * xv;
    }
    return acc;
}

} // namespace

MouldSolution solve(const AlphabetPtr& alphabet, const Mould& gauge, int max_len) {
    require_same_alphabet(alphabet, gauge.alphabet());
    require_admissible_gauge(gauge, max_len);

    MouldSolution sol;
    sol.alphabet = alphabet;
    sol.max_len = max_len;
    sol.gauge = gauge;
    Mould S(alphabet, max_len), F(alphabet, max_len), N(alphabet, max_len);
    S.set({}, Scalar(1));

    const int nletters = alphabet->size();
    Word w;
    // Words of each length in canonical order, with the induction values of
    // all shorter words already in place.
    std::function<void(int, const Scalar&)> visit = [&](int remaining, const Scalar& lam) {
        if (remaining == 0) {
            const int r = length(w);
            bool resonant = alphabet->word_resonant(w);
            Scalar s_tail = S.value(behead(w));
            Scalar sf = split_sum(S, F, w);
            if (!resonant) {
                // λ(w) ≠ 0: F = 0, S = (S^{`w} − Σ*)/λ, N = r·S − Σ* S·N.
                Scalar sv = (s_tail - sf) / lam;
                S.set(w, sv);
                N.set(w, Scalar(Rational(r)) * sv - split_sum(S, N, w));
            } else {
                F.set(w, s_tail - sf);
                Scalar av = gauge.value(w);
                N.set(w, av);
                S.set(w, (av + split_sum(S, N, w)) / Scalar(Rational(r)));
            }
            return;
        }
        for (LetterId id = 0; id < nletters; ++id) {
            w.push_back(id);
            visit(remaining - 1, lam + alphabet->lambda(id));
            w.pop_back();
        }
    };
    for (int r = 1; r <= max_len; ++r) visit(r, Scalar());

    sol.S = std::move(S);
    sol.F = std::move(F);
    sol.N = std::move(N);
    sol.G = mould_log(sol.S);
    return sol;
}

MouldSolution solve_zero_gauge(const AlphabetPtr& alphabet, int max_len) {
    return solve(alphabet, mould_zero(alphabet, max_len), max_len);
}

ClosedFormReport closed_form_check(const MouldSolution& sol) {
    ClosedFormReport report;
    const Alphabet& a = *sol.alphabet;
    Word w;
    std::function<void(int)> visit = [&](int remaining) {
        if (remaining == 0) {
            const int r = length(w);
            // λ of the suffixes n_i..n_r, i = r..1 (shortest first).
            std::vector<Scalar> suffix_lambda(r + 1);
            std::vector<bool> suffix_res(r + 1, true);
            for (int i = r - 1; i >= 0; --i) {
                suffix_lambda[r - i] = suffix_lambda[r - i - 1] + a.lambda(w[i]);
                suffix_res[r - i] = a.word_resonant(suffix(w, i));
            }
            bool strict_nonzero = true; // suffixes of length 1..r-1
            for (int k = 1; k < r && strict_nonzero; ++k)
                if (suffix_res[k]) strict_nonzero = false;
            if (strict_nonzero && !suffix_res[r]) {
                ++report.words_checked;
                Scalar prod(1);
                for (int k = 1; k <= r; ++k) prod *= suffix_lambda[k];
                if (sol.S.value(w) != inverse(prod))
                    report.mismatches.emplace_back(w, "S does not match the product formula");
                for (int i = 0; i < r; ++i)
                    if (!sol.F.value(suffix(w, i)).is_zero()) {
                        report.mismatches.emplace_back(suffix(w, i),
                                                       "F expected to vanish on suffix");
                        break;
                    }
            } else if (strict_nonzero && suffix_res[r]) {
                ++report.words_checked;
                Scalar prod(1);
                for (int k = 1; k < r; ++k) prod *= suffix_lambda[k];
                Scalar want = (r == 1) ? Scalar(1) : inverse(prod);
                if (sol.F.value(w) != want)
                    report.mismatches.emplace_back(w, "F does not match the product formula");
            } else {
                ++report.words_skipped;
            }
            return;
        }
        for (LetterId id = 0; id < a.size(); ++id) {
            w.push_back(id);
            visit(remaining - 1);
            w.pop_back();
        }
    };
    for (int r = 1; r <= sol.max_len; ++r) visit(r);
    return report;
}

MouldSolution gauge_transform(const MouldSolution& sol, const Mould& k) {
    require_same_alphabet(sol.alphabet, k.alphabet());
    auto sym = is_symmetral(k, sol.max_len);
    if (!sym.ok)
        throw GaugeNotAdmissible("gauge transform mould fails symmetrality at pair " +
                                 to_string(sym.violation->first) + ", " +
                                 to_string(sym.violation->second));
    if (!is_resonant(k))
        throw GaugeNotAdmissible("gauge transform mould has non-resonant entries");

    Mould kinv = mould_inverse(k);
    MouldSolution out;
    out.alphabet = sol.alphabet;
    out.max_len = sol.max_len;
    out.F = mould_mul(kinv, mould_mul(sol.F, k));
    out.S = mould_mul(sol.S, k);
    out.G = mould_log(out.S);
    out.N = mould_mul(mould_inverse(out.S), nabla_one(out.S));
    out.gauge = resonant_part(out.N);
    return out;
}

Mould gauge_from_generator(const Mould& a, int max_len) {
    require_admissible_gauge(a, max_len);
    Mould k(a.alphabet(), max_len);
    k.set({}, Scalar(1));
    // ∇₁K = K×A, so r·K^w = Σ_{w=uv, v≠∅} K^u A^v, length induction.
    Word w;
    const Alphabet& alpha = *a.alphabet();
    std::function<void(int)> visit = [&](int remaining) {
        if (remaining == 0) {
            const int r = length(w);
            Scalar acc = a.value(w); // u = ∅ split
            acc += split_sum(k, a, w);
            k.set(w, acc / Scalar(Rational(r)));
            return;
        }
        for (LetterId id = 0; id < alpha.size(); ++id) {
            w.push_back(id);
            visit(remaining - 1);
            w.pop_back();
        }
    };
    for (int r = 1; r <= max_len; ++r) visit(r);

    if (!is_resonant(k))
        throw GaugeNotAdmissible("gauge mould from generator is not resonant");
    auto sym = is_symmetral(k);
    if (!sym.ok)
        throw GaugeNotAdmissible("gauge mould from generator is not symmetral");
    return k;
}

MouldSolution normalize_zero_resonant(const MouldSolution& sol) {
    Mould j = mould_zero(sol.alphabet, sol.max_len);
    for (int pass = 0; pass <= sol.max_len; ++pass) {
        Mould g = mould_log(mould_mul(sol.S, mould_exp(j)));
        Mould correction = resonant_part(g);
        if (correction.is_zero()) break;
        j = mould_sub(j, correction);
    }
    MouldSolution out = gauge_transform(sol, mould_exp(j));
    if (!resonant_part(out.G).is_zero())
        throw GaugeNotAdmissible("zero-resonant normalization did not converge");
    // Idempotence: a second pass must find nothing to correct.
    if (!resonant_part(mould_log(mould_mul(out.S, mould_exp(mould_zero(sol.alphabet, sol.max_len)))))
             .is_zero())
        throw GaugeNotAdmissible("zero-resonant normalization is not a fixed point");
    return out;
}

SolutionReport verify_solution(const MouldSolution& sol) {
    SolutionReport report;
    auto push = [&](std::string name, bool ok, std::string detail = "") {
        report.items.push_back({std::move(name), ok, std::move(detail)});
    };

    Mould I = mould_letters(sol.alphabet, sol.max_len);
    Mould lhs = nabla_lambda(sol.S);
    Mould rhs = mould_sub(mould_mul(I, sol.S), mould_mul(sol.S, sol.F));
    Mould residual = mould_sub(lhs, rhs);
    push("mould equation residual", residual.is_zero(),
         residual.is_zero() ? "0" : to_string(residual));

    Mould nf = nabla_lambda(sol.F);
    push("nabla_lambda F", nf.is_zero(), nf.is_zero() ? "0" : to_string(nf));
    push("F resonant", resonant_part(sol.F) == sol.F);

    auto altF = is_alternal(sol.F);
    push("F alternal", altF.ok,
         altF.ok ? "" : "violating pair " + to_string(altF.violation->first) + ", " +
                            to_string(altF.violation->second));
    auto symS = is_symmetral(sol.S);
    push("S symmetral", symS.ok,
         symS.ok ? "" : "violating pair " + to_string(symS.violation->first) + ", " +
                            to_string(symS.violation->second));

    push("S = exp(G)", mould_exp(sol.G) == sol.S);
    Mould n_indep = mould_mul(mould_inverse(sol.S), nabla_one(sol.S));
    push("N = inv(S) x nabla_1 S", n_indep == sol.N);
    Mould jg = resonant_part(n_indep);
    Mould gauge_residual = mould_sub(jg, sol.gauge);
    push("gauge generator residual", gauge_residual.is_zero(),
         gauge_residual.is_zero() ? "0" : to_string(gauge_residual));
    return report;
}

} // namespace mouldcalc
