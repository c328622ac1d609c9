#include <doctest.h>

#include "mouldcalc/solver.hpp"
#include "test_support.hpp"

using namespace mouldcalc;
using mouldcalc::testing::Rng;

namespace {

// Alphabet {b: λ=−1, a: λ=+1} in canonical letter order: letter 0 ↦ −1,
// letter 1 ↦ +1.
AlphabetPtr pm_alphabet() {
    return testing::table_alphabet({Scalar(-1), Scalar(1)});
}

} // namespace

TEST_CASE("two-letter worked instance") {
    auto a = pm_alphabet();
    MouldSolution sol = solve_zero_gauge(a, 2);
    const LetterId b = 0, c = 1; // λ(b) = −1, λ(c) = +1
    CHECK(sol.F.value({b, c}) == Scalar(1));
    CHECK(sol.F.value({c, b}) == Scalar(-1));
    CHECK(sol.S.value({b, c}) == Scalar(make_rational(-1, 2)));
    CHECK(sol.S.value({c, b}) == Scalar(make_rational(-1, 2)));
    CHECK(sol.F.value({b}).is_zero());
    CHECK(sol.S.value({b}) == Scalar(-1));
    CHECK(sol.S.value({c}) == Scalar(1));
    CHECK(verify_solution(sol).all_ok());
}

TEST_CASE("single letter instances") {
    // non-resonant single letter: S^a = 1, S^{aa} = 1/2, G^{aa} = 0
    auto nr = testing::table_alphabet({Scalar(1)});
    MouldSolution sol = solve_zero_gauge(nr, 2);
    CHECK(sol.S.value({0}) == Scalar(1));
    CHECK(sol.S.value({0, 0}) == Scalar(make_rational(1, 2)));
    CHECK(sol.G.value({0, 0}).is_zero());
    CHECK(sol.F.is_zero());

    // fully resonant letter: F^a = 1, S^a = 0, F^{aa} = S^{aa} = 0
    auto res = testing::table_alphabet({Scalar(0)});
    MouldSolution rsol = solve_zero_gauge(res, 3);
    CHECK(rsol.F.value({0}) == Scalar(1));
    CHECK(rsol.S.value({0}).is_zero());
    CHECK(rsol.F.value({0, 0}).is_zero());
    CHECK(rsol.S.value({0, 0}).is_zero());
    CHECK(verify_solution(rsol).all_ok());
}

TEST_CASE("closed-form product formulas") {
    // canonical letters (1,2), λ(n) = i·n: S^{(1)(2)} = 1/((3i)(2i)) = −1/6
    std::vector<Letter> letters{{1}, {2}};
    auto a = Alphabet::with_model(letters, FrequencyModel::build({{1}}, 20));
    MouldSolution sol = solve_zero_gauge(a, 4);
    LetterId one = a->require({1}), two = a->require({2});
    CHECK(sol.S.value({one, two}) == Scalar(make_rational(-1, 6)));
    CHECK(closed_form_check(sol).ok());

    // word (−1,1) with λ(n) = i·n: resonant, F = 1/λ(second letter) = −i
    std::vector<Letter> pm{{-1}, {1}};
    auto b = Alphabet::with_model(pm, FrequencyModel::build({{1}}, 20));
    MouldSolution sol2 = solve_zero_gauge(b, 4);
    CHECK(sol2.F.value({b->require({-1}), b->require({1})}) == -Scalar::i());
    auto report = closed_form_check(sol2);
    CHECK(report.ok());
    CHECK(report.words_skipped > 0); // all-resonant words are skipped

    // Dynkin family on {1,...,4}, L=5: S^w · i^{r} = 1/((n1+...+nr)(n2+...+nr)...nr)
    std::vector<Letter> nat{{1}, {2}, {3}, {4}};
    auto c = Alphabet::with_model(nat, FrequencyModel::build({{1}}, 24));
    MouldSolution dyn = solve_zero_gauge(c, 5);
    Rng rng(testing::kDefaultSeed);
    std::function<void(Word&)> visit = [&](Word& w) {
        if (!w.empty()) {
            Rational denom(1);
            long tail = 0;
            for (int i = length(w) - 1; i >= 0; --i) {
                tail += static_cast<long>(c->letter(w[i])[0]);
                denom *= tail;
            }
            Scalar ipow(1);
            for (int i = 0; i < length(w); ++i) ipow *= Scalar::i();
            CHECK(dyn.S.value(w) * ipow == Scalar(Rational(1) / denom));
        }
        if (length(w) == 5) return;
        for (LetterId id = 0; id < c->size(); ++id) {
            w.push_back(id);
            visit(w);
            w.pop_back();
        }
    };
    Word w;
    visit(w);
}

TEST_CASE("randomized mould equation properties") {
    Rng rng(testing::kDefaultSeed + 20);
    std::uniform_int_distribution<int> size_dist(2, 4);
    std::uniform_int_distribution<long> ev_dist(-2, 2);
    for (int it = 0; it < 8; ++it) {
        int n = size_dist(rng);
        std::vector<Scalar> evs;
        for (int i = 0; i < n; ++i) evs.push_back(Scalar(ev_dist(rng)));
        auto a = testing::table_alphabet(evs);
        Mould gauge = testing::random_resonant_alternal(rng, a, 4);
        MouldSolution sol = solve(a, gauge, 4);
        CHECK(verify_solution(sol).all_ok());
        CHECK(sol.gauge == gauge);
        // determinism: a second run gives identical moulds
        MouldSolution again = solve(a, gauge, 4);
        CHECK(again.F == sol.F);
        CHECK(again.S == sol.S);
        CHECK(again.G == sol.G);
        CHECK(again.N == sol.N);
    }
}

TEST_CASE("distinct admissible gauges give distinct solutions") {
    auto a = testing::table_alphabet({Scalar(0), Scalar(1)});
    Mould a1 = mould_zero(a, 3);
    Mould a2(a, 3);
    a2.set({0}, Scalar(1)); // resonant letter
    MouldSolution s1 = solve(a, a1, 3);
    MouldSolution s2 = solve(a, a2, 3);
    CHECK_FALSE(s1.S == s2.S);
}

TEST_CASE("inadmissible gauges are rejected") {
    auto a = testing::table_alphabet({Scalar(0), Scalar(1)});
    Mould sym(a, 3);
    sym.set({0, 0}, Scalar(1)); // fails alternality (2M^{aa} = 2 ≠ 0)
    CHECK_THROWS_AS(solve(a, sym, 3), GaugeNotAdmissible);
    Mould nonres(a, 3);
    nonres.set({1}, Scalar(1)); // non-resonant letter
    CHECK_THROWS_AS(solve(a, nonres, 3), GaugeNotAdmissible);
}

TEST_CASE("gauge transformations") {
    Rng rng(testing::kDefaultSeed + 21);
    auto a = testing::table_alphabet({Scalar(0), Scalar(1), Scalar(-1)});
    MouldSolution sol = solve_zero_gauge(a, 4);

    // K = 1 is the identity transform
    MouldSolution same = gauge_transform(sol, mould_one(a, 4));
    CHECK(same.F == sol.F);
    CHECK(same.S == sol.S);

    for (int it = 0; it < 6; ++it) {
        Mould j = testing::random_resonant_alternal(rng, a, 4);
        Mould k = mould_exp(j);
        MouldSolution moved = gauge_transform(sol, k);
        CHECK(verify_solution(moved).all_ok());

        // effect on gauge generators: inv(K)×J(G)×K + inv(K)×∇₁K
        Mould kinv = mould_inverse(k);
        Mould expected = mould_add(mould_mul(kinv, mould_mul(sol.gauge, k)),
                                   mould_mul(kinv, nabla_one(k)));
        CHECK(moved.gauge == expected);

        // group action composes
        Mould j2 = testing::random_resonant_alternal(rng, a, 4);
        Mould k2 = mould_exp(j2);
        MouldSolution once = gauge_transform(sol, mould_mul(k, k2));
        MouldSolution twice = gauge_transform(gauge_transform(sol, k), k2);
        CHECK(once.F == twice.F);
        CHECK(once.S == twice.S);

        // the connecting gauge between two solutions is inv(S1)×S2
        Mould connect = mould_mul(mould_inverse(sol.S), moved.S);
        CHECK(connect == k);
    }

    Mould notsym(a, 4);
    notsym.set({}, Scalar(1));
    notsym.set({0, 0}, Scalar(1));
    CHECK_THROWS_AS(gauge_transform(sol, notsym), GaugeNotAdmissible);
}

TEST_CASE("gauge mould from generator") {
    auto a = testing::table_alphabet({Scalar(0), Scalar(2)});
    CHECK(gauge_from_generator(mould_zero(a, 4), 4) == mould_one(a, 4));

    // single resonant letter with value c: K^{a^k} = c^k / k!
    Rng rng(testing::kDefaultSeed + 22);
    Scalar c = testing::random_nonzero_scalar(rng);
    Mould gen(a, 4);
    gen.set({0}, c);
    Mould k = gauge_from_generator(gen, 4);
    Scalar power(1);
    Rational factorial(1);
    for (int r = 1; r <= 4; ++r) {
        power *= c;
        factorial *= r;
        CHECK(k.value(Word(r, 0)) == power / Scalar(factorial));
    }

    // round trip: transforming the zero-gauge solution by K gives gauge A
    auto big = testing::table_alphabet({Scalar(0), Scalar(1), Scalar(-1)});
    MouldSolution base = solve_zero_gauge(big, 4);
    Mould gen2 = testing::random_resonant_alternal(rng, big, 4);
    Mould k2 = gauge_from_generator(gen2, 4);
    MouldSolution moved = gauge_transform(base, k2);
    CHECK(moved.gauge == gen2);
}

TEST_CASE("zero-resonant normalization") {
    Rng rng(testing::kDefaultSeed + 23);

    // already normalized: fully non-resonant alphabet, J = 0 vacuously
    auto nonres = testing::table_alphabet({Scalar(1), Scalar(2)});
    MouldSolution plain = solve_zero_gauge(nonres, 4);
    MouldSolution normd = normalize_zero_resonant(plain);
    CHECK(normd.S == plain.S);

    // resonant problem: the output solves the equation with G_{λ=0} = 0
    auto res = testing::table_alphabet({Scalar(0), Scalar(1), Scalar(-1)});
    for (int it = 0; it < 4; ++it) {
        Mould gauge = testing::random_resonant_alternal(rng, res, 4);
        MouldSolution sol = solve(res, gauge, 4);
        MouldSolution fixed = normalize_zero_resonant(sol);
        CHECK(resonant_part(fixed.G).is_zero());
        CHECK(verify_solution(fixed).all_ok());
        // uniqueness: normalizing any gauge choice lands on the same solution
        MouldSolution fixed2 = normalize_zero_resonant(solve_zero_gauge(res, 4));
        CHECK(fixed2.S == fixed.S);
        CHECK(fixed2.F == fixed.F);
    }
}

TEST_CASE("canonical-case factorization through pullback") {
    // solving over N with map λ equals pulling back the solution over the
    // eigenvalue alphabet along λ
    auto a = testing::table_alphabet({Scalar(1), Scalar(1), Scalar(-1), Scalar(0)});
    // distinct eigenvalue alphabet: {−1, 0, 1} with identity map
    std::vector<Scalar> values{Scalar(-1), Scalar(0), Scalar(1)};
    auto canonical = testing::table_alphabet(values);
    std::vector<LetterId> phi(a->size());
    for (LetterId id = 0; id < a->size(); ++id) {
        for (LetterId j = 0; j < canonical->size(); ++j)
            if (canonical->lambda(j) == a->lambda(id)) phi[id] = j;
    }
    MouldSolution upstairs = solve_zero_gauge(canonical, 4);
    MouldSolution downstairs = solve_zero_gauge(a, 4);
    CHECK(pullback(upstairs.F, phi, a) == downstairs.F);
    CHECK(pullback(upstairs.S, phi, a) == downstairs.S);
    CHECK(pullback(upstairs.G, phi, a) == downstairs.G);
}

TEST_CASE("verify_solution flags corruption") {
    auto a = pm_alphabet();
    MouldSolution sol = solve_zero_gauge(a, 3);
    CHECK(verify_solution(sol).all_ok());
    sol.S.set({0, 1}, sol.S.value({0, 1}) + Scalar(1));
    CHECK_FALSE(verify_solution(sol).all_ok());
}

TEST_CASE("empty alphabet gives the trivial bundle") {
    auto a = Alphabet::empty();
    MouldSolution sol = solve_zero_gauge(a, 3);
    CHECK(sol.S == mould_one(a, 3));
    CHECK(sol.F.is_zero());
    CHECK(sol.G.is_zero());
    CHECK(verify_solution(sol).all_ok());
}
