#include <doctest.h>

#include "mouldcalc/oracle.hpp"
#include "test_support.hpp"

using namespace mouldcalc;
using mouldcalc::testing::Rng;

namespace {

AlphabetPtr two_letters() {
    return testing::table_alphabet({Scalar(1), Scalar(2)});
}

} // namespace

TEST_CASE("mould multiplication and unit") {
    auto a = two_letters();
    Mould I = mould_letters(a, 4);
    Mould II = mould_mul(I, I);
    // (I×I)^{n1 n2} = 1, zero elsewhere
    for (LetterId x = 0; x < 2; ++x)
        for (LetterId y = 0; y < 2; ++y) CHECK(II.value({x, y}) == Scalar(1));
    CHECK(II.value({0}).is_zero());
    CHECK(II.value({0, 1, 0}).is_zero());

    Rng rng(testing::kDefaultSeed);
    Mould m = testing::random_mould(rng, a, 4);
    CHECK(mould_mul(mould_one(a, 4), m) == m);
    CHECK(mould_mul(m, mould_one(a, 4)) == m);

    // single letter alphabet: (I×I×I)^{aaa} = 1
    auto single = testing::table_alphabet({Scalar(1)});
    Mould Is = mould_letters(single, 3);
    CHECK(mould_mul(Is, mould_mul(Is, Is)).value({0, 0, 0}) == Scalar(1));

    auto other = testing::table_alphabet({Scalar(1), Scalar(2), Scalar(3)});
    CHECK_THROWS_AS(mould_mul(m, mould_letters(other, 4)), AlphabetMismatch);
}

TEST_CASE("mould inverse") {
    auto single = testing::table_alphabet({Scalar(1)});
    CHECK(mould_inverse(mould_one(single, 4)) == mould_one(single, 4));

    // M = 1 + I on one letter: inv(M)^{a^k} = (−1)^k
    Mould m = mould_add(mould_one(single, 5), mould_letters(single, 5));
    Mould inv = mould_inverse(m);
    for (int k = 0; k <= 5; ++k) {
        Word w(k, 0);
        CHECK(inv.value(w) == Scalar(Rational((k % 2) ? -1 : 1)));
    }
    CHECK(mould_mul(m, inv) == mould_one(single, 5));
    CHECK(mould_mul(inv, m) == mould_one(single, 5));

    // inv(e^I) = e^{−I} to length 4
    auto a = two_letters();
    Mould I = mould_letters(a, 4);
    CHECK(mould_inverse(mould_exp(I)) == mould_exp(mould_neg(I)));

    CHECK_THROWS_AS(mould_inverse(mould_letters(a, 3)), NotInvertible);
}

TEST_CASE("mould exp and log") {
    auto a = two_letters();
    Mould I = mould_letters(a, 4);
    Mould expI = mould_exp(I);
    // exp(I)^w = 1/r(w)!
    Rng rng(testing::kDefaultSeed + 2);
    for (int r = 0; r <= 4; ++r) {
        Word w = testing::random_word(rng, 2, r);
        Rational factorial(1);
        for (int k = 2; k <= r; ++k) factorial *= k;
        CHECK(expI.value(w) == Scalar(Rational(1) / factorial));
    }

    CHECK(mould_log(mould_one(a, 4)).is_zero());

    auto five = testing::table_alphabet(
        {Scalar(1), Scalar(2), Scalar(-1), Scalar(make_rational(1, 2)), Scalar(5)});
    for (int it = 0; it < 5; ++it) {
        Mould m = testing::random_alternal(rng, five, 5);
        CHECK(mould_log(mould_exp(m)) == m);
    }
    Mould s = testing::random_symmetral(rng, five, 5);
    CHECK(mould_exp(mould_log(s)) == s);

    CHECK_THROWS_AS(mould_exp(mould_one(a, 3)), BadConstantTerm);
    CHECK_THROWS_AS(mould_log(mould_letters(a, 3)), BadConstantTerm);
}

TEST_CASE("shuffle coefficients match the worked examples") {
    // letters n,m,p,q → ids 0,1,2,3
    auto a = testing::table_alphabet({Scalar(1), Scalar(2), Scalar(3), Scalar(4)});
    Word nmp{0, 1, 2}, mq{1, 3};
    CHECK(shuffle_coefficient(nmp, mq, {0, 1, 3, 2, 1}) == 0); // nmqpm
    CHECK(shuffle_coefficient(nmp, mq, {0, 1, 1, 3, 2}) == 2); // nmmqp
    CHECK(shuffle_coefficient(nmp, mq, {1, 0, 3, 1, 2}) == 1); // mnqmp

    // sh(a,∅;a) = 1
    Rng rng(testing::kDefaultSeed + 3);
    for (int it = 0; it < 10; ++it) {
        Word w = testing::random_word(rng, 4, 1 + it % 5);
        CHECK(shuffle_coefficient(w, {}, w) == 1);
        CHECK(shuffle_coefficient({}, w, w) == 1);
    }
    CHECK(shuffle_coefficient(nmp, mq, {0, 1, 2}) == 0); // length mismatch
}

TEST_CASE("alternality") {
    auto a = two_letters();
    CHECK(is_alternal(mould_letters(a, 4)).ok);

    // any mould supported on one-letter words is alternal
    Rng rng(testing::kDefaultSeed + 4);
    Mould m(a, 4);
    m.set({0}, testing::random_scalar(rng));
    m.set({1}, testing::random_scalar(rng));
    CHECK(is_alternal(m).ok);

    // symmetric two-letter counterexample: M^{n1n2} = M^{n2n1} = 1
    Mould bad(a, 4);
    bad.set({0, 1}, Scalar(1));
    bad.set({1, 0}, Scalar(1));
    auto check = is_alternal(bad);
    CHECK_FALSE(check.ok);
    REQUIRE(check.violation.has_value());
    CHECK(check.violation->first == Word{0});
    CHECK(check.violation->second == Word{1});

    // 2 M^{n1 n1 n2} + M^{n1 n2 n1} = 0 consequence on random alternals
    for (int it = 0; it < 5; ++it) {
        Mould r = testing::random_alternal(rng, a, 3);
        Scalar lhs = r.value({0, 0, 1}) * Scalar(2) + r.value({0, 1, 0});
        CHECK(lhs.is_zero());
    }
}

TEST_CASE("symmetrality") {
    auto a = two_letters();
    CHECK(is_symmetral(mould_one(a, 4)).ok);

    Rng rng(testing::kDefaultSeed + 5);
    auto five = testing::table_alphabet(
        {Scalar(1), Scalar(-1), Scalar(2), Scalar(make_rational(1, 3)), Scalar(0)});
    for (int it = 0; it < 5; ++it) {
        Mould m = testing::random_alternal(rng, five, 5);
        CHECK(is_symmetral(mould_exp(m)).ok);
    }

    // S^∅=1, S^{ab}=1, all else 0: shuffle sum S^{ab}+S^{ba} = 1 ≠ S^a S^b = 0
    Mould bad = mould_one(a, 2);
    bad.set({0, 1}, Scalar(1));
    auto check = is_symmetral(bad);
    CHECK_FALSE(check.ok);
    REQUIRE(check.violation.has_value());
    CHECK(check.violation->first == Word{0});
    CHECK(check.violation->second == Word{1});
}

TEST_CASE("nabla is a derivation; special cases") {
    auto a = two_letters();
    Mould I = mould_letters(a, 4);
    CHECK(nabla_one(I) == I);
    CHECK(nabla_lambda(mould_one(a, 4)).is_zero());

    Rng rng(testing::kDefaultSeed + 6);
    for (int it = 0; it < 8; ++it) {
        Mould m = testing::random_mould(rng, a, 4);
        Mould n = testing::random_mould(rng, a, 4);
        Mould lhs = nabla_lambda(mould_mul(m, n));
        Mould rhs = mould_add(mould_mul(nabla_lambda(m), n), mould_mul(m, nabla_lambda(n)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("resonant part") {
    auto mixed = testing::table_alphabet({Scalar(1), Scalar(-1)});
    Rng rng(testing::kDefaultSeed + 7);

    Mould single(mixed, 3);
    single.set({0, 0}, Scalar(5)); // λ = 2 ≠ 0
    CHECK(resonant_part(single).is_zero());

    for (int it = 0; it < 5; ++it) {
        Mould m = testing::random_mould(rng, mixed, 4);
        CHECK(resonant_part(resonant_part(m)) == resonant_part(m));
        CHECK((nabla_lambda(m).is_zero()) == (resonant_part(m) == m));
    }

    // alphabet {a:λ=1, b:λ=−1}: resonant words have equal counts, length ≤ 4
    Mould dense(mixed, 4);
    std::function<void(Word&)> fill = [&](Word& w) {
        if (!w.empty()) dense.set(w, Scalar(1));
        if (length(w) == 4) return;
        for (LetterId id = 0; id < 2; ++id) {
            w.push_back(id);
            fill(w);
            w.pop_back();
        }
    };
    Word w;
    fill(w);
    Mould res = resonant_part(dense);
    long long kept = 0;
    for (const auto& [word, v] : res.entries()) {
        int count0 = 0, count1 = 0;
        for (LetterId id : word) (id == 0 ? count0 : count1)++;
        CHECK(count0 == count1);
        ++kept;
    }
    CHECK(kept == 2 + 6); // length 2: ab,ba; length 4: C(4,2)=6 arrangements
}

TEST_CASE("gauge generator of moulds") {
    auto mixed = testing::table_alphabet({Scalar(0), Scalar(1)});
    CHECK(gauge_generator(mould_zero(mixed, 4)).is_zero());

    // single resonant letter a with value c: J(M)^a = c
    Rng rng(testing::kDefaultSeed + 8);
    Scalar c = testing::random_nonzero_scalar(rng);
    Mould m(mixed, 4);
    m.set({0}, c);
    CHECK(gauge_generator(m).value({0}) == c);

    for (int it = 0; it < 5; ++it) {
        Mould r = testing::random_alternal(rng, mixed, 4);
        Mould j = gauge_generator(r);
        CHECK(is_alternal(j).ok);
        CHECK(is_resonant(j));
    }

    Mould bad(mixed, 3);
    bad.set({0, 1}, Scalar(1));
    bad.set({1, 0}, Scalar(1));
    CHECK_THROWS_AS(gauge_generator(bad), NotAlternal);
}

TEST_CASE("pullback") {
    auto target = testing::table_alphabet({Scalar(1), Scalar(2), Scalar(3)});
    auto source = two_letters();
    // φ maps target letters {0,1,2} onto source letters {0,1,0}
    std::vector<LetterId> phi{0, 1, 0};

    Mould I = mould_letters(source, 3);
    CHECK(pullback(I, phi, target) == mould_letters(target, 3));

    std::vector<LetterId> identity{0, 1};
    Rng rng(testing::kDefaultSeed + 9);
    for (int it = 0; it < 5; ++it) {
        Mould m = testing::random_mould(rng, source, 4);
        CHECK(pullback(m, identity, source) == m);
        Mould n = testing::random_mould(rng, source, 4);
        // φ* is a morphism of associative algebras
        CHECK(pullback(mould_mul(m, n), phi, target) ==
              mould_mul(pullback(m, phi, target), pullback(n, phi, target)));
        // and preserves alternality
        Mould alt = testing::random_alternal(rng, source, 4);
        CHECK(is_alternal(pullback(alt, phi, target)).ok);
    }
}

TEST_CASE("truncation and letter restriction") {
    auto a = two_letters();
    CHECK(truncate_below(mould_letters(a, 3), 1).is_zero());

    Rng rng(testing::kDefaultSeed + 10);
    for (int it = 0; it < 5; ++it) {
        Mould alt = testing::random_alternal(rng, a, 5);
        CHECK(is_alternal(truncate_below(alt, 3)).ok);
        CHECK(is_alternal(restrict_letters(alt, {0})).ok);
        // restrict-then-truncate commutes with truncate-then-restrict
        CHECK(truncate_below(restrict_letters(alt, {1}), 3) ==
              restrict_letters(truncate_below(alt, 3), {1}));
    }
}

TEST_CASE("delta coproduct characterizations") {
    auto a = two_letters();
    Mould I = mould_letters(a, 4);
    CHECK(delta_coproduct(I, {0}, {1}).is_zero());
    CHECK(delta_coproduct(mould_one(a, 4), {}, {}) == Scalar(1));

    Rng rng(testing::kDefaultSeed + 11);
    auto words_upto = [&](int upto) {
        std::vector<Word> out{{}};
        std::vector<Word> prev{{}};
        for (int r = 1; r <= upto; ++r) {
            std::vector<Word> next;
            for (const auto& w : prev)
                for (LetterId id = 0; id < 2; ++id) {
                    Word e = w;
                    e.push_back(id);
                    next.push_back(e);
                }
            out.insert(out.end(), next.begin(), next.end());
            prev = std::move(next);
        }
        return out;
    };
    auto words = words_upto(2);

    for (int it = 0; it < 4; ++it) {
        Mould alt = testing::random_alternal(rng, a, 4);
        Mould sym = mould_exp(alt);
        for (const auto& u : words)
            for (const auto& v : words) {
                if (length(u) + length(v) > 4) continue;
                // alternal ⟺ Δ(M) = M⊗1 + 1⊗M
                Scalar want_alt = alt.value(u) * (v.empty() ? Scalar(1) : Scalar()) +
                                  (u.empty() ? Scalar(1) : Scalar()) * alt.value(v);
                CHECK(delta_coproduct(alt, u, v) == want_alt);
                // symmetral ⟺ Δ(S) = S⊗S
                CHECK(delta_coproduct(sym, u, v) == sym.value(u) * sym.value(v));
            }

        // Δ(M×N) = Δ(M)×Δ(N) pointwise, with the dimould product on pairs
        Mould m = testing::random_mould(rng, a, 4);
        Mould n = testing::random_mould(rng, a, 4);
        for (const auto& u : words)
            for (const auto& v : words) {
                if (length(u) + length(v) > 4) continue;
                Scalar direct = delta_coproduct(mould_mul(m, n), u, v);
                Scalar viaprod;
                for (int cu = 0; cu <= length(u); ++cu)
                    for (int cv = 0; cv <= length(v); ++cv)
                        viaprod += delta_coproduct(m, prefix(u, cu), prefix(v, cv)) *
                                   delta_coproduct(n, suffix(u, cu), suffix(v, cv));
                CHECK(direct == viaprod);
            }
    }
}

TEST_CASE("filtration, Lie and group closure") {
    auto a = two_letters();
    Rng rng(testing::kDefaultSeed + 12);
    for (int it = 0; it < 6; ++it) {
        Mould m = testing::random_mould(rng, a, 5);
        Mould n = testing::random_mould(rng, a, 5);
        Mould prod = mould_mul(m, n);
        if (!prod.is_zero())
            CHECK(prod.order() >= std::min(m.order() + n.order(), kInfiniteOrder));

        Mould am = testing::random_alternal(rng, a, 5);
        Mould an = testing::random_alternal(rng, a, 5);
        CHECK(is_alternal(mould_bracket(am, an)).ok);

        Mould sm = mould_exp(am);
        Mould sn = mould_exp(an);
        CHECK(is_symmetral(mould_mul(sm, sn)).ok);
        CHECK(is_symmetral(mould_inverse(sm)).ok);
    }
}

TEST_CASE("delta coproduct agrees with the permutation oracle") {
    auto a = two_letters();
    Rng rng(testing::kDefaultSeed + 13);
    Mould m = testing::random_mould(rng, a, 4, 5);
    for (int it = 0; it < 60; ++it) {
        Word u = testing::random_word(rng, 2, 1 + it % 2);
        Word v = testing::random_word(rng, 2, 1 + (it / 2) % 2);
        // Σ_n sh(u,v;n) M^n via the literal permutation count
        Scalar by_perm;
        std::function<void(Word&)> walk = [&](Word& w) {
            if (length(w) == length(u) + length(v)) {
                long long c = oracle::shuffle_by_permutations(u, v, w);
                if (c) by_perm += m.value(w) * Scalar(Rational(static_cast<long>(c)));
                return;
            }
            for (LetterId id = 0; id < 2; ++id) {
                w.push_back(id);
                walk(w);
                w.pop_back();
            }
        };
        Word w;
        walk(w);
        CHECK(by_perm == delta_coproduct(m, u, v));
    }
}
