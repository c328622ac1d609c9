#include <doctest.h>

#include <algorithm>

#include "mouldcalc/engines/matrix_op.hpp"
#include "mouldcalc/oracle.hpp"
#include "test_support.hpp"

using namespace mouldcalc;
using namespace mouldcalc::engines;
using mouldcalc::testing::Rng;

namespace {

MatrixOperator random_matrix(Rng& rng, int dim, const Rational& hbar, int eps) {
    MatrixOperator m(dim, hbar);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m.add(eps, r, c, testing::random_scalar(rng, 3));
    return m;
}

// A 3x3 quantum problem, optionally with a resonant pair (equal energies),
// with random perturbations at eps order 1 and 2.
QuantumProblem sample_problem(Rng& rng, int order, bool degenerate = true) {
    std::vector<Scalar> energies = degenerate
                                       ? std::vector<Scalar>{Scalar(0), Scalar(0), Scalar(1)}
                                       : std::vector<Scalar>{Scalar(0), Scalar(1), Scalar(3)};
    Rational hbar = make_rational(1, 2);
    MatrixOperator b = random_matrix(rng, 3, hbar, 1) + random_matrix(rng, 3, hbar, 2);
    return quantum_decompose(energies, hbar, b, order);
}

// Associative comould in the matrix engine. The ambient associative product
// compatible with the rescaled bracket (AB−BA)/(iħ) is A∘B = AB/(iħ), so
// B_w = B_{w_r} ∘ ... ∘ B_{w_1} picks up (1/(iħ))^{r−1}.
MatrixOperator assoc_comould(const HomogeneousProblem<MatrixOperator>& p, const Word& w) {
    MatrixOperator acc = mat_identity(p.x0.dim(), p.x0.hbar());
    for (LetterId id : w) acc = mat_mul(p.component(id), acc);
    Scalar rescale(1);
    for (int i = 1; i < length(w); ++i) rescale *= inverse(Scalar(Rational(0), p.x0.hbar()));
    return acc * rescale;
}

MatrixOperator contract_assoc(const HomogeneousProblem<MatrixOperator>& p, const Mould& m) {
    MatrixOperator acc;
    for (const auto& [w, v] : m.entries()) {
        if (w.empty()) continue;
        acc = acc + assoc_comould(p, w) * v;
    }
    return acc;
}

} // namespace

TEST_CASE("lie comould basics") {
    Rng rng(testing::kDefaultSeed + 30);
    auto qp = sample_problem(rng, 5);
    const auto& p = qp.problem;
    REQUIRE(p.alphabet->size() >= 2);

    // B_[n1 n2] = [B_{n2}, B_{n1}]
    CHECK(lie_comould(p, {0, 1}) == bracket(p.component(1), p.component(0)));
    // repeated letter at r=2 vanishes
    CHECK(lie_comould(p, {0, 0}) == MatrixOperator{});

    // eigenvalue identity [X0, B_[w]] = λ(w)·B_[w] on random words
    for (int it = 0; it < 20; ++it) {
        Word w = testing::random_word(rng, p.alphabet->size(), 1 + it % 3);
        MatrixOperator bw = lie_comould(p, w);
        CHECK(bracket(p.x0, bw) == bw * p.alphabet->lambda(w));
        // filtration contract: ord(B_[w]) ≥ max(r, component orders)
        if (!(bw == MatrixOperator{})) {
            int worst = length(w);
            for (LetterId id : w) worst = std::max(worst, order_of(p.component(id)));
            CHECK(order_of(bw) >= worst);
        }
    }
    CHECK_THROWS_AS(lie_comould(p, Word{99}), UnknownLetter);
}

TEST_CASE("exp_ad properties") {
    Rng rng(testing::kDefaultSeed + 31);
    Rational hbar(1);
    const int m = 4;
    MatrixOperator x = random_matrix(rng, 3, hbar, 0);
    MatrixOperator y = random_matrix(rng, 3, hbar, 1);
    MatrixOperator z = random_matrix(rng, 3, hbar, 1);

    CHECK(exp_ad(MatrixOperator{}, x, m) == truncated(x, m));

    // Lie algebra morphism mod m
    MatrixOperator lhs = exp_ad(y, bracket(x, z), m);
    MatrixOperator rhs = truncated(bracket(exp_ad(y, x, m), exp_ad(y, z, m)), m);
    CHECK(truncated(lhs, m) == rhs);

    // inverse automorphism
    CHECK(exp_ad(y, exp_ad(-y, x, m), m) == truncated(x, m));

    MatrixOperator bad = random_matrix(rng, 3, hbar, 0);
    CHECK_THROWS_AS(exp_ad(bad, x, m), OrderViolation);
}

TEST_CASE("bch composes exponential adjoints") {
    Rng rng(testing::kDefaultSeed + 32);
    Rational hbar(1);
    const int m = 5;
    MatrixOperator w = random_matrix(rng, 2, hbar, 1);
    MatrixOperator y = random_matrix(rng, 2, hbar, 1) + random_matrix(rng, 2, hbar, 2);
    MatrixOperator x = random_matrix(rng, 2, hbar, 0);

    MatrixOperator z = bch(w, y, m);
    // leading terms: W + Y + [W,Y]/2
    MatrixOperator expect_low = w + y + bracket(w, y) * Scalar(make_rational(1, 2));
    CHECK(truncated(z, 3) == truncated(expect_low, 3));

    CHECK(exp_ad(z, x, m) == truncated(exp_ad(w, exp_ad(y, x, m), m), m));

    CHECK(bch(MatrixOperator{}, y, m) == truncated(y, m));
    CHECK(bch(w, MatrixOperator{}, m) == truncated(w, m));
}

TEST_CASE("normal form on matrix problems") {
    Rng rng(testing::kDefaultSeed + 33);
    for (int it = 0; it < 4; ++it) {
        auto qp = sample_problem(rng, 4, it % 2 == 0);
        auto result = normal_form_zero_gauge(qp.problem);
        CHECK(result.ok());
        auto report = verify_normal_form(qp.problem, result);
        CHECK(report.all_ok());

        // corrupting Y breaks the conjugacy residual
        auto broken = result;
        broken.y = broken.y + qp.problem.component(0);
        auto bad = verify_normal_form(qp.problem, broken);
        CHECK_FALSE(bad.conjugacy_ok);
    }

    // empty perturbation → Z = Y = 0
    HomogeneousProblem<MatrixOperator> empty;
    empty.x0 = mat_identity(3, Rational(1));
    empty.alphabet = Alphabet::empty();
    empty.order = 4;
    auto trivial = normal_form_zero_gauge(empty);
    CHECK(trivial.z == MatrixOperator{});
    CHECK(trivial.y == MatrixOperator{});
    CHECK(trivial.ok());
}

TEST_CASE("fully resonant problem keeps B as the normal form") {
    // single mode with λ = 0: Z = B, Y = 0 at zero gauge
    Rng rng(testing::kDefaultSeed + 34);
    Rational hbar(1);
    std::vector<Scalar> energies{Scalar(2), Scalar(2)};
    MatrixOperator b = random_matrix(rng, 2, hbar, 1);
    auto qp = quantum_decompose(energies, hbar, b, 4);
    REQUIRE(qp.problem.alphabet->size() == 1);
    CHECK(qp.problem.alphabet->lambda(LetterId{0}).is_zero());
    auto result = normal_form_zero_gauge(qp.problem);
    CHECK(result.z == b);
    CHECK(result.y == MatrixOperator{});
    CHECK(result.ok());
}

TEST_CASE("tilde solutions from centralizer elements") {
    Rng rng(testing::kDefaultSeed + 35);
    auto qp = sample_problem(rng, 4);
    auto result = normal_form_zero_gauge(qp.problem);
    REQUIRE(result.ok());

    // W = 0 keeps everything
    auto same = tilde_solution(qp.problem, result, MatrixOperator{});
    CHECK(same.z == result.z);
    CHECK(same.y == result.y);

    for (int it = 0; it < 4; ++it) {
        // W from a random resonant alternal mould commutes with X0 exactly
        Mould j = testing::random_resonant_alternal(rng, qp.problem.alphabet, 3);
        MatrixOperator w = contract_lie(qp.problem, j);
        if (w == MatrixOperator{}) continue;
        REQUIRE(bracket(qp.problem.x0, w) == MatrixOperator{});
        auto moved = tilde_solution(qp.problem, result, w);
        CHECK(bracket(qp.problem.x0, moved.z) == MatrixOperator{});
        CHECK(moved.ok());
        CHECK(moved.z == exp_ad(w, result.z, qp.problem.order));
    }

    MatrixOperator not_commuting = qp.problem.perturbation();
    if (!(bracket(qp.problem.x0, not_commuting) == MatrixOperator{}))
        CHECK_THROWS_AS(tilde_solution(qp.problem, result, not_commuting), NotResonant);
}

TEST_CASE("anti-morphism law for alternal moulds") {
    Rng rng(testing::kDefaultSeed + 36);
    auto qp = sample_problem(rng, 5);
    const auto& p = qp.problem;
    for (int it = 0; it < 5; ++it) {
        Mould m = testing::random_alternal(rng, p.alphabet, 4);
        Mould n = testing::random_alternal(rng, p.alphabet, 4);
        MatrixOperator lhs = contract_lie(p, mould_bracket(m, n));
        MatrixOperator rhs = bracket(contract_lie(p, n), contract_lie(p, m));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("associative and Lie contractions agree on alternal moulds") {
    Rng rng(testing::kDefaultSeed + 37);
    auto qp = sample_problem(rng, 5);
    const auto& p = qp.problem;
    for (int it = 0; it < 5; ++it) {
        Mould m = testing::random_alternal(rng, p.alphabet, 4);
        CHECK(contract_assoc(p, m) == contract_lie(p, m));
    }
}

TEST_CASE("comould expansion through shuffles and reversals") {
    // B_[w] = Σ_{(a,b)} (−1)^{r(b)} r(a) sh(a,b;w) B_{reverse(b)·a}
    Rng rng(testing::kDefaultSeed + 38);
    auto qp = sample_problem(rng, 5);
    const auto& p = qp.problem;
    for (int it = 0; it < 12; ++it) {
        Word w = testing::random_word(rng, p.alphabet->size(), 1 + it % 4);
        MatrixOperator expansion;
        const int r = length(w);
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            Word a, b;
            for (int i = 0; i < r; ++i) ((mask >> i) & 1u ? a : b).push_back(w[i]);
            if (a.empty()) continue; // r(a) factor vanishes
            Word ba = concat(reversed(b), a);
            Scalar weight(Rational((length(b) % 2 ? -1 : 1) * static_cast<long>(length(a))));
            expansion = expansion + assoc_comould(p, ba) * weight;
        }
        CHECK(expansion == lie_comould(p, w));
    }
}

TEST_CASE("orbit identity for alternal moulds") {
    Rng rng(testing::kDefaultSeed + 39);
    auto qp = sample_problem(rng, 5);
    const auto& p = qp.problem;
    Mould m = testing::random_alternal(rng, p.alphabet, 4);

    // orbit of a fixed word under position permutations
    Word base = testing::random_word(rng, p.alphabet->size(), 3);
    std::sort(base.begin(), base.end());
    std::set<Word> orbit;
    do orbit.insert(base);
    while (std::next_permutation(base.begin(), base.end()));

    const LetterId c = *base.begin();
    long long rc = std::count(base.begin(), base.end(), c);
    MatrixOperator lhs, rhs;
    for (const auto& w : orbit) {
        if (w.front() == c) lhs = lhs + lie_comould(p, w) * m.value(w);
        rhs = rhs + assoc_comould(p, w) * m.value(w);
    }
    CHECK(lhs == rhs * Scalar(Rational(static_cast<long>(rc))));
}

TEST_CASE("associative contraction of the solution moulds") {
    Rng rng(testing::kDefaultSeed + 40);
    auto qp = sample_problem(rng, 4);
    const auto& p = qp.problem;
    auto result = normal_form_zero_gauge(p);
    REQUIRE(result.ok());
    const int m = p.order;

    MatrixOperator x = random_matrix(rng, 3, qp.hbar, 0);
    // 1• acts as the identity
    CHECK(associative_contraction(p, mould_one(p.alphabet, m - 1), x, m) == truncated(x, m));
    // G• contraction is ad_Y
    CHECK(associative_contraction(p, result.moulds.G, x, m) ==
          truncated(bracket(result.y, x), m));
    // S• contraction is e^{ad_Y}
    CHECK(associative_contraction(p, result.moulds.S, x, m) == exp_ad(result.y, x, m));
}

TEST_CASE("direct conjugacy oracle agrees with exp_ad") {
    Rng rng(testing::kDefaultSeed + 41);
    Rational hbar(1);
    MatrixOperator x = random_matrix(rng, 3, hbar, 0);
    MatrixOperator y = random_matrix(rng, 3, hbar, 1);
    CHECK(oracle::direct_conjugacy(y, x, 5) == exp_ad(y, x, 5));
    CHECK(oracle::direct_conjugacy(MatrixOperator{}, x, 5) == truncated(x, 5));
}
