#include "mouldcalc/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace mouldcalc::oracle {

long long shuffle_by_permutations(const Word& a, const Word& b, const Word& n) {
    const int r = length(n);
    const int l = length(a);
    if (r > 8) throw TooLong("permutation oracle limited to words of length <= 8");
    if (l + length(b) != r) return 0;
    std::vector<int> tau(r);
    std::iota(tau.begin(), tau.end(), 0);
    long long count = 0;
    do {
        bool ok = true;
        for (int i = 1; i < l && ok; ++i) ok = tau[i - 1] < tau[i];
        for (int i = l + 1; i < r && ok; ++i) ok = tau[i - 1] < tau[i];
        for (int i = 0; i < l && ok; ++i) ok = n[tau[i]] == a[i];
        for (int i = l; i < r && ok; ++i) ok = n[tau[i]] == b[i - l];
        if (ok) ++count;
    } while (std::next_permutation(tau.begin(), tau.end()));
    return count;
}

namespace {

using engines::PolyHamiltonian;

Rational mode_pairing(const IntVec& n, const std::vector<Rational>& omega) {
    Rational acc(0);
    for (std::size_t j = 0; j < n.size(); ++j)
        acc += Rational(static_cast<long>(n[j])) * omega[j];
    return acc;
}

// All sums of up to `depth` of the given modes; aborts with
// ResonantAmbiguity when a nonzero resonant sum shows up.
void check_no_reachable_resonance(const std::vector<IntVec>& modes,
                                  const std::vector<Rational>& omega, int depth) {
    std::set<IntVec> reachable(modes.begin(), modes.end());
    for (int step = 1; step < depth; ++step) {
        std::set<IntVec> next = reachable;
        for (const auto& s : reachable)
            for (const auto& m : modes) {
                IntVec sum = s;
                for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += m[j];
                next.insert(std::move(sum));
            }
        reachable = std::move(next);
    }
    for (const auto& s : reachable) {
        bool zero = std::all_of(s.begin(), s.end(), [](auto v) { return v == 0; });
        if (!zero && mode_pairing(s, omega) == 0)
            throw ResonantAmbiguity("resonant mode reachable; normal form not unique");
    }
}

PolyHamiltonian eps_component(const PolyHamiltonian& h, int eps) {
    PolyHamiltonian out(h.dof(), h.grading());
    for (const auto& [key, c] : h.terms())
        if (key.eps == eps) out.add_term(key.k, key.l, key.eps, c);
    return out;
}

// Lie-series application, Horner form, ε-truncated.
PolyHamiltonian lie_transform(const PolyHamiltonian& chi, const PolyHamiltonian& h, int order) {
    PolyHamiltonian acc = h;
    for (int j = order - 1; j >= 1; --j)
        acc = h + truncated(bracket(chi, acc), order) * Scalar(Rational(1, j));
    return truncated(acc, order);
}

} // namespace

PolyHamiltonian deprit_birkhoff(const std::vector<Rational>& omega, const PolyHamiltonian& b,
                                int order) {
    const int d = static_cast<int>(omega.size());
    if (d > 2) throw TooLong("oracle limited to d <= 2");
    if (order > 4) throw TooLong("oracle limited to order <= 4");
    if (b.grading() != engines::HamGrading::Epsilon && !b.is_zero())
        throw SchemaError("oracle expects an epsilon-graded perturbation");

    std::vector<IntVec> modes;
    for (const auto& [key, c] : b.terms()) {
        IntVec n(d);
        for (int j = 0; j < d; ++j) n[j] = key.k[j] - key.l[j];
        modes.push_back(std::move(n));
    }
    check_no_reachable_resonance(modes, omega, order);

    PolyHamiltonian x0 = engines::oscillator_hamiltonian(omega, engines::HamGrading::Epsilon);
    PolyHamiltonian h = truncated(x0 + b, order);
    for (int p = 1; p < order; ++p) {
        PolyHamiltonian rp = eps_component(h, p);
        PolyHamiltonian chi(d, engines::HamGrading::Epsilon);
        for (const auto& [key, c] : rp.terms()) {
            IntVec n(d);
            for (int j = 0; j < d; ++j) n[j] = key.k[j] - key.l[j];
            Rational nu = mode_pairing(n, omega);
            if (nu == 0) continue; // resonant, stays in the normal form
            // solve {X0, chi} = nonresonant part: eigenvalue i·nu
            chi.add_term(key.k, key.l, key.eps, c / Scalar(Rational(0), nu));
        }
        if (chi.is_zero()) continue;
        h = lie_transform(chi, h, order);
    }
    return h - x0;
}

std::vector<std::vector<Scalar>> rayleigh_schrodinger(const std::vector<Scalar>& energies,
                                                      const engines::MatrixOperator& b,
                                                      int upto) {
    const int d = static_cast<int>(energies.size());
    if (d > 6) throw TooLong("oracle limited to dimension <= 6");
    if (upto > 3) throw TooLong("oracle limited to order <= 3");
    for (int k = 0; k < d; ++k)
        for (int j = k + 1; j < d; ++j)
            if (energies[k] == energies[j])
                throw DegenerateSpectrum("repeated eigenvalues in X0");

    auto v = [&](int p, int r, int c) -> Scalar { return b.at(p, r, c); };
    auto denom = [&](int k, int j) { return energies[k] - energies[j]; };

    std::vector<std::vector<Scalar>> corrections;
    for (int n = 1; n <= upto; ++n) corrections.emplace_back(d);

    for (int k = 0; k < d; ++k) {
        if (upto >= 1) corrections[0][k] = v(1, k, k);
        if (upto >= 2) {
            Scalar second = v(2, k, k);
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                second += v(1, k, j) * v(1, j, k) / denom(k, j);
            }
            corrections[1][k] = second;
        }
        if (upto >= 3) {
            Scalar third = v(3, k, k);
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                third += (v(1, k, j) * v(2, j, k) + v(2, k, j) * v(1, j, k)) / denom(k, j);
                for (int l = 0; l < d; ++l) {
                    if (l == k) continue;
                    third += v(1, k, j) * v(1, j, l) * v(1, l, k) / (denom(k, j) * denom(k, l));
                }
                third -= v(1, k, k) * v(1, k, j) * v(1, j, k) / (denom(k, j) * denom(k, j));
            }
            corrections[2][k] = third;
        }
    }
    return corrections;
}

} // namespace mouldcalc::oracle
