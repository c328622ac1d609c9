#include "mouldcalc/engines/vector_field.hpp"

namespace mouldcalc::engines {

void PolyVectorField::add_term(int j, MultiIndex k, const Scalar& c) {
    if (c.is_zero()) return;
    if (nvars_ == 0) nvars_ = static_cast<int>(k.size());
    if (j < 0 || j >= nvars_ || static_cast<int>(k.size()) != nvars_)
        throw SchemaError("vector field term has inconsistent dimensions");
    if (total_degree(k) < 1)
        throw SchemaError("vector field components must have no constant term");
    Key key(j, std::move(k));
    auto [it, fresh] = terms_.emplace(std::move(key), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyVectorField PolyVectorField::operator-() const { return *this * Scalar(-1); }

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
    if (is_zero()) return o;
    PolyVectorField out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key.first, key.second, c);
    return out;
}

PolyVectorField PolyVectorField::operator-(const PolyVectorField& o) const {
    return *this + (-o);
}

PolyVectorField PolyVectorField::operator*(const Scalar& c) const {
    PolyVectorField out(nvars_);
    if (c.is_zero()) return out;
    out.terms_ = terms_;
    for (auto& [key, v] : out.terms_) v *= c;
    return out;
}

PolyVectorField bracket(const PolyVectorField& a, const PolyVectorField& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.nvars() != b.nvars())
        throw SchemaError("vector fields live in different dimensions");
    PolyVectorField out(a.nvars());
    auto apply = [&](const PolyVectorField& x, const PolyVectorField& y, const Scalar& sign) {
        // sign · Σ x_{l,kx} z^{kx} ∂_l (y_{j,ky} z^{ky}) ∂_j
        for (const auto& [kx_key, cx] : x.terms()) {
            const int l = kx_key.first;
            const MultiIndex& kx = kx_key.second;
            for (const auto& [ky_key, cy] : y.terms()) {
                const int j = ky_key.first;
                const MultiIndex& ky = ky_key.second;
                if (ky[l] == 0) continue;
                MultiIndex k = ky;
                k[l] -= 1;
                for (std::size_t t = 0; t < k.size(); ++t) k[t] += kx[t];
                out.add_term(j, std::move(k), sign * cx * cy * Scalar(Rational(ky[l])));
            }
        }
    };
    apply(a, b, Scalar(1));
    apply(b, a, Scalar(-1));
    return out;
}

int order_of(const PolyVectorField& a) {
    int best = kInfiniteOrder;
    for (const auto& [key, c] : a.terms())
        best = std::min(best, total_degree(key.second) - 1);
    return best;
}

PolyVectorField truncated(const PolyVectorField& a, int m) {
    PolyVectorField out(a.nvars());
    for (const auto& [key, c] : a.terms())
        if (total_degree(key.second) - 1 < m) out.add_term(key.first, key.second, c);
    return out;
}

PolyVectorField diagonal_field(const std::vector<Rational>& omega) {
    PolyVectorField x0(static_cast<int>(omega.size()));
    for (std::size_t j = 0; j < omega.size(); ++j) {
        if (omega[j] == 0) continue;
        MultiIndex k(omega.size(), 0);
        k[j] = 1;
        x0.add_term(static_cast<int>(j), std::move(k), Scalar(omega[j]));
    }
    return x0;
}

namespace {

Scalar monomial_eigenvalue(const PolyVectorField::Key& key, const std::vector<Rational>& omega) {
    Rational acc(0);
    for (std::size_t t = 0; t < key.second.size(); ++t)
        acc += Rational(static_cast<long>(key.second[t])) * omega[t];
    acc -= omega[key.first];
    return Scalar(acc);
}

PdProblem decompose_with(const std::vector<Rational>& omega, const PolyVectorField& b,
                         int order) {
    if (!b.is_zero() && b.nvars() != static_cast<int>(omega.size()))
        throw SchemaError("perturbation dimension does not match the spectrum vector");
    for (const auto& [key, c] : b.terms())
        if (total_degree(key.second) < 2)
            throw NonDiagonalLinearPart("perturbation contains terms of series order < 2");

    PdProblem pd;
    pd.omega = omega;
    pd.problem.x0 = diagonal_field(omega);
    pd.problem.order = order;

    std::map<Scalar, PolyVectorField> groups;
    for (const auto& [key, c] : b.terms()) {
        if (total_degree(key.second) - 1 >= order) continue;
        Scalar lambda = monomial_eigenvalue(key, omega);
        auto it = groups.emplace(lambda, PolyVectorField(b.nvars())).first;
        it->second.add_term(key.first, key.second, c);
    }

    std::vector<Letter> letters;
    std::vector<Scalar> lambdas;
    std::vector<PolyVectorField> comps;
    LetterId next = 0;
    for (auto& [lambda, comp] : groups) {
        letters.push_back({next++});
        lambdas.push_back(lambda);
        comps.push_back(std::move(comp));
    }
    pd.problem.alphabet = Alphabet::with_table(std::move(letters), std::move(lambdas));
    for (LetterId id = 0; id < static_cast<LetterId>(comps.size()); ++id)
        pd.problem.components.emplace(id, std::move(comps[id]));
    pd.problem.validate();
    return pd;
}

} // namespace

PdProblem pd_decompose(const std::vector<Rational>& omega, const PolyVectorField& b, int order) {
    return decompose_with(omega, b, order);
}

PdProblem pd_decompose(const FrequencyModel& model, const PolyVectorField& b, int order) {
    // Word sums of length ≤ m−1 must stay within the model's range bound for
    // the surrogate to be resonance-faithful.
    std::int64_t worst = 0;
    for (const auto& [key, c] : b.terms()) {
        IntVec n(key.second.begin(), key.second.end());
        n[key.first] -= 1;
        for (std::int64_t q : model.quotient(n)) worst = std::max<std::int64_t>(worst, std::llabs(q));
    }
    if (worst * std::max(1, order - 1) > model.range_bound())
        throw RangeExceeded("frequency model range bound too small for this truncation");
    return decompose_with(model.effective_frequency(), b, order);
}

std::vector<Scalar> element_modes(const PolyVectorField& x, const std::vector<Rational>& omega) {
    std::vector<Scalar> modes;
    for (const auto& [key, c] : x.terms()) modes.push_back(monomial_eigenvalue(key, omega));
    return modes;
}

} // namespace mouldcalc::engines
