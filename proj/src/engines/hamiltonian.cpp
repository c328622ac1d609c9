#include "mouldcalc/engines/hamiltonian.hpp"

namespace mouldcalc::engines {

namespace {

int term_order(const PolyHamiltonian::Key& key, HamGrading grading) {
    if (grading == HamGrading::Epsilon) return key.eps;
    return total_degree(key.k) + total_degree(key.l) - 2;
}

Scalar i_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return Scalar(1);
        case 1: return Scalar::i();
        case 2: return Scalar(-1);
        default: return -Scalar::i();
    }
}

} // namespace

void PolyHamiltonian::add_term(MultiIndex k, MultiIndex l, int eps, const Scalar& c) {
    if (c.is_zero()) return;
    if (dof_ == 0) dof_ = static_cast<int>(k.size());
    if (static_cast<int>(k.size()) != dof_ || static_cast<int>(l.size()) != dof_ || eps < 0)
        throw SchemaError("hamiltonian term has inconsistent dimensions");
    Key key{std::move(k), std::move(l), eps};
    auto [it, fresh] = terms_.emplace(std::move(key), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyHamiltonian PolyHamiltonian::operator-() const { return *this * Scalar(-1); }

PolyHamiltonian PolyHamiltonian::operator+(const PolyHamiltonian& o) const {
    if (is_zero()) return o;
    if (!o.is_zero() && grading_ != o.grading_)
        throw SchemaError("mixed hamiltonian gradings");
    PolyHamiltonian out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key.k, key.l, key.eps, c);
    return out;
}

PolyHamiltonian PolyHamiltonian::operator-(const PolyHamiltonian& o) const {
    return *this + (-o);
}

PolyHamiltonian PolyHamiltonian::operator*(const Scalar& c) const {
    PolyHamiltonian out(dof_, grading_);
    if (c.is_zero()) return out;
    out.terms_ = terms_;
    for (auto& [key, v] : out.terms_) v *= c;
    return out;
}

PolyHamiltonian bracket(const PolyHamiltonian& a, const PolyHamiltonian& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.dof() != b.dof() || a.grading() != b.grading())
        throw SchemaError("hamiltonian operands are incompatible");
    PolyHamiltonian out(a.dof(), a.grading());
    const int d = a.dof();
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            Scalar prod = ca * cb;
            for (int j = 0; j < d; ++j) {
                // 2(∂_{u_j}a ∂_{v_j}b − ∂_{v_j}a ∂_{u_j}b)
                long coeff = 2L * (static_cast<long>(ka.k[j]) * kb.l[j] -
                                   static_cast<long>(ka.l[j]) * kb.k[j]);
                if (coeff == 0) continue;
                MultiIndex k = ka.k, l = ka.l;
                for (int t = 0; t < d; ++t) {
                    k[t] += kb.k[t];
                    l[t] += kb.l[t];
                }
                k[j] -= 1;
                l[j] -= 1;
                out.add_term(std::move(k), std::move(l), ka.eps + kb.eps,
                             prod * Scalar(Rational(coeff)));
            }
        }
    return out;
}

int order_of(const PolyHamiltonian& a) {
    int best = kInfiniteOrder;
    for (const auto& [key, c] : a.terms())
        best = std::min(best, term_order(key, a.grading()));
    return best;
}

PolyHamiltonian truncated(const PolyHamiltonian& a, int m) {
    PolyHamiltonian out(a.dof(), a.grading());
    for (const auto& [key, c] : a.terms())
        if (term_order(key, a.grading()) < m) out.add_term(key.k, key.l, key.eps, c);
    return out;
}

PolyHamiltonian involution(const PolyHamiltonian& a) {
    PolyHamiltonian out(a.dof(), a.grading());
    for (const auto& [key, c] : a.terms()) {
        int deg = total_degree(key.k) + total_degree(key.l);
        out.add_term(key.l, key.k, key.eps, i_power(-deg) * c.conj());
    }
    return out;
}

bool is_real(const PolyHamiltonian& a) { return involution(a) == a; }

PolyHamiltonian oscillator_hamiltonian(const std::vector<Rational>& omega, HamGrading grading) {
    const int d = static_cast<int>(omega.size());
    PolyHamiltonian x0(d, grading);
    for (int j = 0; j < d; ++j) {
        if (omega[j] == 0) continue;
        MultiIndex k(d, 0), l(d, 0);
        k[j] = 1;
        l[j] = 1;
        x0.add_term(std::move(k), std::move(l), 0,
                    Scalar(Rational(0), -omega[j] / 2)); // −(i/2)·ω_j
    }
    return x0;
}

PolyHamiltonian from_xy_terms(
    int dof, HamGrading grading,
    const std::vector<std::tuple<MultiIndex, MultiIndex, int, Scalar>>& xy_terms) {
    PolyHamiltonian out(dof, grading);
    const Scalar half(Rational(1, 2));
    const Scalar minus_i_half = Scalar(Rational(0), Rational(-1, 2));
    for (const auto& [kx, ky, eps, c] : xy_terms) {
        if (static_cast<int>(kx.size()) != dof || static_cast<int>(ky.size()) != dof)
            throw SchemaError("xy term has wrong dimension");
        // expand Π_j x_j^{kx_j} y_j^{ky_j} with x = (u − iv)/2, y = (v − iu)/2
        PolyHamiltonian acc(dof, grading);
        acc.add_term(MultiIndex(dof, 0), MultiIndex(dof, 0), eps, c);
        auto mul_linear = [&](const PolyHamiltonian& h, int j, const Scalar& cu,
                              const Scalar& cv) {
            PolyHamiltonian next(dof, grading);
            for (const auto& [key, v] : h.terms()) {
                MultiIndex k = key.k;
                k[j] += 1;
                next.add_term(std::move(k), key.l, key.eps, v * cu);
                MultiIndex l = key.l;
                l[j] += 1;
                next.add_term(key.k, std::move(l), key.eps, v * cv);
            }
            return next;
        };
        for (int j = 0; j < dof; ++j) {
            for (int e = 0; e < kx[j]; ++e) acc = mul_linear(acc, j, half, minus_i_half);
            for (int e = 0; e < ky[j]; ++e) acc = mul_linear(acc, j, minus_i_half, half);
        }
        out = out + acc;
    }
    return out;
}

namespace {

BirkhoffProblem decompose_with(const std::vector<Rational>& omega, const PolyHamiltonian& b,
                               int order, bool real, const FrequencyModel* model) {
    const int d = static_cast<int>(omega.size());
    if (!b.is_zero() && b.dof() != d)
        throw SchemaError("perturbation dimension does not match the frequency vector");
    for (const auto& [key, c] : b.terms()) {
        if (b.grading() == HamGrading::Degree &&
            total_degree(key.k) + total_degree(key.l) < 3)
            throw OrderViolation("degree-graded perturbation needs series order >= 3");
        if (b.grading() == HamGrading::Epsilon && key.eps < 1)
            throw OrderViolation("epsilon-graded perturbation needs eps-order >= 1");
    }
    if (real && !is_real(b))
        throw RealnessViolation("perturbation is not fixed by the realness involution");

    BirkhoffProblem bp;
    bp.omega = omega;
    bp.problem.x0 = oscillator_hamiltonian(omega, b.is_zero() ? HamGrading::Degree : b.grading());
    bp.problem.order = order;

    std::map<IntVec, PolyHamiltonian> groups;
    for (const auto& [key, c] : b.terms()) {
        if (term_order(key, b.grading()) >= order) continue;
        IntVec n(d);
        for (int j = 0; j < d; ++j) n[j] = key.k[j] - key.l[j];
        auto it = groups.emplace(n, PolyHamiltonian(d, b.grading())).first;
        it->second.add_term(key.k, key.l, key.eps, c);
    }

    std::vector<Letter> letters;
    letters.reserve(groups.size());
    for (const auto& [n, comp] : groups) letters.push_back(n);
    if (model) {
        bp.problem.alphabet = Alphabet::with_model(letters, *model);
    } else {
        std::vector<Scalar> lambdas;
        lambdas.reserve(letters.size());
        for (const auto& n : letters) {
            Rational acc(0);
            for (int j = 0; j < d; ++j) acc += Rational(static_cast<long>(n[j])) * omega[j];
            lambdas.push_back(Scalar(Rational(0), acc)); // i·⟨n,ω⟩
        }
        bp.problem.alphabet = Alphabet::with_table(letters, std::move(lambdas));
    }
    for (auto& [n, comp] : groups)
        bp.problem.components.emplace(bp.problem.alphabet->require(n), std::move(comp));
    bp.problem.validate();
    return bp;
}

} // namespace

BirkhoffProblem birkhoff_decompose(const std::vector<Rational>& omega,
                                   const PolyHamiltonian& b, int order, bool real) {
    return decompose_with(omega, b, order, real, nullptr);
}

BirkhoffProblem birkhoff_decompose(const FrequencyModel& model, const PolyHamiltonian& b,
                                   int order, bool real) {
    std::vector<IntVec> modes;
    for (const auto& [key, c] : b.terms()) {
        IntVec n(key.k.size());
        for (std::size_t j = 0; j < key.k.size(); ++j) n[j] = key.k[j] - key.l[j];
        modes.push_back(std::move(n));
    }
    std::int64_t worst = 0;
    for (const auto& n : modes)
        for (std::int64_t q : model.quotient(n)) worst = std::max<std::int64_t>(worst, std::llabs(q));
    if (worst * std::max(1, order - 1) > model.range_bound())
        throw RangeExceeded("frequency model range bound too small for this truncation");
    return decompose_with(model.effective_frequency(), b, order, real, &model);
}

std::vector<IntVec> element_modes(const PolyHamiltonian& x) {
    std::vector<IntVec> out;
    for (const auto& [key, c] : x.terms()) {
        IntVec n(key.k.size());
        for (std::size_t j = 0; j < key.k.size(); ++j) n[j] = key.k[j] - key.l[j];
        bool seen = false;
        for (const auto& m : out)
            if (m == n) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(std::move(n));
    }
    return out;
}

} // namespace mouldcalc::engines
