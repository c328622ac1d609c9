#include "mouldcalc/engines/trig_field.hpp"

namespace mouldcalc::engines {

void TrigPoly::add_term(int comp, IntVec n, MultiIndex alpha, int eps, const Scalar& c) {
    if (c.is_zero()) return;
    if (d_ == 0 && nslow_ == 0) {
        d_ = static_cast<int>(n.size());
        nslow_ = static_cast<int>(alpha.size());
        hamiltonian_ = (comp == -1);
    }
    if (static_cast<int>(n.size()) != d_ || static_cast<int>(alpha.size()) != nslow_)
        throw SchemaError("trig term has inconsistent dimensions");
    if (hamiltonian_ ? comp != -1 : (comp < 0 || comp >= d_ + nslow_))
        throw SchemaError("trig term has a bad component index");
    if (eps < 0) throw SchemaError("negative epsilon power");
    Key key{comp, std::move(n), std::move(alpha), eps};
    auto [it, fresh] = terms_.emplace(std::move(key), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TrigPoly TrigPoly::operator-() const { return *this * Scalar(-1); }

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    if (is_zero()) return o;
    if (!o.is_zero() && (d_ != o.d_ || nslow_ != o.nslow_ || hamiltonian_ != o.hamiltonian_))
        throw SchemaError("mixed trig flavors");
    TrigPoly out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key.comp, key.n, key.alpha, key.eps, c);
    return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + (-o); }

TrigPoly TrigPoly::operator*(const Scalar& c) const {
    TrigPoly out(d_, nslow_, hamiltonian_);
    if (c.is_zero()) return out;
    out.terms_ = terms_;
    for (auto& [key, v] : out.terms_) v *= c;
    return out;
}

namespace {

// ∂ of the scalar coefficient e^{i⟨n,φ⟩} I^α along variable `var`
// (var < d: angle; var ≥ d: slow). Appends the derivative terms to out
// through the callback (key-without-comp, coefficient factor).
template <typename F>
void derive(const TrigPoly::Key& key, const Scalar& c, int var, int d, F&& emit) {
    if (var < d) {
        if (key.n[var] == 0) return;
        emit(key.n, key.alpha, c * Scalar(Rational(0), Rational(static_cast<long>(key.n[var]))));
    } else {
        int s = var - d;
        if (key.alpha[s] == 0) return;
        MultiIndex alpha = key.alpha;
        alpha[s] -= 1;
        emit(key.n, alpha, c * Scalar(Rational(key.alpha[s])));
    }
}

IntVec add_vec(const IntVec& a, const IntVec& b) {
    IntVec out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

MultiIndex add_idx(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

} // namespace

TrigPoly bracket(const TrigPoly& a, const TrigPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.fast_dims() != b.fast_dims() || a.slow_dims() != b.slow_dims() ||
        a.hamiltonian() != b.hamiltonian())
        throw SchemaError("trig operands are incompatible");
    const int d = a.fast_dims();
    const int nslow = a.slow_dims();
    TrigPoly out(d, nslow, a.hamiltonian());

    if (a.hamiltonian()) {
        // {f,g} = Σ_j ∂_{I_j}f ∂_{φ_j}g − ∂_{φ_j}f ∂_{I_j}g
        for (const auto& [ka, ca] : a.terms())
            for (const auto& [kb, cb] : b.terms())
                for (int j = 0; j < nslow && j < d; ++j) {
                    derive(ka, ca, d + j, d, [&](const IntVec& na, const MultiIndex& aa,
                                                 const Scalar& va) {
                        derive(kb, cb, j, d, [&](const IntVec& nb, const MultiIndex& ab,
                                                 const Scalar& vb) {
                            out.add_term(-1, add_vec(na, nb), add_idx(aa, ab),
                                         ka.eps + kb.eps, va * vb);
                        });
                    });
                    derive(ka, ca, j, d, [&](const IntVec& na, const MultiIndex& aa,
                                             const Scalar& va) {
                        derive(kb, cb, d + j, d, [&](const IntVec& nb, const MultiIndex& ab,
                                                     const Scalar& vb) {
                            out.add_term(-1, add_vec(na, nb), add_idx(aa, ab),
                                         ka.eps + kb.eps, -(va * vb));
                        });
                    });
                }
        return out;
    }

    // [X,Y]^{(c)} = Σ_l X^{(l)} ∂_l Y^{(c)} − Y^{(l)} ∂_l X^{(c)}
    auto apply = [&](const TrigPoly& x, const TrigPoly& y, const Scalar& sign) {
        for (const auto& [kx, cx] : x.terms())
            for (const auto& [ky, cy] : y.terms())
                derive(ky, cy, kx.comp, d,
                       [&](const IntVec& n, const MultiIndex& alpha, const Scalar& v) {
                           out.add_term(ky.comp, add_vec(kx.n, n), add_idx(kx.alpha, alpha),
                                        kx.eps + ky.eps, sign * cx * v);
                       });
    };
    apply(a, b, Scalar(1));
    apply(b, a, Scalar(-1));
    return out;
}

int order_of(const TrigPoly& a) {
    int best = kInfiniteOrder;
    for (const auto& [key, c] : a.terms()) best = std::min(best, static_cast<int>(key.eps));
    return best;
}

TrigPoly truncated(const TrigPoly& a, int m) {
    TrigPoly out(a.fast_dims(), a.slow_dims(), a.hamiltonian());
    for (const auto& [key, c] : a.terms())
        if (key.eps < m) out.add_term(key.comp, key.n, key.alpha, key.eps, c);
    return out;
}

TrigPoly involution(const TrigPoly& a) {
    TrigPoly out(a.fast_dims(), a.slow_dims(), a.hamiltonian());
    for (const auto& [key, c] : a.terms()) {
        IntVec n = key.n;
        for (auto& v : n) v = -v;
        out.add_term(key.comp, std::move(n), key.alpha, key.eps, c.conj());
    }
    return out;
}

bool is_real(const TrigPoly& a) { return involution(a) == a; }

TrigPoly fast_rotation(const std::vector<Rational>& omega, int nslow, bool hamiltonian) {
    const int d = static_cast<int>(omega.size());
    TrigPoly x0(d, nslow, hamiltonian);
    for (int j = 0; j < d; ++j) {
        if (omega[j] == 0) continue;
        if (hamiltonian) {
            MultiIndex alpha(nslow, 0);
            alpha[j] = 1; // requires nslow == d in the Hamiltonian flavor
            x0.add_term(-1, IntVec(d, 0), std::move(alpha), 0, Scalar(omega[j]));
        } else {
            x0.add_term(j, IntVec(d, 0), MultiIndex(nslow, 0), 0, Scalar(omega[j]));
        }
    }
    return x0;
}

namespace {

AveragingProblem decompose_with(const std::vector<Rational>& omega, const TrigPoly& b,
                                int order, bool real, const FrequencyModel* model) {
    const int d = static_cast<int>(omega.size());
    if (!b.is_zero() && b.fast_dims() != d)
        throw SchemaError("perturbation does not match the frequency vector");
    if (b.hamiltonian() && b.slow_dims() != d)
        throw SchemaError("hamiltonian averaging requires as many actions as angles");
    if (order_of(b) < 1)
        throw OrderViolation("averaging perturbation must have eps-order >= 1");
    if (real && !is_real(b))
        throw RealnessViolation("perturbation is not fixed by the realness involution");

    AveragingProblem ap;
    ap.omega = omega;
    ap.problem.x0 = fast_rotation(omega, b.slow_dims(), b.hamiltonian());
    ap.problem.order = order;

    std::map<IntVec, TrigPoly> groups;
    for (const auto& [key, c] : b.terms()) {
        if (key.eps >= order) continue;
        auto it = groups.emplace(key.n, TrigPoly(d, b.slow_dims(), b.hamiltonian())).first;
        it->second.add_term(key.comp, key.n, key.alpha, key.eps, c);
    }

    std::vector<Letter> letters;
    letters.reserve(groups.size());
    for (const auto& [n, comp] : groups) letters.push_back(n);
    if (model) {
        ap.problem.alphabet = Alphabet::with_model(letters, *model);
    } else {
        std::vector<Scalar> lambdas;
        for (const auto& n : letters) {
            Rational acc(0);
            for (int j = 0; j < d; ++j) acc += Rational(static_cast<long>(n[j])) * omega[j];
            lambdas.push_back(Scalar(Rational(0), acc));
        }
        ap.problem.alphabet = Alphabet::with_table(letters, std::move(lambdas));
    }
    for (auto& [n, comp] : groups)
        ap.problem.components.emplace(ap.problem.alphabet->require(n), std::move(comp));
    ap.problem.validate();
    return ap;
}

} // namespace

AveragingProblem averaging_decompose(const std::vector<Rational>& omega, const TrigPoly& b,
                                     int order, bool real) {
    return decompose_with(omega, b, order, real, nullptr);
}

AveragingProblem averaging_decompose(const FrequencyModel& model, const TrigPoly& b, int order,
                                     bool real) {
    std::int64_t worst = 0;
    for (const auto& [key, c] : b.terms())
        for (std::int64_t q : model.quotient(key.n)) worst = std::max<std::int64_t>(worst, std::llabs(q));
    if (worst * std::max(1, order - 1) > model.range_bound())
        throw RangeExceeded("frequency model range bound too small for this truncation");
    return decompose_with(model.effective_frequency(), b, order, real, &model);
}

std::vector<IntVec> element_modes(const TrigPoly& x) {
    std::vector<IntVec> out;
    for (const auto& [key, c] : x.terms()) {
        bool seen = false;
        for (const auto& m : out)
            if (m == key.n) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(key.n);
    }
    return out;
}

bool phase_free(const TrigPoly& x, int upto) {
    for (const auto& [key, c] : x.terms()) {
        if (key.eps >= upto) continue;
        for (auto v : key.n)
            if (v != 0) return false;
    }
    return true;
}

} // namespace mouldcalc::engines
