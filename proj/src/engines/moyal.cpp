#include "mouldcalc/engines/moyal.hpp"

#include <sstream>

namespace mouldcalc::engines {

HbarPoly hbar_mul(const HbarPoly& a, const HbarPoly& b) {
    HbarPoly out;
    for (const auto& [pa, ca] : a)
        for (const auto& [pb, cb] : b) {
            Scalar v = ca * cb;
            if (v.is_zero()) continue;
            auto [it, fresh] = out.emplace(pa + pb, v);
            if (!fresh) {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    return out;
}

HbarPoly hbar_shift(const HbarPoly& a, int power, const Scalar& factor) {
    HbarPoly out;
    if (factor.is_zero()) return out;
    for (const auto& [p, c] : a) {
        Scalar v = c * factor;
        if (!v.is_zero()) out.emplace(p + power, v);
    }
    return out;
}

void MoyalSymbol::add_term(MultiIndex x, MultiIndex xi, int eps, const HbarPoly& c) {
    if (c.empty()) return;
    if (d_ == 0) d_ = static_cast<int>(x.size());
    if (static_cast<int>(x.size()) != d_ || static_cast<int>(xi.size()) != d_ || eps < 0)
        throw SchemaError("symbol term has inconsistent dimensions");
    Key key{std::move(x), std::move(xi), eps};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
        return;
    }
    for (const auto& [p, v] : c) {
        auto [jt, fresh] = it->second.emplace(p, v);
        if (!fresh) {
            jt->second += v;
            if (jt->second.is_zero()) it->second.erase(jt);
        }
    }
    if (it->second.empty()) terms_.erase(it);
}

MoyalSymbol MoyalSymbol::operator-() const { return *this * Scalar(-1); }

MoyalSymbol MoyalSymbol::operator+(const MoyalSymbol& o) const {
    if (is_zero()) return o;
    if (!o.is_zero() && (d_ != o.d_ || quantum_ != o.quantum_))
        throw SchemaError("mixed symbol flavors");
    MoyalSymbol out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key.x, key.xi, key.eps, c);
    return out;
}

MoyalSymbol MoyalSymbol::operator-(const MoyalSymbol& o) const { return *this + (-o); }

MoyalSymbol MoyalSymbol::operator*(const Scalar& c) const {
    MoyalSymbol out(d_, quantum_);
    if (c.is_zero()) return out;
    for (const auto& [key, poly] : terms_) {
        HbarPoly scaled;
        for (const auto& [p, v] : poly) scaled.emplace(p, v * c);
        out.terms_.emplace(key, std::move(scaled));
    }
    return out;
}

namespace {

// One application of D = Σ_j (∂_{x_j} ⊗ ∂_{ξ_j} − ∂_{ξ_j} ⊗ ∂_{x_j}) to a
// sparse tensor {(aL,bL,aR,bR) → Scalar}.
struct TensorKey {
    MultiIndex ax, axi, bx, bxi;
    auto operator<=>(const TensorKey&) const = default;
};
using Tensor = std::map<TensorKey, Scalar>;

Tensor apply_bidifferential(const Tensor& t, int d) {
    Tensor out;
    auto add = [&](TensorKey key, const Scalar& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = out.emplace(std::move(key), v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) out.erase(it);
        }
    };
    for (const auto& [key, c] : t)
        for (int j = 0; j < d; ++j) {
            if (key.ax[j] > 0 && key.bxi[j] > 0) {
                TensorKey k = key;
                Scalar f = c * Scalar(Rational(k.ax[j])) * Scalar(Rational(k.bxi[j]));
                k.ax[j] -= 1;
                k.bxi[j] -= 1;
                add(std::move(k), f);
            }
            if (key.axi[j] > 0 && key.bx[j] > 0) {
                TensorKey k = key;
                Scalar f = c * Scalar(Rational(k.axi[j])) * Scalar(Rational(k.bx[j]));
                k.axi[j] -= 1;
                k.bx[j] -= 1;
                add(std::move(k), -f);
            }
        }
    return out;
}

MoyalSymbol sine_series_bracket(const MoyalSymbol& f, const MoyalSymbol& g, bool full) {
    if (f.is_zero() || g.is_zero()) return {};
    if (f.dims() != g.dims()) throw SchemaError("symbol operands are incompatible");
    const int d = f.dims();
    MoyalSymbol out(d, f.quantum());
    for (const auto& [kf, pf] : f.terms())
        for (const auto& [kg, pg] : g.terms()) {
            HbarPoly coeff = hbar_mul(pf, pg);
            if (coeff.empty()) continue;
            Tensor t{{TensorKey{kf.x, kf.xi, kg.x, kg.xi}, Scalar(1)}};
            Rational factorial(1); // s!
            int sign = 1;
            for (int s = 1; !t.empty(); ++s) {
                t = apply_bidifferential(t, d);
                factorial *= s;
                if (s % 2 == 1) {
                    // contributes (−1)^{(s−1)/2} ħ^{s−1} / s! · D^s|diag
                    for (const auto& [key, c] : t) {
                        MultiIndex x = key.ax, xi = key.axi;
                        for (int q = 0; q < d; ++q) {
                            x[q] += key.bx[q];
                            xi[q] += key.bxi[q];
                        }
                        Scalar factor = c * Scalar(Rational(sign) / factorial);
                        out.add_term(std::move(x), std::move(xi), kf.eps + kg.eps,
                                     hbar_shift(coeff, s - 1, factor));
                    }
                    sign = -sign;
                    if (!full) break; // Poisson: first layer only
                }
            }
        }
    return out;
}

} // namespace

MoyalSymbol moyal_bracket(const MoyalSymbol& f, const MoyalSymbol& g) {
    return sine_series_bracket(f, g, true);
}

MoyalSymbol poisson_bracket(const MoyalSymbol& f, const MoyalSymbol& g) {
    return sine_series_bracket(f, g, false);
}

MoyalSymbol bracket(const MoyalSymbol& a, const MoyalSymbol& b) {
    if (!a.is_zero() && !b.is_zero() && a.quantum() != b.quantum())
        throw SchemaError("mixing quantum and classical symbols");
    bool quantum = a.is_zero() ? b.quantum() : a.quantum();
    return quantum ? moyal_bracket(a, b) : poisson_bracket(a, b);
}

int order_of(const MoyalSymbol& a) {
    int best = kInfiniteOrder;
    for (const auto& [key, c] : a.terms()) best = std::min(best, static_cast<int>(key.eps));
    return best;
}

MoyalSymbol truncated(const MoyalSymbol& a, int m) {
    MoyalSymbol out(a.dims(), a.quantum());
    for (const auto& [key, c] : a.terms())
        if (key.eps < m) out.add_term(key.x, key.xi, key.eps, c);
    return out;
}

MoyalSymbol at_hbar_zero(const MoyalSymbol& a, bool quantum_flag) {
    MoyalSymbol out(a.dims(), quantum_flag);
    for (const auto& [key, poly] : a.terms()) {
        auto it = poly.find(0);
        if (it != poly.end()) out.add_term(key.x, key.xi, key.eps, it->second);
    }
    return out;
}

bool hbar_powers_even(const MoyalSymbol& a) {
    for (const auto& [key, poly] : a.terms())
        for (const auto& [p, c] : poly)
            if (p % 2 != 0) return false;
    return true;
}

MoyalSymbol flagged(const MoyalSymbol& a, bool quantum) {
    MoyalSymbol out(a.dims(), quantum);
    for (const auto& [key, poly] : a.terms()) out.add_term(key.x, key.xi, key.eps, poly);
    return out;
}

MoyalSymbol oscillator_symbol(const std::vector<Rational>& omega, bool quantum) {
    const int d = static_cast<int>(omega.size());
    MoyalSymbol s(d, quantum);
    for (int j = 0; j < d; ++j) {
        MultiIndex xi(d, 0);
        xi[j] = 2;
        s.add_term(MultiIndex(d, 0), xi, 0, Scalar(Rational(1, 2)));
        MultiIndex x(d, 0);
        x[j] = 2;
        s.add_term(std::move(x), MultiIndex(d, 0), 0, Scalar(omega[j] * omega[j] / 2));
    }
    return s;
}

namespace {

// Linear substitution engine: variable t ↦ Σ coeff·(new variable), with new
// variables split into (x-block, ξ-block).
struct LinearForm {
    // pairs (is_xi, index, coefficient)
    std::vector<std::tuple<bool, int, Scalar>> parts;
};

MoyalSymbol substitute(const MoyalSymbol& a, const std::vector<LinearForm>& x_forms,
                       const std::vector<LinearForm>& xi_forms) {
    const int d = a.dims();
    MoyalSymbol out(d, a.quantum());
    for (const auto& [key, poly] : a.terms()) {
        MoyalSymbol acc(d, a.quantum());
        acc.add_term(MultiIndex(d, 0), MultiIndex(d, 0), key.eps, poly);
        auto mul_form = [&](MoyalSymbol cur, const LinearForm& form) {
            MoyalSymbol next(d, a.quantum());
            for (const auto& [k2, p2] : cur.terms())
                for (const auto& [is_xi, idx, coeff] : form.parts) {
                    MultiIndex x = k2.x, xi = k2.xi;
                    (is_xi ? xi : x)[idx] += 1;
                    HbarPoly scaled;
                    for (const auto& [hp, hv] : p2) {
                        Scalar v = hv * coeff;
                        if (!v.is_zero()) scaled.emplace(hp, v);
                    }
                    next.add_term(std::move(x), std::move(xi), k2.eps, scaled);
                }
            return next;
        };
        for (int j = 0; j < d; ++j) {
            for (int e = 0; e < key.x[j]; ++e) acc = mul_form(acc, x_forms[j]);
            for (int e = 0; e < key.xi[j]; ++e) acc = mul_form(acc, xi_forms[j]);
        }
        out = out + acc;
    }
    return out;
}

} // namespace

SymbolProblem symbol_decompose(const std::vector<Rational>& omega, const MoyalSymbol& b,
                               int order, bool quantum) {
    const int d = static_cast<int>(omega.size());
    if (!b.is_zero() && b.dims() != d)
        throw SchemaError("perturbation does not match the frequency vector");
    if (order_of(b) < 1)
        throw OrderViolation("symbol perturbation must have eps-order >= 1");
    for (const auto& w : omega)
        if (w == 0) throw SchemaError("oscillator frequencies must be nonzero");

    // x_j = (u_j − i v_j)/(2 ω_j), ξ_j = (v_j − i u_j)/2 — u in the x-block,
    // v in the ξ-block of the substituted symbol.
    std::vector<LinearForm> to_uv_x(d), to_uv_xi(d);
    for (int j = 0; j < d; ++j) {
        Scalar inv2w = inverse(Scalar(2 * omega[j]));
        to_uv_x[j].parts = {{false, j, inv2w}, {true, j, -Scalar::i() * inv2w}};
        to_uv_xi[j].parts = {{true, j, Scalar(Rational(1, 2))},
                             {false, j, Scalar(Rational(0), Rational(-1, 2))}};
    }
    // u_j = ω_j x_j + i ξ_j, v_j = i ω_j x_j + ξ_j.
    std::vector<LinearForm> back_x(d), back_xi(d);
    for (int j = 0; j < d; ++j) {
        back_x[j].parts = {{false, j, Scalar(omega[j])}, {true, j, Scalar::i()}};
        back_xi[j].parts = {{false, j, Scalar(Rational(0), omega[j])},
                            {true, j, Scalar(1)}};
    }

    MoyalSymbol in_uv = substitute(b, to_uv_x, to_uv_xi);

    SymbolProblem sp;
    sp.omega = omega;
    sp.problem.x0 = oscillator_symbol(omega, quantum);
    sp.problem.order = order;

    // Group the (u,v)-monomials by the difference mode, then convert each
    // group back to (x,ξ).
    std::map<IntVec, MoyalSymbol> groups;
    for (const auto& [key, poly] : in_uv.terms()) {
        if (key.eps >= order) continue;
        IntVec n(d);
        for (int j = 0; j < d; ++j) n[j] = key.x[j] - key.xi[j];
        auto it = groups.emplace(n, MoyalSymbol(d, quantum)).first;
        it->second.add_term(key.x, key.xi, key.eps, poly);
    }

    std::vector<Letter> letters;
    std::vector<Scalar> lambdas;
    for (const auto& [n, comp] : groups) {
        letters.push_back(n);
        Rational acc(0);
        for (int j = 0; j < d; ++j) acc += Rational(static_cast<long>(n[j])) * omega[j];
        lambdas.push_back(Scalar(Rational(0), acc));
    }
    sp.problem.alphabet = Alphabet::with_table(letters, std::move(lambdas));
    for (auto& [n, comp] : groups) {
        MoyalSymbol back = substitute(flagged(comp, quantum), back_x, back_xi);
        sp.problem.components.emplace(sp.problem.alphabet->require(n), std::move(back));
    }
    sp.problem.validate();
    return sp;
}

namespace {

std::string render_eps_part(const MoyalSymbol& s, int eps, bool hbar_part) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, poly] : s.terms()) {
        if (key.eps != eps) continue;
        for (const auto& [hp, hv] : poly) {
            if (hbar_part ? hp == 0 : hp != 0) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << to_string(hv) << ")";
            for (int j = 0; j < s.dims(); ++j) {
                if (key.x[j]) os << "*x" << j << "^" << key.x[j];
                if (key.xi[j]) os << "*xi" << j << "^" << key.xi[j];
            }
            if (hp) os << "*hbar^" << hp;
        }
    }
    return first ? "0" : os.str();
}

} // namespace

SemiclassicalReport semiclassical_compare(const std::vector<Rational>& omega,
                                          const MoyalSymbol& b_classical, int order) {
    SymbolProblem classical = symbol_decompose(omega, at_hbar_zero(b_classical), order, false);
    SymbolProblem quantum = symbol_decompose(omega, flagged(b_classical, true), order, true);

    auto cl = normal_form_zero_gauge(classical.problem);
    auto qu = normal_form_zero_gauge(quantum.problem);

    SemiclassicalReport report;
    report.classical_ok = cl.ok();
    report.quantum_ok = qu.ok();
    report.z_classical = truncated(cl.z, order);
    report.z_quantum = truncated(qu.z, order);

    MoyalSymbol z_qu_h0 = at_hbar_zero(report.z_quantum, false);
    report.termwise_equal = (z_qu_h0 == report.z_classical);
    MoyalSymbol corrections = flagged(report.z_quantum, false) - z_qu_h0;
    report.corrections_even_in_hbar = hbar_powers_even(corrections);

    for (int eps = 1; eps < order; ++eps) {
        SemiclassicalRow row;
        row.eps = eps;
        row.classical = render_eps_part(report.z_classical, eps, false);
        row.quantum_h0 = render_eps_part(z_qu_h0, eps, false);
        row.corrections = render_eps_part(report.z_quantum, eps, true);
        row.equal = (row.classical == row.quantum_h0);
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace mouldcalc::engines
