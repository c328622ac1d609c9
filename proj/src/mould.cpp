#include "mouldcalc/mould.hpp"

#include <sstream>

namespace mouldcalc {

Mould mould_zero(const AlphabetPtr& a, int max_len) { return Mould(a, max_len); }

Mould mould_one(const AlphabetPtr& a, int max_len) {
    Mould m(a, max_len);
    m.set({}, Scalar(1));
    return m;
}

Mould mould_letters(const AlphabetPtr& a, int max_len) {
    Mould m(a, max_len);
    if (max_len >= 1)
        for (LetterId id = 0; id < a->size(); ++id) m.set({id}, Scalar(1));
    return m;
}

Mould mould_add(const Mould& m, const Mould& n) {
    require_same_alphabet(m.alphabet(), n.alphabet());
    Mould out(m.alphabet(), std::min(m.max_len(), n.max_len()));
    for (const auto& [w, v] : m.entries()) out.add(w, v);
    for (const auto& [w, v] : n.entries()) out.add(w, v);
    return out;
}

Mould mould_sub(const Mould& m, const Mould& n) {
    require_same_alphabet(m.alphabet(), n.alphabet());
    Mould out(m.alphabet(), std::min(m.max_len(), n.max_len()));
    for (const auto& [w, v] : m.entries()) out.add(w, v);
    for (const auto& [w, v] : n.entries()) out.add(w, -v);
    return out;
}

Mould mould_neg(const Mould& m) { return mould_scale(m, Scalar(-1)); }

Mould mould_scale(const Mould& m, const Scalar& c) {
    Mould out(m.alphabet(), m.max_len());
    if (c.is_zero()) return out;
    for (const auto& [w, v] : m.entries()) out.set(w, v * c);
    return out;
}

Mould mould_mul(const Mould& m, const Mould& n) {
    require_same_alphabet(m.alphabet(), n.alphabet());
    Mould out(m.alphabet(), std::min(m.max_len(), n.max_len()));
    for (const auto& [a, va] : m.entries()) {
        if (length(a) > out.max_len()) break;
        for (const auto& [b, vb] : n.entries()) {
            if (length(a) + length(b) > out.max_len()) break;
            out.add(concat(a, b), va * vb);
        }
    }
    return out;
}

Mould mould_bracket(const Mould& m, const Mould& n) {
    return mould_sub(mould_mul(m, n), mould_mul(n, m));
}

Mould mould_inverse(const Mould& m) {
    Scalar head = m.empty_value();
    if (head.is_zero())
        throw NotInvertible("mould has vanishing value on the empty word");
    Mould inv(m.alphabet(), m.max_len());
    Scalar head_inv = inverse(head);
    inv.set({}, head_inv);
    // Length induction: M^∅ P^w = −Σ_{w=ab, a≠∅} M^a P^b with r(b) < r(w).
    for (int r = 1; r <= m.max_len(); ++r) {
        std::map<Word, Scalar, WordLess> acc;
        for (const auto& [a, va] : m.entries()) {
            if (a.empty()) continue;
            if (length(a) > r) break;
            for (const auto& [b, vb] : inv.entries()) {
                if (length(b) > r - length(a)) break;
                if (length(b) != r - length(a)) continue;
                Scalar term = va * vb;
                auto [it, fresh] = acc.emplace(concat(a, b), term);
                if (!fresh) it->second += term;
            }
        }
        for (auto& [w, v] : acc) inv.set(w, -head_inv * v);
    }
    return inv;
}

Mould mould_exp(const Mould& m) {
    if (!m.empty_value().is_zero())
        throw BadConstantTerm("exp requires vanishing value on the empty word");
    Mould acc = mould_one(m.alphabet(), m.max_len());
    Mould power = mould_one(m.alphabet(), m.max_len());
    Rational factorial(1);
    for (int k = 1; k <= m.max_len(); ++k) {
        power = mould_mul(power, m);
        if (power.is_zero()) break;
        factorial *= k;
        acc = mould_add(acc, mould_scale(power, Scalar(Rational(1) / factorial)));
    }
    return acc;
}

Mould mould_log(const Mould& s) {
    if (s.empty_value() != Scalar(1))
        throw BadConstantTerm("log requires value 1 on the empty word");
    Mould t = mould_sub(s, mould_one(s.alphabet(), s.max_len()));
    Mould acc = mould_zero(s.alphabet(), s.max_len());
    Mould power = mould_one(s.alphabet(), s.max_len());
    for (int k = 1; k <= s.max_len(); ++k) {
        power = mould_mul(power, t);
        if (power.is_zero()) break;
        Rational coeff = Rational((k % 2) ? 1 : -1) / Rational(k);
        acc = mould_add(acc, mould_scale(power, Scalar(coeff)));
    }
    return acc;
}

Mould nabla(const Mould& m, const std::function<Scalar(LetterId)>& phi) {
    Mould out(m.alphabet(), m.max_len());
    for (const auto& [w, v] : m.entries()) {
        Scalar f;
        for (LetterId id : w) f += phi(id);
        out.set(w, f * v);
    }
    return out;
}

Mould nabla_lambda(const Mould& m) {
    const Alphabet& a = *m.alphabet();
    Mould out(m.alphabet(), m.max_len());
    for (const auto& [w, v] : m.entries()) out.set(w, a.lambda(w) * v);
    return out;
}

Mould nabla_one(const Mould& m) {
    Mould out(m.alphabet(), m.max_len());
    for (const auto& [w, v] : m.entries())
        out.set(w, Scalar(Rational(length(w))) * v);
    return out;
}

Mould resonant_part(const Mould& m) {
    const Alphabet& a = *m.alphabet();
    Mould out(m.alphabet(), m.max_len());
    for (const auto& [w, v] : m.entries())
        if (a.word_resonant(w)) out.set(w, v);
    return out;
}

bool is_resonant(const Mould& m) {
    const Alphabet& a = *m.alphabet();
    for (const auto& [w, v] : m.entries()) {
        (void)v;
        if (!a.word_resonant(w)) return false;
    }
    return true;
}

Mould truncate_below(const Mould& m, int cutoff) {
    Mould out(m.alphabet(), m.max_len());
    for (const auto& [w, v] : m.entries()) {
        if (length(w) >= cutoff) break;
        out.set(w, v);
    }
    return out;
}

Mould restrict_letters(const Mould& m, const std::set<LetterId>& keep) {
    Mould out(m.alphabet(), m.max_len());
    for (const auto& [w, v] : m.entries()) {
        bool ok = true;
        for (LetterId id : w)
            if (!keep.count(id)) {
                ok = false;
                break;
            }
        if (ok) out.set(w, v);
    }
    return out;
}

Mould pullback(const Mould& m, const std::vector<LetterId>& phi, const AlphabetPtr& target) {
    if (static_cast<int>(phi.size()) != target->size())
        throw SchemaError("pullback table must cover the target alphabet");
    for (LetterId img : phi)
        if (img < 0 || img >= m.alphabet()->size())
            throw UnknownLetter("pullback table maps outside the source alphabet");
    // Preimage lists per letter of m's alphabet.
    std::vector<std::vector<LetterId>> pre(m.alphabet()->size());
    for (LetterId n = 0; n < target->size(); ++n) pre[phi[n]].push_back(n);

    Mould out(target, m.max_len());
    std::vector<LetterId> stack;
    for (const auto& [w, v] : m.entries()) {
        // every word over `target` mapping onto w contributes value v
        stack.assign(w.size(), 0);
        std::function<void(std::size_t, Word&)> emit = [&](std::size_t pos, Word& cur) {
            if (pos == w.size()) {
                out.set(cur, v);
                return;
            }
            for (LetterId cand : pre[w[pos]]) {
                cur.push_back(cand);
                emit(pos + 1, cur);
                cur.pop_back();
            }
        };
        Word cur;
        emit(0, cur);
    }
    return out;
}

std::string to_string(const Mould& m) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [w, v] : m.entries()) {
        if (!first) os << ", ";
        first = false;
        os << to_string(w) << ": " << to_string(v);
    }
    os << "}";
    return os.str();
}

} // namespace mouldcalc
