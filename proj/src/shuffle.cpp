#include "mouldcalc/shuffle.hpp"

#include <vector>

namespace mouldcalc {

long long shuffle_coefficient(const Word& a, const Word& b, const Word& n) {
    const int la = length(a), lb = length(b), ln = length(n);
    if (la + lb != ln) return 0;
    // C[i][j] = ways to merge a[0..i) and b[0..j) into n[0..i+j).
    std::vector<std::vector<long long>> c(la + 1, std::vector<long long>(lb + 1, 0));
    c[0][0] = 1;
    for (int i = 0; i <= la; ++i)
        for (int j = 0; j <= lb; ++j) {
            if (i == 0 && j == 0) continue;
            long long ways = 0;
            if (i > 0 && a[i - 1] == n[i + j - 1]) ways += c[i - 1][j];
            if (j > 0 && b[j - 1] == n[i + j - 1]) ways += c[i][j - 1];
            c[i][j] = ways;
        }
    return c[la][lb];
}

Scalar delta_coproduct(const Mould& m, const Word& a, const Word& b) {
    const int la = length(a), lb = length(b);
    Scalar acc;
    // Walk every merge of a and b; each one adds M on the merged word, which
    // amounts to the sh-weighted sum over all words.
    std::vector<LetterId> merged(la + lb);
    std::function<void(int, int)> rec = [&](int i, int j) {
        if (i == la && j == lb) {
            acc += m.value(Word(merged.begin(), merged.end()));
            return;
        }
        if (i < la) {
            merged[i + j] = a[i];
            rec(i + 1, j);
        }
        if (j < lb) {
            merged[i + j] = b[j];
            rec(i, j + 1);
        }
    };
    rec(0, 0);
    return acc;
}

namespace {

using PairKey = std::pair<Word, Word>;

struct PairLess {
    bool operator()(const PairKey& x, const PairKey& y) const {
        WordLess less;
        if (x.first != y.first) return less(x.first, y.first);
        return less(x.second, y.second);
    }
};

// All shuffle sums Σ sh(a,b;n)M^n with a,b nonempty, r(a)+r(b) ≤ upto,
// accumulated by splitting each stored word across every position subset.
std::map<PairKey, Scalar, PairLess> shuffle_sums(const Mould& m, int upto) {
    std::map<PairKey, Scalar, PairLess> buckets;
    Word a, b;
    for (const auto& [w, v] : m.entries()) {
        const int r = length(w);
        if (r > upto) break;
        if (r < 2) continue; // splits with both parts nonempty need r ≥ 2
        const unsigned full = (1u << r) - 1;
        for (unsigned mask = 1; mask < full; ++mask) {
            a.clear();
            b.clear();
            for (int i = 0; i < r; ++i)
                ((mask >> i) & 1u ? a : b).push_back(w[i]);
            auto [it, fresh] = buckets.emplace(PairKey(a, b), v);
            if (!fresh) it->second += v;
        }
    }
    return buckets;
}

} // namespace

ShuffleCheck is_alternal(const Mould& m, int upto) {
    ShuffleCheck res;
    if (!m.empty_value().is_zero()) {
        res.ok = false;
        res.violation = PairKey{};
        return res;
    }
    auto buckets = shuffle_sums(m, upto);
    for (const auto& [key, sum] : buckets)
        if (!sum.is_zero()) {
            res.ok = false;
            res.violation = key;
            return res;
        }
    return res;
}

ShuffleCheck is_alternal(const Mould& m) { return is_alternal(m, m.max_len()); }

ShuffleCheck is_symmetral(const Mould& s, int upto) {
    ShuffleCheck res;
    if (s.empty_value() != Scalar(1)) {
        res.ok = false;
        res.violation = PairKey{};
        return res;
    }
    auto buckets = shuffle_sums(s, upto);
    // Pairs of nonempty support words also carry an obligation: the shuffle
    // sum (possibly absent from the buckets) must equal S^a S^b.
    for (const auto& [a, va] : s.entries()) {
        if (a.empty()) continue;
        if (length(a) >= upto) break;
        for (const auto& [b, vb] : s.entries()) {
            if (b.empty()) continue;
            if (length(a) + length(b) > upto) break;
            PairKey key(a, b);
            if (!buckets.count(key)) buckets.emplace(std::move(key), Scalar());
            (void)va;
            (void)vb;
        }
    }
    for (auto& [key, sum] : buckets) {
        Scalar want = s.value(key.first) * s.value(key.second);
        if (sum != want) {
            res.ok = false;
            res.violation = key;
            return res;
        }
    }
    return res;
}

ShuffleCheck is_symmetral(const Mould& s) { return is_symmetral(s, s.max_len()); }

Mould gauge_generator(const Mould& m) {
    auto alt = is_alternal(m);
    if (!alt.ok)
        throw NotAlternal("gauge generator input fails alternality at " +
                          to_string(alt.violation->first) + ", " +
                          to_string(alt.violation->second));
    Mould em = mould_exp(m);
    Mould out = resonant_part(mould_mul(mould_inverse(em), nabla_one(em)));
    auto check = is_alternal(out);
    if (!check.ok || !is_resonant(out))
        throw NotAlternal("gauge generator output failed its invariants");
    return out;
}

} // namespace mouldcalc
