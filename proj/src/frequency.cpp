#include "mouldcalc/frequency.hpp"

#include <cstdlib>

namespace mouldcalc {

namespace {

// Row rank over Q by fraction-free elimination.
int matrix_rank(std::vector<std::vector<Rational>> m) {
    int rows = static_cast<int>(m.size());
    int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

} // namespace

FrequencyModel FrequencyModel::build(std::vector<IntVec> q, std::int64_t range_bound) {
    if (q.empty()) throw RankDeficient("quotient map has no rows");
    if (range_bound <= 0) throw RangeExceeded("range bound must be positive");
    const int e = static_cast<int>(q.size());
    const int d = static_cast<int>(q[0].size());
    if (d == 0) throw RankDeficient("quotient map has zero columns");
    for (const auto& row : q)
        if (static_cast<int>(row.size()) != d)
            throw SchemaError("ragged quotient map");
    if (e > d) throw RankDeficient("more rows than columns in quotient map");

    std::vector<std::vector<Rational>> m(e, std::vector<Rational>(d));
    for (int r = 0; r < e; ++r)
        for (int c = 0; c < d; ++c) m[r][c] = Rational(static_cast<long>(q[r][c]));
    if (matrix_rank(std::move(m)) != e)
        throw RankDeficient("quotient map is not of full row rank");

    FrequencyModel model;
    model.d_ = d;
    model.q_ = std::move(q);
    model.range_bound_ = range_bound;
    model.omega_.resize(e);
    mpz_class base(static_cast<long>(2 * range_bound + 1));
    mpz_class pow(1);
    // Digit argument: Ω_j = (2R+1)^{j-1} exceeds R·(Ω_1+...+Ω_{j-1}), so a
    // vanishing ⟨v,Ω⟩ with |v_j| ≤ R forces every digit v_j to zero.
    mpz_class partial(0);
    for (int j = 0; j < e; ++j) {
        if (j > 0 && !(pow > partial * range_bound))
            throw RangeExceeded("surrogate digit inequality failed");
        model.omega_[j] = Rational(pow);
        partial += pow;
        pow *= base;
    }
    return model;
}

IntVec FrequencyModel::quotient(const IntVec& n) const {
    if (static_cast<int>(n.size()) != d_)
        throw SchemaError("mode vector dimension mismatch");
    IntVec v(q_.size(), 0);
    for (std::size_t r = 0; r < q_.size(); ++r) {
        for (int c = 0; c < d_; ++c) v[r] += q_[r][c] * n[c];
        if (std::llabs(v[r]) > range_bound_)
            throw RangeExceeded("quotient coordinate exceeds range bound R=" +
                                std::to_string(range_bound_));
    }
    return v;
}

bool FrequencyModel::is_resonant(const IntVec& n) const {
    for (std::int64_t c : quotient(n))
        if (c != 0) return false;
    return true;
}

Rational FrequencyModel::pairing(const IntVec& n) const {
    IntVec v = quotient(n);
    Rational acc(0);
    for (std::size_t j = 0; j < v.size(); ++j)
        acc += Rational(static_cast<long>(v[j])) * omega_[j];
    return acc;
}

Scalar FrequencyModel::eigenvalue(const IntVec& n) const {
    return Scalar(Rational(0), pairing(n));
}

std::int64_t FrequencyModel::auto_range_bound(const std::vector<IntVec>& q,
                                              const std::vector<IntVec>& modes,
                                              int max_word_len) {
    std::int64_t worst = 0;
    for (const auto& n : modes)
        for (const auto& row : q) {
            std::int64_t acc = 0;
            for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * n[c];
            worst = std::max<std::int64_t>(worst, std::llabs(acc));
        }
    return std::max<std::int64_t>(1, worst * std::max<std::int64_t>(1, max_word_len));
}

std::vector<Rational> FrequencyModel::effective_frequency() const {
    std::vector<Rational> w(d_, Rational(0));
    for (std::size_t r = 0; r < q_.size(); ++r)
        for (int c = 0; c < d_; ++c)
            w[c] += Rational(static_cast<long>(q_[r][c])) * omega_[r];
    return w;
}

} // namespace mouldcalc
