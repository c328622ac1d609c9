#include "mouldcalc/engines/matrix_op.hpp"

#include <algorithm>

namespace mouldcalc::engines {

namespace {

const Scalar kZero{};

void require_compatible(const MatrixOperator& a, const MatrixOperator& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (a.dim() != b.dim() || a.hbar() != b.hbar())
        throw SchemaError("matrix operands have different dimension or hbar");
}

} // namespace

const Scalar& MatrixOperator::at(int eps, int row, int col) const {
    auto it = eps_.find(eps);
    if (it == eps_.end()) return kZero;
    return it->second[static_cast<std::size_t>(row) * dim_ + col];
}

void MatrixOperator::add(int eps, int row, int col, const Scalar& v) {
    if (v.is_zero()) return;
    auto& m = eps_[eps];
    if (m.empty()) m.assign(static_cast<std::size_t>(dim_) * dim_, Scalar());
    m[static_cast<std::size_t>(row) * dim_ + col] += v;
    prune(eps);
}

void MatrixOperator::set_part(int eps, std::vector<Scalar> matrix) {
    if (static_cast<int>(matrix.size()) != dim_ * dim_)
        throw SchemaError("matrix part has wrong size");
    eps_[eps] = std::move(matrix);
    prune(eps);
}

void MatrixOperator::prune(int eps) {
    auto it = eps_.find(eps);
    if (it == eps_.end()) return;
    for (const auto& v : it->second)
        if (!v.is_zero()) return;
    eps_.erase(it);
}

MatrixOperator MatrixOperator::operator-() const { return *this * Scalar(-1); }

MatrixOperator MatrixOperator::operator+(const MatrixOperator& o) const {
    require_compatible(*this, o);
    if (is_zero()) return o;
    MatrixOperator out = *this;
    for (const auto& [p, m] : o.eps_) {
        auto& dst = out.eps_[p];
        if (dst.empty()) dst.assign(m.size(), Scalar());
        for (std::size_t i = 0; i < m.size(); ++i) dst[i] += m[i];
        out.prune(p);
    }
    return out;
}

MatrixOperator MatrixOperator::operator-(const MatrixOperator& o) const {
    return *this + (-o);
}

MatrixOperator MatrixOperator::operator*(const Scalar& c) const {
    MatrixOperator out(dim_, hbar_);
    if (c.is_zero()) return out;
    out.eps_ = eps_;
    for (auto& [p, m] : out.eps_)
        for (auto& v : m) v *= c;
    return out;
}

MatrixOperator mat_mul(const MatrixOperator& a, const MatrixOperator& b, int truncation) {
    require_compatible(a, b);
    if (a.is_zero() || b.is_zero()) return {};
    const int d = a.dim();
    MatrixOperator out(d, a.hbar());
    for (const auto& [pa, ma] : a.parts())
        for (const auto& [pb, mb] : b.parts()) {
            if (truncation != kInfiniteOrder && pa + pb >= truncation) continue;
            for (int r = 0; r < d; ++r)
                for (int k = 0; k < d; ++k) {
                    const Scalar& x = ma[static_cast<std::size_t>(r) * d + k];
                    if (x.is_zero()) continue;
                    for (int c = 0; c < d; ++c) {
                        const Scalar& y = mb[static_cast<std::size_t>(k) * d + c];
                        if (y.is_zero()) continue;
                        out.add(pa + pb, r, c, x * y);
                    }
                }
        }
    return out;
}

MatrixOperator mat_identity(int dim, const Rational& hbar) {
    MatrixOperator out(dim, hbar);
    for (int k = 0; k < dim; ++k) out.add(0, k, k, Scalar(1));
    return out;
}

MatrixOperator bracket(const MatrixOperator& a, const MatrixOperator& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Scalar factor = inverse(Scalar(Rational(0), a.hbar())); // 1/(iħ)
    return (mat_mul(a, b) - mat_mul(b, a)) * factor;
}

int order_of(const MatrixOperator& a) {
    return a.is_zero() ? kInfiniteOrder : a.parts().begin()->first;
}

MatrixOperator truncated(const MatrixOperator& a, int m) {
    MatrixOperator out(a.dim(), a.hbar());
    for (const auto& [p, mat] : a.parts()) {
        if (p >= m) break;
        out.set_part(p, mat);
    }
    return out;
}

MatrixOperator involution(const MatrixOperator& a) {
    MatrixOperator out(a.dim(), a.hbar());
    const int d = a.dim();
    for (const auto& [p, mat] : a.parts())
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                out.add(p, c, r, mat[static_cast<std::size_t>(r) * d + c].conj());
    return out;
}

bool is_symmetric(const MatrixOperator& a) { return involution(a) == a; }

QuantumProblem quantum_decompose(const std::vector<Scalar>& energies, const Rational& hbar,
                                 const MatrixOperator& b, int order) {
    const int d = static_cast<int>(energies.size());
    if (hbar <= 0) throw SchemaError("hbar must be positive");
    if (!b.is_zero() && b.dim() != d)
        throw SchemaError("perturbation dimension does not match the energies");
    if (order_of(b) < 1)
        throw OrderViolation("quantum perturbation must have eps-order >= 1");

    QuantumProblem qp;
    qp.energies = energies;
    qp.hbar = hbar;
    qp.problem.x0 = MatrixOperator(d, hbar);
    for (int k = 0; k < d; ++k) qp.problem.x0.add(0, k, k, energies[k]);
    qp.problem.order = order;

    // Group entries by λ = (E_row − E_col)/(iħ).
    Scalar ih_inv = inverse(Scalar(Rational(0), hbar));
    std::map<Scalar, MatrixOperator> groups;
    for (const auto& [p, mat] : b.parts()) {
        if (p >= order) continue;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const Scalar& v = mat[static_cast<std::size_t>(r) * d + c];
                if (v.is_zero()) continue;
                Scalar lambda = (energies[r] - energies[c]) * ih_inv;
                auto [it, fresh] = groups.emplace(lambda, MatrixOperator(d, hbar));
                it->second.add(p, r, c, v);
            }
    }

    std::vector<Letter> letters;
    std::vector<Scalar> lambdas;
    LetterId next = 0;
    std::vector<MatrixOperator> comps;
    for (auto& [lambda, comp] : groups) {
        letters.push_back({next++});
        lambdas.push_back(lambda);
        comps.push_back(std::move(comp));
    }
    qp.problem.alphabet = Alphabet::with_table(std::move(letters), std::move(lambdas));
    for (LetterId id = 0; id < static_cast<LetterId>(comps.size()); ++id)
        qp.problem.components.emplace(id, std::move(comps[id]));
    qp.problem.validate();
    return qp;
}

MatrixOperator conjugating_operator(const MatrixOperator& y, int truncation) {
    if (y.is_zero()) throw OrderViolation("empty generator has no dimension");
    if (order_of(y) < 1)
        throw OrderViolation("conjugating generator must have eps-order >= 1");
    MatrixOperator gen = y * inverse(Scalar(Rational(0), y.hbar())); // Y/(iħ)
    MatrixOperator acc = mat_identity(y.dim(), y.hbar());
    MatrixOperator power = acc;
    Rational factorial(1);
    for (int k = 1; k < truncation; ++k) {
        power = mat_mul(power, gen, truncation);
        if (power.is_zero()) break;
        factorial *= k;
        acc = acc + power * Scalar(Rational(1) / factorial);
    }
    return truncated(acc, truncation);
}

bool is_block_diagonal(const MatrixOperator& z, const std::vector<Scalar>& energies) {
    const int d = static_cast<int>(energies.size());
    for (const auto& [p, mat] : z.parts())
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                if (!mat[static_cast<std::size_t>(r) * d + c].is_zero() &&
                    energies[r] != energies[c])
                    return false;
    return true;
}

bool is_diagonal(const MatrixOperator& z) {
    const int d = z.dim();
    for (const auto& [p, mat] : z.parts())
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                if (r != c && !mat[static_cast<std::size_t>(r) * d + c].is_zero()) return false;
    return true;
}

std::map<int, std::vector<Scalar>> diagonal_parts(const MatrixOperator& z) {
    std::map<int, std::vector<Scalar>> out;
    const int d = z.dim();
    for (const auto& [p, mat] : z.parts()) {
        std::vector<Scalar> diag(d);
        for (int k = 0; k < d; ++k) diag[k] = mat[static_cast<std::size_t>(k) * d + k];
        out[p] = std::move(diag);
    }
    return out;
}

} // namespace mouldcalc::engines
