#ifndef MOULDCALC_ENGINES_MATRIX_OP_HPP
#define MOULDCALC_ENGINES_MATRIX_OP_HPP

#include "mouldcalc/lie.hpp"

namespace mouldcalc::engines {

// Finite quantum engine: gl(D) over the Gaussian rationals, formal in ε,
// with the rescaled commutator [A,B] = (AB − BA)/(iħ).
class MatrixOperator {
public:
    MatrixOperator() = default;
    MatrixOperator(int dim, Rational hbar) : dim_(dim), hbar_(std::move(hbar)) {}

    int dim() const { return dim_; }
    const Rational& hbar() const { return hbar_; }
    bool is_zero() const { return eps_.empty(); }

    const std::map<int, std::vector<Scalar>>& parts() const { return eps_; }

    const Scalar& at(int eps, int row, int col) const;
    void add(int eps, int row, int col, const Scalar& v);
    void set_part(int eps, std::vector<Scalar> matrix);

    friend bool operator==(const MatrixOperator& a, const MatrixOperator& b) {
        return a.eps_ == b.eps_;
    }
    friend bool operator!=(const MatrixOperator& a, const MatrixOperator& b) {
        return !(a == b);
    }

    MatrixOperator operator-() const;
    MatrixOperator operator+(const MatrixOperator& o) const;
    MatrixOperator operator-(const MatrixOperator& o) const;
    MatrixOperator operator*(const Scalar& c) const;

private:
    void prune(int eps);

    int dim_ = 0;
    Rational hbar_ = 1;
    std::map<int, std::vector<Scalar>> eps_; // ε power → row-major D×D
};

// Associative product of ε-series, truncated below ε^truncation
// (pass kInfiniteOrder for the full finite product).
MatrixOperator mat_mul(const MatrixOperator& a, const MatrixOperator& b,
                       int truncation = kInfiniteOrder);
MatrixOperator mat_identity(int dim, const Rational& hbar);

// [A,B] = (AB − BA)/(iħ).
MatrixOperator bracket(const MatrixOperator& a, const MatrixOperator& b);
int order_of(const MatrixOperator& a);
MatrixOperator truncated(const MatrixOperator& a, int m);

// Conjugate transpose per ε power (ε is treated as real).
MatrixOperator involution(const MatrixOperator& a);
bool is_symmetric(const MatrixOperator& a);

struct QuantumProblem {
    HomogeneousProblem<MatrixOperator> problem;
    std::vector<Scalar> energies;
    Rational hbar;
};

// Groups the matrix entries of B by the eigenvalue (E_l − E_k)/(iħ) of
// ad_{X0}; X0 = diag(energies) at ε^0. B must have ε-order ≥ 1.
QuantumProblem quantum_decompose(const std::vector<Scalar>& energies, const Rational& hbar,
                                 const MatrixOperator& b, int order);

// U = e^{Y/(iħ)} as an ε-series mod ε^truncation.
MatrixOperator conjugating_operator(const MatrixOperator& y, int truncation);

// Z is block-diagonal over the equal-energy blocks.
bool is_block_diagonal(const MatrixOperator& z, const std::vector<Scalar>& energies);
bool is_diagonal(const MatrixOperator& z);

// Diagonal entries per ε power, for the perturbative eigenvalue comparison.
std::map<int, std::vector<Scalar>> diagonal_parts(const MatrixOperator& z);

} // namespace mouldcalc::engines

#endif
