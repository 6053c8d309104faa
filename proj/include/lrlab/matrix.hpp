#pragma once

#include <cstddef>
#include <vector>

#include "lrlab/field.hpp"

namespace lrlab {

using Vec = std::vector<FieldElement>;

// Dense row-major matrix over a finite field. The field is passed to the
// free functions below rather than stored; shape mismatches throw usage_error.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, FieldElement{0}) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FieldElement& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    FieldElement at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    Vec row(std::size_t r) const { return Vec(e_.begin() + r * cols_, e_.begin() + (r + 1) * cols_); }
    Vec col(std::size_t c) const {
        Vec v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
        return v;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> e_;
};

Matrix identity(const Field& F, std::size_t n);
Matrix transpose(const Matrix& M);
Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B);
Vec mat_vec(const Field& F, const Matrix& A, const Vec& x);

struct RrefResult {
    Matrix R;
    std::vector<std::size_t> pivot_cols; // ascending
    std::size_t rank = 0;
};

// Reduced row echelon form by Gaussian elimination, scanning columns left to
// right and rows top-down (deterministic pivot choice: first nonzero entry).
RrefResult rref(const Field& F, const Matrix& M);

std::size_t rank(const Field& F, const Matrix& M);

// Canonical kernel basis from the rref: one vector per free column, in
// ascending free-column order, with a unit in that free coordinate.
std::vector<Vec> kernel_basis(const Field& F, const Matrix& M);

struct SystematicForm {
    Matrix G;                         // P*G*T with the top k x k block = identity
    std::vector<std::size_t> row_perm; // row_perm[i] = original index of row i
};

// For an n x k generator of column rank k: permute the first k independent
// rows (smallest indices win ties) to the top and right-multiply by the
// inverse of that block. Throws rank_error when the column rank is below k.
SystematicForm systematic_form(const Field& F, const Matrix& G);

} // namespace lrlab
