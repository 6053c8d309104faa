#include "lrlab/matrix.hpp"

#include <string>

namespace lrlab {

Matrix identity(const Field& F, std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I.at(i, i) = F.one();
    return I;
}

Matrix transpose(const Matrix& M) {
    Matrix T(M.cols(), M.rows());
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (std::size_t c = 0; c < M.cols(); ++c) T.at(c, r) = M.at(r, c);
    return T;
}

Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows()) throw usage_error("matrix product shape mismatch");
    Matrix C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t t = 0; t < A.cols(); ++t) {
            const FieldElement a = A.at(i, t);
            if (a.index == 0) continue;
            for (std::size_t j = 0; j < B.cols(); ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(a, B.at(t, j)));
        }
    }
    return C;
}

Vec mat_vec(const Field& F, const Matrix& A, const Vec& x) {
    if (A.cols() != x.size()) throw usage_error("matrix-vector shape mismatch");
    Vec y(A.rows(), FieldElement{0});
    for (std::size_t i = 0; i < A.rows(); ++i) {
        FieldElement acc{0};
        for (std::size_t j = 0; j < A.cols(); ++j) acc = F.add(acc, F.mul(A.at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

RrefResult rref(const Field& F, const Matrix& M) {
    RrefResult out;
    out.R = M;
    Matrix& R = out.R;
    std::size_t pr = 0; // next pivot row
    for (std::size_t c = 0; c < R.cols() && pr < R.rows(); ++c) {
        std::size_t pivot = pr;
        while (pivot < R.rows() && R.at(pivot, c).index == 0) ++pivot;
        if (pivot == R.rows()) continue;
        if (pivot != pr)
            for (std::size_t j = 0; j < R.cols(); ++j) std::swap(R.at(pivot, j), R.at(pr, j));
        const FieldElement s = F.inv(R.at(pr, c));
        for (std::size_t j = c; j < R.cols(); ++j) R.at(pr, j) = F.mul(s, R.at(pr, j));
        for (std::size_t r = 0; r < R.rows(); ++r) {
            if (r == pr || R.at(r, c).index == 0) continue;
            const FieldElement f = R.at(r, c);
            for (std::size_t j = c; j < R.cols(); ++j)
                R.at(r, j) = F.sub(R.at(r, j), F.mul(f, R.at(pr, j)));
        }
        out.pivot_cols.push_back(c);
        ++pr;
    }
    out.rank = out.pivot_cols.size();
    return out;
}

std::size_t rank(const Field& F, const Matrix& M) { return rref(F, M).rank; }

std::vector<Vec> kernel_basis(const Field& F, const Matrix& M) {
    const RrefResult rr = rref(F, M);
    std::vector<bool> is_pivot(M.cols(), false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < M.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(M.cols(), FieldElement{0});
        v[f] = F.one();
        for (std::size_t r = 0; r < rr.rank; ++r) {
            const std::size_t pc = rr.pivot_cols[r];
            v[pc] = F.neg(rr.R.at(r, f));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

SystematicForm systematic_form(const Field& F, const Matrix& G) {
    const std::size_t n = G.rows();
    const std::size_t k = G.cols();
    if (k == 0 || n < k) throw rank_error("generator must be n x k with 1 <= k <= n");

    // Greedy top-down scan for the first k linearly independent rows,
    // maintained as an incremental echelon workspace.
    std::vector<Vec> ech;                 // reduced rows
    std::vector<std::size_t> ech_pivot;   // pivot column of each
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < n && chosen.size() < k; ++r) {
        Vec v = G.row(r);
        for (std::size_t t = 0; t < ech.size(); ++t) {
            const FieldElement f = v[ech_pivot[t]];
            if (f.index == 0) continue;
            for (std::size_t j = 0; j < k; ++j) v[j] = F.sub(v[j], F.mul(f, ech[t][j]));
        }
        std::size_t pc = k;
        for (std::size_t j = 0; j < k; ++j)
            if (v[j].index != 0) {
                pc = j;
                break;
            }
        if (pc == k) continue;
        const FieldElement s = F.inv(v[pc]);
        for (std::size_t j = 0; j < k; ++j) v[j] = F.mul(s, v[j]);
        ech.push_back(std::move(v));
        ech_pivot.push_back(pc);
        chosen.push_back(r);
    }
    if (chosen.size() < k)
        throw rank_error("generator has column rank " + std::to_string(chosen.size()) +
                         " < k = " + std::to_string(k));

    SystematicForm out;
    out.row_perm.reserve(n);
    std::vector<bool> taken(n, false);
    for (std::size_t r : chosen) {
        out.row_perm.push_back(r);
        taken[r] = true;
    }
    for (std::size_t r = 0; r < n; ++r)
        if (!taken[r]) out.row_perm.push_back(r);

    Matrix P_G(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) P_G.at(i, j) = G.at(out.row_perm[i], j);

    // invert the top block via rref([A | I])
    Matrix AI(k, 2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) AI.at(i, j) = P_G.at(i, j);
        AI.at(i, k + i) = F.one();
    }
    const RrefResult rr = rref(F, AI);
    Matrix T(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) T.at(i, j) = rr.R.at(i, k + j);

    out.G = mat_mul(F, P_G, T);
    return out;
}

} // namespace lrlab
