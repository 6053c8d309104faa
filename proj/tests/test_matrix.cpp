#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lrlab/matrix.hpp"
#include "lrlab/rng.hpp"

using namespace lrlab;

namespace {

Matrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
    Matrix M(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) M.at(r, c) = FieldElement{rows[r][c]};
    return M;
}

Matrix random_matrix(const Field& F, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix M(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            M.at(r, c) = FieldElement{static_cast<std::uint32_t>(rng.below(F.q()))};
    return M;
}

bool is_zero_vec(const Vec& v) {
    for (FieldElement e : v)
        if (e.index != 0) return false;
    return true;
}

} // namespace

TEST_CASE("rref fixed points and frozen small cases") {
    const auto F2 = Field::make_prime(2);
    const Matrix I3 = identity(*F2, 3);
    auto r = rref(*F2, I3);
    CHECK(r.R == I3);
    CHECK(r.rank == 3);

    const Matrix Z = Matrix(2, 2);
    auto rz = rref(*F2, Z);
    CHECK(rz.R == Z);
    CHECK(rz.rank == 0);

    // det [[1,2],[2,1]] = 1 - 4 = -3 = 0 mod 3, so the rank drops to 1.
    const auto F3 = Field::make_prime(3);
    const Matrix M = from_rows({{1, 2}, {2, 1}});
    auto rm = rref(*F3, M);
    CHECK(rm.rank == 1);
    CHECK(rm.R == from_rows({{1, 2}, {0, 0}}));
    CHECK(rm.pivot_cols == std::vector<std::size_t>{0});
}

TEST_CASE("rref is idempotent and rank is transpose-invariant on random matrices") {
    for (std::uint32_t q : {2u, 3u, 5u, 8u}) {
        const auto F = Field::make_of_order(q);
        Rng rng(1000 + q);
        for (int t = 0; t < 40; ++t) {
            const std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(6);
            const Matrix M = random_matrix(*F, rows, cols, rng);
            const auto r1 = rref(*F, M);
            CHECK(rref(*F, r1.R).R == r1.R);
            CHECK(rank(*F, M) == rank(*F, transpose(M)));
        }
    }
}

TEST_CASE("kernel basis is canonical, independent, and annihilated by M") {
    const auto F2 = Field::make_prime(2);
    CHECK(kernel_basis(*F2, identity(*F2, 2)).empty());

    const Matrix Z13 = Matrix(1, 3); // zero map on GF(2)^3
    CHECK(kernel_basis(*F2, Z13).size() == 3);

    // GF(3), [1 1]: solutions x+y=0 are (1,2),(2,1); the canonical basis
    // sets the free coordinate to 1, picking (2,1).
    const auto F3 = Field::make_prime(3);
    const auto kb = kernel_basis(*F3, from_rows({{1, 1}}));
    REQUIRE(kb.size() == 1);
    CHECK(kb[0] == Vec{FieldElement{2}, FieldElement{1}});

    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const auto F = Field::make_of_order(q);
        Rng rng(7 * q);
        for (int t = 0; t < 30; ++t) {
            const std::size_t rows = 1 + rng.below(5), cols = 1 + rng.below(5);
            const Matrix M = random_matrix(*F, rows, cols, rng);
            const auto basis = kernel_basis(*F, M);
            CHECK(basis.size() == cols - rank(*F, M));
            for (const Vec& v : basis) CHECK(is_zero_vec(mat_vec(*F, M, v)));
            if (!basis.empty()) {
                Matrix B(basis.size(), cols);
                for (std::size_t r = 0; r < basis.size(); ++r)
                    for (std::size_t c = 0; c < cols; ++c) B.at(r, c) = basis[r][c];
                CHECK(rank(*F, B) == basis.size());
            }
        }
    }
}

TEST_CASE("matrix multiplication basics") {
    const auto F3 = Field::make_prime(3);
    const Matrix A = from_rows({{1, 2}, {0, 1}});
    CHECK(mat_mul(*F3, A, identity(*F3, 2)) == A);
    CHECK(mat_mul(*F3, identity(*F3, 2), A) == A);
    // [1 2; 0 1] * (1, 1) = (1+2, 1) = (0, 1) over GF(3)
    CHECK(mat_vec(*F3, A, Vec{FieldElement{1}, FieldElement{1}}) ==
          Vec{FieldElement{0}, FieldElement{1}});
    CHECK_THROWS_AS(mat_mul(*F3, A, Matrix(3, 2)), usage_error);
    CHECK_THROWS_AS(mat_vec(*F3, A, Vec{FieldElement{1}}), usage_error);
}

TEST_CASE("systematic form: fixed points, frozen case, and code preservation") {
    const auto F2 = Field::make_prime(2);

    // Already-systematic generator stays put with the identity permutation.
    const Matrix G1 = from_rows({{1, 0}, {0, 1}, {1, 1}});
    const auto s1 = systematic_form(*F2, G1);
    CHECK(s1.G == G1);
    CHECK(s1.row_perm == std::vector<std::size_t>{0, 1, 2});

    // Repetition code [[1],[1]]: unique code {00,11}.
    const Matrix G2 = from_rows({{1}, {1}});
    const auto s2 = systematic_form(*F2, G2);
    CHECK(s2.G == G2);
    CHECK(s2.row_perm == std::vector<std::size_t>{0, 1});

    // Rank-deficient input is rejected.
    CHECK_THROWS_AS(systematic_form(*F2, from_rows({{1, 1}, {1, 1}})), rank_error);

    // Codeword sets coincide after undoing the row permutation.
    for (std::uint32_t q : {2u, 3u, 4u}) {
        const auto F = Field::make_of_order(q);
        Rng rng(33 * q);
        for (int t = 0; t < 25; ++t) {
            const std::size_t k = 1 + rng.below(3), n = k + rng.below(4);
            const Matrix G = random_matrix(*F, n, k, rng);
            if (rank(*F, G) != k) continue;
            const auto sys = systematic_form(*F, G);
            REQUIRE(sys.G.rows() == n);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    CHECK(sys.G.at(i, j).index == (i == j ? 1u : 0u));

            // Enumerate both codeword sets (q^k is tiny here).
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < k; ++i) total *= q;
            std::set<Vec> orig, mapped;
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                Vec msg(k);
                std::uint64_t v = idx;
                for (std::size_t i = 0; i < k; ++i) {
                    msg[i] = FieldElement{static_cast<std::uint32_t>(v % q)};
                    v /= q;
                }
                orig.insert(mat_vec(*F, G, msg));
                const Vec cw_sys = mat_vec(*F, sys.G, msg);
                Vec cw(n);
                for (std::size_t i = 0; i < n; ++i) cw[sys.row_perm[i]] = cw_sys[i];
                mapped.insert(cw);
            }
            CHECK(orig == mapped);
        }
    }
}
