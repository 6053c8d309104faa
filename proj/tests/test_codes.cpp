#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lrlab/codes.hpp"
#include "lrlab/reference.hpp"

using namespace lrlab;

namespace {

Matrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
    Matrix M(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) M.at(r, c) = FieldElement{rows[r][c]};
    return M;
}

int weight(const Vec& v) {
    int w = 0;
    for (FieldElement e : v) w += e.index != 0;
    return w;
}

} // namespace

TEST_CASE("sample_rlc is deterministic per seed and always full rank") {
    const auto F2 = Field::make_prime(2);
    const LinearCode a = sample_rlc(F2, 4, 2, 7);
    const LinearCode b = sample_rlc(F2, 4, 2, 7);
    CHECK(a.G == b.G);
    CHECK(sample_rlc(F2, 4, 2, 8).G != a.G); // different stream

    const auto F16 = Field::make_of_order(16);
    const LinearCode c = sample_rlc(F16, 16, 4, 1);
    CHECK(rank(*F16, c.G) == 4);

    CHECK_THROWS_AS(sample_rlc(F2, 2, 3, 0), domain_error); // k > n
}

TEST_CASE("random binary 2x2 matrices are singular with probability 10/16") {
    // Exact count: 6 of the 16 binary 2x2 matrices are nonsingular
    // ((4-1)(4-2) = 6), so the first draw is discarded with probability
    // 10/16 = 0.625.
    const auto F2 = Field::make_prime(2);
    int discarded = 0;
    const int trials = 10000;
    for (int s = 0; s < trials; ++s) {
        SampleStats st;
        (void)sample_rlc(F2, 2, 2, static_cast<std::uint64_t>(s), &st);
        discarded += st.resamples > 0;
    }
    const double frac = static_cast<double>(discarded) / trials;
    CHECK(frac > 0.625 - 0.03);
    CHECK(frac < 0.625 + 0.03);
}

TEST_CASE("rs_code builds the Vandermonde generator") {
    const auto F3 = Field::make_prime(3);
    const Vec pts{FieldElement{0}, FieldElement{1}, FieldElement{2}};
    const LinearCode rs = rs_code(F3, pts, 2);
    CHECK(rs.G == from_rows({{1, 0}, {1, 1}, {1, 2}}));

    // f(x) = 1 + x evaluated at 0, 1, 2 over GF(3).
    CHECK(encode(rs, Vec{FieldElement{1}, FieldElement{1}}) ==
          Vec{FieldElement{1}, FieldElement{2}, FieldElement{0}});

    const LinearCode consts = rs_code(F3, pts, 1);
    CHECK(consts.G == from_rows({{1}, {1}, {1}}));

    CHECK_THROWS_AS(rs_code(F3, Vec{FieldElement{1}, FieldElement{1}}, 2), rank_error);
}

TEST_CASE("random RS sampling: determinism, distinct mode, birthday rate") {
    const auto F64 = Field::make_of_order(64);
    Rng r1(1), r2(1);
    const auto a = sample_random_rs(F64, 12, 3, r1);
    const auto b = sample_random_rs(F64, 12, 3, r2);
    CHECK(a.first.G == b.first.G);
    CHECK(a.second == b.second);

    // Distinct mode always yields injective points and rank k.
    const auto F13 = Field::make_prime(13);
    for (std::uint64_t s = 0; s < 10; ++s) {
        Rng rng = Rng::substream(99, s);
        const auto [code, pts] = sample_random_rs(F13, 12, 4, rng, nullptr, true);
        std::set<std::uint32_t> distinct;
        for (FieldElement p : pts) distinct.insert(p.index);
        CHECK(distinct.size() == 12);
        CHECK(rank(*F13, code.G) == 4);
    }
    CHECK_THROWS_AS(
        [&] {
            Rng rng(0);
            (void)sample_random_rs(F13, 14, 4, rng, nullptr, true);
        }(),
        domain_error); // 14 distinct points do not exist in GF(13)

    // Fraction of i.i.d. draws with no collisions matches the birthday
    // product prod_{i<12} (64-i)/64 ~ 0.3548.
    double expect = 1.0;
    for (int i = 0; i < 12; ++i) expect *= static_cast<double>(64 - i) / 64.0;
    int clean = 0;
    const int trials = 10000;
    for (int s = 0; s < trials; ++s) {
        Rng rng = Rng::substream(1234, static_cast<std::uint64_t>(s));
        const auto [code, pts] = sample_random_rs(F64, 12, 3, rng);
        std::set<std::uint32_t> distinct;
        for (FieldElement p : pts) distinct.insert(p.index);
        clean += distinct.size() == 12;
    }
    const double frac = static_cast<double>(clean) / trials;
    CHECK(frac > expect - 0.03);
    CHECK(frac < expect + 0.03);
}

TEST_CASE("encode linearity and validation") {
    const auto F5 = Field::make_prime(5);
    const LinearCode code = sample_rlc(F5, 6, 3, 5);
    CHECK(encode(code, Vec(3, FieldElement{0})) == Vec(6, FieldElement{0}));
    for (int i = 0; i < 3; ++i) {
        Vec e(3, FieldElement{0});
        e[static_cast<std::size_t>(i)] = FieldElement{1};
        CHECK(encode(code, e) == code.G.col(static_cast<std::size_t>(i)));
    }
    CHECK_THROWS_AS(encode(code, Vec(2, FieldElement{0})), usage_error);
}

TEST_CASE("message indexing is lexicographic with coordinate 0 most significant") {
    const auto F2 = Field::make_prime(2);
    CHECK(message_from_index(*F2, 2, 0) == Vec{FieldElement{0}, FieldElement{0}});
    CHECK(message_from_index(*F2, 2, 1) == Vec{FieldElement{0}, FieldElement{1}});
    CHECK(message_from_index(*F2, 2, 2) == Vec{FieldElement{1}, FieldElement{0}});
    CHECK(message_from_index(*F2, 2, 3) == Vec{FieldElement{1}, FieldElement{1}});

    const auto F5 = Field::make_prime(5);
    for (std::uint64_t idx = 0; idx < 125; ++idx)
        CHECK(index_from_message(*F5, message_from_index(*F5, 3, idx)) == idx);
}

TEST_CASE("codeword scanner streams encode() results in index order") {
    const auto F3 = Field::make_prime(3);
    const LinearCode code = sample_rlc(F3, 5, 3, 11);
    const std::uint64_t total = codeword_count(code);
    CHECK(total == 27);

    CodewordScanner scan(code, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        CHECK(scan.index() == idx);
        CHECK(scan.codeword() == encode(code, message_from_index(*F3, 3, idx)));
        if (idx + 1 < total) scan.advance();
    }
    CHECK(CodewordScanner(code, 0).codeword() == Vec(5, FieldElement{0}));

    // A scanner started mid-stream agrees with the from-zero stream.
    CodewordScanner mid(code, 13);
    CHECK(mid.codeword() == encode(code, message_from_index(*F3, 3, 13)));
}

TEST_CASE("message range partitioning covers the stream exactly") {
    const auto parts = partition_messages(27, 4);
    REQUIRE(parts.size() == 4);
    CHECK(parts.front().begin == 0);
    CHECK(parts.back().end == 27);
    std::uint64_t covered = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        CHECK(parts[i].begin <= parts[i].end);
        covered += parts[i].end - parts[i].begin;
        if (i) CHECK(parts[i].begin == parts[i - 1].end);
    }
    CHECK(covered == 27);
}

TEST_CASE("enumeration budget guard") {
    CHECK(message_count(4, 5, 2000) == 1024);
    CHECK_THROWS_AS(message_count(4, 6, 2000), budget_error);
    CHECK_THROWS_AS(message_count(2, 31), budget_error); // 2^31 over the default cap
}

TEST_CASE("minimum distance: frozen cases and oracle agreement") {
    const auto F5 = Field::make_prime(5);
    const LinearCode rep = make_linear_code(F5, from_rows({{1}, {1}, {1}, {1}, {1}, {1}}));
    CHECK(min_distance(rep).d == 6);

    const auto F2 = Field::make_prime(2);
    const LinearCode id2 = make_linear_code(F2, from_rows({{1, 0}, {0, 1}}));
    CHECK(min_distance(id2).d == 1);

    // RS with distinct points is MDS: d = n - k + 1.
    const auto F13 = Field::make_prime(13);
    Rng rng(3);
    const auto [rs, pts] = sample_random_rs(F13, 12, 4, rng, nullptr, true);
    const DistanceResult d = min_distance(rs);
    CHECK(d.d == 9);
    CHECK(weight(d.witness) == 9);
    CHECK(encode(rs, message_from_index(*F13, 4, d.witness_message)) == d.witness);

    for (std::uint32_t q : {2u, 3u, 5u}) {
        const auto F = Field::make_of_order(q);
        Rng srng(17 * q);
        for (int t = 0; t < 15; ++t) {
            const int k = 1 + static_cast<int>(srng.below(3));
            const int n = k + static_cast<int>(srng.below(6));
            const LinearCode code = sample_rlc(F, n, k, srng);
            const DistanceResult fast = min_distance(code);
            const DistanceResult pair = ref::min_distance_pairwise(code);
            const DistanceResult naive = ref::min_distance_naive(code);
            CHECK(fast.d == pair.d);
            CHECK(fast.d == naive.d);
            CHECK(fast.witness_message == naive.witness_message);
            CHECK(weight(fast.witness) == fast.d);
        }
    }
}

TEST_CASE("make_linear_code validation") {
    const auto F2 = Field::make_prime(2);
    CHECK_THROWS_AS(make_linear_code(F2, from_rows({{1, 1}, {1, 1}})), rank_error);
    CHECK_THROWS_AS(make_linear_code(F2, from_rows({{2}, {1}})), usage_error);
    CHECK_THROWS_AS(make_linear_code(nullptr, Matrix(2, 1)), usage_error);
}
