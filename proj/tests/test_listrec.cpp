#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "lrlab/listrec.hpp"
#include "lrlab/reference.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace lrlab;

namespace {

Matrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
    Matrix M(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) M.at(r, c) = FieldElement{rows[r][c]};
    return M;
}

std::vector<FieldElement> elems(std::initializer_list<std::uint32_t> xs) {
    std::vector<FieldElement> v;
    for (std::uint32_t x : xs) v.push_back(FieldElement{x});
    return v;
}

} // namespace

TEST_CASE("agreement: frozen examples and permutation symmetry") {
    const auto F5 = Field::make_prime(5);
    const InputLists full =
        make_input_lists(F5, {elems({1, 0}), elems({2, 0}), elems({3, 0})});
    CHECK(agreement(elems({1, 2, 3}), full) == std::vector<int>{0, 1, 2});

    const InputLists none =
        make_input_lists(F5, {elems({0, 1}), elems({0, 1}), elems({0, 1})});
    CHECK(agreement(elems({4, 4, 4}), none).empty());

    // |agr| is invariant under a simultaneous coordinate permutation.
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        InputLists lists = sample_input_lists(F5, 6, 2, rng);
        Vec x;
        for (int i = 0; i < 6; ++i) x.push_back(FieldElement{static_cast<std::uint32_t>(rng.below(5))});
        const std::size_t before = agreement(x, lists).size();
        std::vector<int> perm{3, 1, 5, 0, 2, 4};
        std::vector<std::vector<FieldElement>> plists(6);
        Vec px(6);
        for (int i = 0; i < 6; ++i) {
            plists[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
                lists.lists[static_cast<std::size_t>(i)];
            px[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
                x[static_cast<std::size_t>(i)];
        }
        CHECK(agreement(px, make_input_lists(F5, plists)).size() == before);
    }

    CHECK_THROWS_AS(agreement(elems({1, 2}), full), usage_error);       // wrong length
    CHECK_THROWS_AS(agreement(elems({1, 2, 9}), full), usage_error);    // out of range
}

TEST_CASE("input list validation and canonical ordering") {
    const auto F5 = Field::make_prime(5);
    const InputLists lists = make_input_lists(F5, {elems({3, 1}), elems({4, 0})});
    CHECK(lists.lists[0] == elems({1, 3})); // stored sorted
    CHECK(lists.ell == 2);
    CHECK_THROWS_AS(make_input_lists(F5, {elems({1, 1})}), usage_error);      // duplicate
    CHECK_THROWS_AS(make_input_lists(F5, {elems({1, 2}), elems({1})}), usage_error); // ragged
    CHECK_THROWS_AS(make_input_lists(F5, {}), usage_error);
    const auto F2 = Field::make_prime(2);
    CHECK_THROWS_AS(sample_input_lists(F2, 3, 3, *(new Rng(1))), usage_error); // ell > q
}

TEST_CASE("ball thresholds are exact ceilings; membership boundary is inclusive") {
    const auto F5 = Field::make_prime(5);
    Rng rng(2);
    const InputLists lists = sample_input_lists(F5, 4, 2, rng);
    CHECK(make_ball(Rational(0), lists).threshold == 4);
    CHECK(make_ball(Rational(1), lists).threshold == 0);
    CHECK(make_ball(Rational(1, 3), lists).threshold == 3); // ceil(8/3)
    CHECK(make_ball(Rational(1, 2), lists).threshold == 2);
    CHECK_THROWS_AS(make_ball(Rational(3, 2), lists), domain_error);
    CHECK_THROWS_AS(make_ball(Rational(-1, 2), lists), domain_error);

    // rho = 1: every vector belongs, including one agreeing nowhere.
    const RecoveryBall everything = make_ball(Rational(1), lists);
    Vec x;
    for (int i = 0; i < 4; ++i) {
        std::uint32_t v = 0;
        while (std::binary_search(everything.lists.lists[static_cast<std::size_t>(i)].begin(),
                                  everything.lists.lists[static_cast<std::size_t>(i)].end(),
                                  FieldElement{v}))
            ++v;
        x.push_back(FieldElement{v});
    }
    CHECK(in_ball(x, everything));
    CHECK(!in_ball(x, make_ball(Rational(0), lists)));

    // Exactly-threshold agreement is inside (the definition uses >=).
    const RecoveryBall half = make_ball(Rational(1, 2), lists);
    Vec y = x;
    y[0] = half.lists.lists[0][0];
    y[1] = half.lists.lists[1][0];
    CHECK(static_cast<int>(agreement(y, half.lists).size()) == half.threshold);
    CHECK(in_ball(y, half));
}

TEST_CASE("recover_list equals the independent membership-scan oracle") {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        const auto F = Field::make_of_order(q);
        Rng rng(31 * q);
        for (int t = 0; t < 20; ++t) {
            const int k = 1 + static_cast<int>(rng.below(3));
            const int n = k + static_cast<int>(rng.below(8));
            const int ell = 1 + static_cast<int>(rng.below(std::min<std::uint64_t>(2, q - 1)));
            const LinearCode code = sample_rlc(F, n, k, rng);
            const RecoveryBall ball =
                make_ball(Rational(1, 1 + static_cast<long long>(rng.below(3))),
                          sample_input_lists(F, n, ell, rng));
            const RecoveredList fast = recover_list(code, ball);
            const RecoveredList slow = ref::recover_list(code, ball);
            CHECK(fast.codewords == slow.codewords);
            CHECK(fast.messages == slow.messages);
            CHECK(fast.span_dim == slow.span_dim);
            for (const Vec& c : fast.codewords) CHECK(in_ball(c, ball));
            CHECK(independent_in_ball(code, ball).rank == fast.span_dim);
        }
    }

    // GF(5), n=10, k=3: the spec's named oracle instance.
    const auto F5 = Field::make_prime(5);
    Rng rng(77);
    const LinearCode code = sample_rlc(F5, 10, 3, rng);
    const RecoveryBall ball = make_ball(Rational(2, 5), sample_input_lists(F5, 10, 2, rng));
    CHECK(recover_list(code, ball).codewords == ref::recover_list(code, ball).codewords);
}

TEST_CASE("rho = 1 recovers the whole code with full span") {
    const auto F3 = Field::make_prime(3);
    Rng rng(4);
    const LinearCode code = sample_rlc(F3, 6, 3, rng);
    const RecoveryBall ball = make_ball(Rational(1), sample_input_lists(F3, 6, 2, rng));
    const RecoveredList rec = recover_list(code, ball);
    CHECK(rec.codewords.size() == 27);
    CHECK(rec.span_dim == 3);
    CHECK(independent_in_ball(code, ball).rank == 3);
    // First entry is the zero codeword (message order).
    CHECK(rec.codewords.front() == Vec(6, FieldElement{0}));
}

TEST_CASE("monotonicity in radius and in list refinement") {
    const auto F4 = Field::make_of_order(4);
    Rng rng(12);
    for (int t = 0; t < 10; ++t) {
        const LinearCode code = sample_rlc(F4, 8, 2, rng);
        const InputLists lists = sample_input_lists(F4, 8, 2, rng);
        const auto small = recover_list(code, make_ball(Rational(1, 4), lists));
        const auto large = recover_list(code, make_ball(Rational(1, 2), lists));
        const std::set<Vec> large_set(large.codewords.begin(), large.codewords.end());
        for (const Vec& c : small.codewords) CHECK(large_set.count(c) == 1);

        // Pad every list with one fresh element: supersets never shrink the list.
        std::vector<std::vector<FieldElement>> wider = lists.lists;
        for (auto& l : wider) {
            std::uint32_t v = 0;
            while (std::binary_search(l.begin(), l.end(), FieldElement{v})) ++v;
            l.push_back(FieldElement{v});
        }
        const auto widened =
            recover_list(code, make_ball(Rational(1, 4), make_input_lists(F4, wider)));
        const std::set<Vec> wide_set(widened.codewords.begin(), widened.codewords.end());
        for (const Vec& c : small.codewords) CHECK(wide_set.count(c) == 1);
    }
}

TEST_CASE("recovered lists are identical at every parallelism degree") {
#ifdef _OPENMP
    const auto F8 = Field::make_of_order(8);
    Rng rng(21);
    const LinearCode code = sample_rlc(F8, 10, 4, rng);
    const RecoveryBall ball = make_ball(Rational(1, 3), sample_input_lists(F8, 10, 2, rng));
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const RecoveredList serial = recover_list(code, ball);
    const IndependentInBall ser_rank = independent_in_ball(code, ball);
    const DistanceResult ser_d = min_distance(code);
    omp_set_num_threads(8);
    const RecoveredList parallel = recover_list(code, ball);
    const IndependentInBall par_rank = independent_in_ball(code, ball);
    const DistanceResult par_d = min_distance(code);
    omp_set_num_threads(saved);
    CHECK(serial.codewords == parallel.codewords);
    CHECK(serial.span_dim == parallel.span_dim);
    CHECK(ser_rank.rank == par_rank.rank);
    CHECK(ser_rank.witnesses == par_rank.witnesses);
    CHECK(ser_d.d == par_d.d);
    CHECK(ser_d.witness_message == par_d.witness_message);
#endif
}

TEST_CASE("independent_in_ball degenerate balls") {
    const auto F3 = Field::make_prime(3);
    // Code {000..., c} where only the zero codeword can fully agree with
    // lists that avoid every nonzero symbol of the generator column.
    const LinearCode code = make_linear_code(F3, from_rows({{1}, {1}, {1}, {1}}));
    const InputLists zeros =
        make_input_lists(F3, {elems({0, 2}), elems({0, 2}), elems({0, 2}), elems({0, 2})});
    const RecoveryBall tight = make_ball(Rational(0), zeros);
    const RecoveredList rec = recover_list(code, tight);
    REQUIRE(rec.codewords.size() == 2); // zero and the all-2 codeword
    CHECK(independent_in_ball(code, tight).rank == 1);

    const InputLists no2 =
        make_input_lists(F3, {elems({0, 1}), elems({0, 1}), elems({0, 1}), elems({0, 1})});
    const RecoveryBall only_zero = make_ball(Rational(0), no2);
    CHECK(recover_list(code, only_zero).codewords == std::vector<Vec>{Vec(4, FieldElement{0})});
    CHECK(independent_in_ball(code, only_zero).rank == 0);
}

TEST_CASE("exhaustive-tiny search matches a hand-rolled scan of all list tuples") {
    const auto F2 = Field::make_prime(2);
    const LinearCode code = make_linear_code(F2, from_rows({{1}, {1}, {0}}));
    const Rational rho(1, 3); // threshold ceil(2/3 * 3) = 2

    // Brute force: all 2^3 single-element list tuples.
    std::size_t best = 0;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<std::vector<FieldElement>> lists;
        for (int i = 0; i < 3; ++i)
            lists.push_back(elems({static_cast<std::uint32_t>((mask >> i) & 1)}));
        const auto rec = recover_list(code, make_ball(rho, make_input_lists(F2, lists)));
        best = std::max(best, rec.codewords.size());
    }

    const SearchResult sr =
        max_list_size_search(code, 1, rho, SearchStrategy::ExhaustiveTiny, 1u << 20, 0);
    CHECK(sr.exhaustive);
    CHECK(sr.list.codewords.size() == best);
    CHECK(best == 2); // lists (1,1,0) hold both codewords 000 and 110
}

TEST_CASE("codeword-seeded search never loses to pure random on the same seed") {
    const auto F8 = Field::make_of_order(8);
    Rng rng(9);
    const LinearCode code = sample_rlc(F8, 8, 3, rng);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto rnd =
            max_list_size_search(code, 2, Rational(1, 4), SearchStrategy::Random, 30, seed);
        const auto seeded = max_list_size_search(code, 2, Rational(1, 4),
                                                 SearchStrategy::CodewordSeeded, 30, seed);
        CHECK(seeded.list.codewords.size() >= rnd.list.codewords.size());

        // Reproducibility for both strategies.
        const auto again = max_list_size_search(code, 2, Rational(1, 4),
                                                SearchStrategy::CodewordSeeded, 30, seed);
        CHECK(again.list.codewords.size() == seeded.list.codewords.size());
        CHECK(again.ball.lists.lists == seeded.ball.lists.lists);
    }
}

TEST_CASE("strategy names round-trip") {
    for (auto s : {SearchStrategy::Random, SearchStrategy::CodewordSeeded,
                   SearchStrategy::ExhaustiveTiny})
        CHECK(strategy_from_name(strategy_name(s)) == s);
    CHECK_THROWS_AS(strategy_from_name("bogus"), usage_error);
}

TEST_CASE("mismatched code and ball fields are rejected") {
    const auto F2 = Field::make_prime(2);
    const auto F3 = Field::make_prime(3);
    Rng rng(1);
    const LinearCode code = sample_rlc(F2, 4, 2, rng);
    const RecoveryBall ball = make_ball(Rational(1, 2), sample_input_lists(F3, 4, 2, rng));
    CHECK_THROWS_AS(recover_list(code, ball), usage_error);
    CHECK_THROWS_AS(independent_in_ball(code, ball), usage_error);
}
