#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lrlab/field.hpp"
#include "lrlab/rng.hpp"

using namespace lrlab;

namespace {

void check_axiom_triple(const Field& F, FieldElement a, FieldElement b, FieldElement c) {
    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
    CHECK(F.add(a, b) == F.add(b, a));
    CHECK(F.mul(a, b) == F.mul(b, a));
    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
}

void check_axioms_exhaustive(const Field& F) {
    const std::uint32_t q = F.q();
    for (std::uint32_t ai = 0; ai < q; ++ai) {
        const FieldElement a{ai};
        CHECK(F.add(a, F.zero()) == a);
        CHECK(F.mul(a, F.one()) == a);
        CHECK(F.add(a, F.neg(a)) == F.zero());
        CHECK(F.mul(a, F.zero()) == F.zero());
        if (ai != 0) {
            CHECK(F.mul(a, F.inv(a)) == F.one());
            CHECK(F.div(a, a) == F.one());
        }
        for (std::uint32_t bi = 0; bi < q; ++bi)
            for (std::uint32_t ci = 0; ci < q; ++ci)
                check_axiom_triple(F, a, FieldElement{bi}, FieldElement{ci});
    }
}

} // namespace

TEST_CASE("field axioms hold exhaustively for every order up to 64") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 49u, 64u}) {
        CAPTURE(q);
        check_axioms_exhaustive(*Field::make_of_order(q));
    }
}

TEST_CASE("field axioms hold on random triples beyond the table limit") {
    // 2^13 exercises the XOR/on-the-fly path, 5^7 the odd-characteristic
    // digit path; both are above the 4096 multiplication-table cutoff.
    for (auto spec : {std::pair<std::uint32_t, std::uint32_t>{2, 13}, {5, 7}}) {
        const auto F = Field::make_extension(spec.first, spec.second);
        CAPTURE(F->q());
        Rng rng(42);
        for (int t = 0; t < 2000; ++t) {
            const FieldElement a{static_cast<std::uint32_t>(rng.below(F->q()))};
            const FieldElement b{static_cast<std::uint32_t>(rng.below(F->q()))};
            const FieldElement c{static_cast<std::uint32_t>(rng.below(F->q()))};
            check_axiom_triple(*F, a, b, c);
            CHECK(F->add(a, F->neg(a)) == F->zero());
            if (a.index != 0) CHECK(F->mul(a, F->inv(a)) == F->one());
        }
    }
}

TEST_CASE("frozen arithmetic facts") {
    const auto F5 = Field::make_prime(5);
    CHECK(F5->add(FieldElement{3}, FieldElement{4}) == FieldElement{2});

    // In GF(4) with modulus x^2+x+1, index 2 is x and x*x = x+1 = index 3.
    const auto F4 = Field::make_extension(2, 2);
    CHECK(F4->mul(FieldElement{2}, FieldElement{2}) == FieldElement{3});

    for (std::uint32_t q : {2u, 9u, 64u, 125u})
        CHECK(Field::make_of_order(q)->inv(FieldElement{1}) == FieldElement{1});
}

TEST_CASE("default moduli are the least irreducible polynomials") {
    using V = std::vector<std::uint32_t>;
    CHECK(Field::default_modulus(2, 2) == V{1, 1, 1});       // x^2+x+1
    CHECK(Field::default_modulus(2, 3) == V{1, 1, 0, 1});    // x^3+x+1
    CHECK(Field::default_modulus(2, 4) == V{1, 1, 0, 0, 1}); // x^4+x+1
    CHECK(Field::default_modulus(3, 2) == V{1, 0, 1});       // x^2+1
    CHECK(Field::default_modulus(3, 3) == V{1, 2, 0, 1});    // x^3+2x+1
}

TEST_CASE("irreducibility testing") {
    CHECK(Field::is_irreducible({1, 1, 1}, 2));  // x^2+x+1
    CHECK(!Field::is_irreducible({1, 0, 1}, 2)); // x^2+1 = (x+1)^2 over GF(2)
    CHECK(Field::is_irreducible({1, 0, 1}, 3));  // x^2+1 has no root mod 3
    CHECK(Field::is_irreducible({0, 1}, 2)); // x itself: degree 1, irreducible
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(Field::make_prime(4), domain_error);
    CHECK_THROWS_AS(Field::make_extension(4, 2), domain_error);
    CHECK_THROWS_AS(Field::make_extension(2, 21), domain_error); // 2^21 > 2^20
    CHECK_THROWS_AS(Field::make_of_order(6), domain_error);
    CHECK_THROWS_AS(Field::make_of_order(1), domain_error);
    CHECK_THROWS_AS(Field::make_extension(2, 2, {1, 0, 1}), domain_error); // reducible
    const auto F = Field::make_prime(3);
    CHECK_THROWS_AS(F->element(3), domain_error);
    CHECK_THROWS_AS(F->inv(FieldElement{0}), domain_error);
    CHECK_THROWS_AS(F->div(FieldElement{1}, FieldElement{0}), domain_error);
}

TEST_CASE("digits round-trip and match the index encoding") {
    const auto F = Field::make_extension(3, 3);
    for (std::uint32_t i = 0; i < F->q(); ++i) {
        const auto d = F->digits(FieldElement{i});
        REQUIRE(d.size() == 3);
        CHECK(d[0] + 3 * d[1] + 9 * d[2] == i);
        CHECK(F->from_digits(d) == FieldElement{i});
    }
}

TEST_CASE("pow matches repeated multiplication and the Frobenius identity") {
    for (std::uint32_t q : {5u, 8u, 9u}) {
        const auto F = Field::make_of_order(q);
        for (std::uint32_t i = 0; i < q; ++i) {
            const FieldElement a{i};
            CHECK(F->pow(a, 0) == F->one());
            FieldElement acc = F->one();
            for (int e = 1; e <= 5; ++e) {
                acc = F->mul(acc, a);
                CHECK(F->pow(a, static_cast<std::uint64_t>(e)) == acc);
            }
            CHECK(F->pow(a, q) == a); // x^q = x in GF(q)
        }
    }
}

TEST_CASE("custom modulus changes the arithmetic but keeps the axioms") {
    // Second irreducible of degree 3 over GF(2): x^3+x^2+1.
    const auto F = Field::make_extension(2, 3, {1, 0, 1, 1});
    CHECK(F->spec().modulus == std::vector<std::uint32_t>{1, 0, 1, 1});
    check_axioms_exhaustive(*F);
    // x * x * x = x^2 + 1 under this modulus (index 2 cubed = index 5).
    const FieldElement x{2};
    CHECK(F->mul(F->mul(x, x), x) == FieldElement{5});
}
