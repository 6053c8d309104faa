#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lrlab/errors.hpp"

namespace lrlab {

// An element of GF(p^m) in the canonical index encoding: the polynomial
// a_0 + a_1 x + ... + a_{m-1} x^{m-1} has index a_0 + a_1 p + ... + a_{m-1} p^{m-1}.
// Index 0 is the additive identity, index 1 the multiplicative identity.
struct FieldElement {
    std::uint32_t index = 0;
    friend bool operator==(FieldElement a, FieldElement b) { return a.index == b.index; }
    friend bool operator!=(FieldElement a, FieldElement b) { return a.index != b.index; }
    friend bool operator<(FieldElement a, FieldElement b) { return a.index < b.index; }
};

struct FieldSpec {
    std::uint32_t p = 2; // prime characteristic
    std::uint32_t m = 1; // extension degree
    std::uint32_t q = 2; // p^m
    // Monic modulus coefficients c_0..c_m (ascending powers) over GF(p);
    // empty when m == 1.
    std::vector<std::uint32_t> modulus;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.p == b.p && a.m == b.m && a.q == b.q && a.modulus == b.modulus;
    }
    friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }
};

// Exact GF(q) arithmetic for q = p^m <= 2^20.
//
// Multiplication uses a full q*q lookup table when q <= 4096, otherwise
// on-the-fly polynomial multiplication with modulus reduction. Addition is a
// XOR for p = 2, a conditional subtraction for prime fields, a table for odd
// characteristic extensions up to 4096, and a digit loop beyond that.
class Field {
public:
    static constexpr std::uint32_t kMaxOrder = 1u << 20;
    static constexpr std::uint32_t kTableLimit = 4096;

    static std::shared_ptr<const Field> make(const FieldSpec& spec);
    static std::shared_ptr<const Field> make_prime(std::uint32_t p);
    // Empty modulus selects the default: the lexicographically least monic
    // irreducible polynomial of degree m, comparing coefficient vectors as
    // base-p integers with the constant term least significant.
    static std::shared_ptr<const Field> make_extension(std::uint32_t p, std::uint32_t m,
                                                       std::vector<std::uint32_t> modulus = {});
    // Factors q = p^m; q must be a prime power <= 2^20.
    static std::shared_ptr<const Field> make_of_order(std::uint32_t q);

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t p() const { return spec_.p; }
    std::uint32_t m() const { return spec_.m; }
    std::uint32_t q() const { return spec_.q; }

    FieldElement zero() const { return FieldElement{0}; }
    FieldElement one() const { return FieldElement{1}; }
    // Bounds-checked element construction.
    FieldElement element(std::uint32_t index) const {
        if (index >= spec_.q)
            throw domain_error("element index " + std::to_string(index) + " out of range for q=" +
                               std::to_string(spec_.q));
        return FieldElement{index};
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        if (xor_add_) return FieldElement{a.index ^ b.index};
        if (spec_.m == 1) {
            std::uint32_t s = a.index + b.index;
            if (s >= spec_.p) s -= spec_.p;
            return FieldElement{s};
        }
        if (!add_table_.empty()) return FieldElement{add_table_[a.index * spec_.q + b.index]};
        return add_digits(a, b);
    }

    FieldElement neg(FieldElement a) const {
        if (xor_add_) return a;
        if (spec_.m == 1) return FieldElement{a.index == 0 ? 0 : spec_.p - a.index};
        return neg_digits(a);
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (!mul_table_.empty()) return FieldElement{mul_table_[a.index * spec_.q + b.index]};
        return mul_poly(a, b);
    }

    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
    FieldElement pow(FieldElement a, std::uint64_t e) const;

    // Coefficient vector a_0..a_{m-1} of the element's polynomial.
    std::vector<std::uint32_t> digits(FieldElement a) const;
    FieldElement from_digits(const std::vector<std::uint32_t>& d) const;

    static bool is_prime(std::uint32_t p);
    // poly holds monic coefficients c_0..c_deg over GF(p). Tested by trial
    // division against every monic polynomial of degree 1..deg/2.
    static bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);
    static std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t m);

private:
    explicit Field(FieldSpec spec);

    FieldElement add_digits(FieldElement a, FieldElement b) const;
    FieldElement neg_digits(FieldElement a) const;
    FieldElement mul_poly(FieldElement a, FieldElement b) const;
    void build_tables();

    FieldSpec spec_;
    bool xor_add_ = false;
    std::vector<std::uint16_t> mul_table_; // q*q, q <= kTableLimit
    std::vector<std::uint16_t> add_table_; // q*q, odd-p extensions with q <= kTableLimit
    std::vector<std::uint32_t> exp_;       // powers of a fixed primitive element (table fields)
    std::vector<std::uint32_t> log_;       // discrete log base that element
};

} // namespace lrlab
