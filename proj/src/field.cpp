#include "lrlab/field.hpp"

#include <algorithm>
#include <string>

namespace lrlab {

namespace {

using Poly = std::vector<std::uint32_t>; // coefficients ascending, over GF(p)

int degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

// Remainder of monic-divisor division f mod g over GF(p); g monic.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    const int dg = degree(g);
    for (int df = degree(f); df >= dg; df = degree(f)) {
        const std::uint64_t c = f[df]; // g is monic, so the quotient digit is just c
        const int shift = df - dg;
        for (int j = 0; j <= dg; ++j) {
            std::uint64_t t = f[j + shift] + static_cast<std::uint64_t>(p - g[j] % p) * c % p;
            f[j + shift] = static_cast<std::uint32_t>(t % p);
        }
    }
    return f;
}

} // namespace

bool Field::is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool Field::is_irreducible(const Poly& poly, std::uint32_t p) {
    const int deg = degree(poly);
    if (deg < 1) return false;
    if (poly[static_cast<std::size_t>(deg)] != 1) return false; // monic required
    if (deg == 1) return true;
    if (poly[0] == 0) return false; // divisible by x
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (int d = 1; d <= deg / 2; ++d) {
        std::uint64_t combos = 1;
        for (int i = 0; i < d; ++i) combos *= p;
        Poly div(static_cast<std::size_t>(d) + 1, 0);
        div[static_cast<std::size_t>(d)] = 1;
        for (std::uint64_t t = 0; t < combos; ++t) {
            std::uint64_t v = t;
            for (int i = 0; i < d; ++i) {
                div[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            if (degree(poly_mod(poly, div, p)) < 0) return false;
        }
    }
    return true;
}

Poly Field::default_modulus(std::uint32_t p, std::uint32_t m) {
    std::uint64_t combos = 1;
    for (std::uint32_t i = 0; i < m; ++i) combos *= p;
    Poly f(m + 1, 0);
    f[m] = 1;
    for (std::uint64_t t = 0; t < combos; ++t) {
        std::uint64_t v = t;
        for (std::uint32_t i = 0; i < m; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        if (is_irreducible(f, p)) return f;
    }
    throw domain_error("no irreducible polynomial found (unreachable)");
}

std::shared_ptr<const Field> Field::make(const FieldSpec& spec) {
    return std::shared_ptr<const Field>(new Field(spec));
}

std::shared_ptr<const Field> Field::make_prime(std::uint32_t p) {
    FieldSpec s;
    s.p = p;
    s.m = 1;
    s.q = p;
    return make(s);
}

std::shared_ptr<const Field> Field::make_extension(std::uint32_t p, std::uint32_t m, Poly modulus) {
    if (m == 0) throw domain_error("extension degree must be >= 1");
    if (m > 1 && modulus.empty()) {
        if (!is_prime(p)) throw domain_error(std::to_string(p) + " is not prime");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            if (q > kMaxOrder) throw domain_error("field order exceeds 2^20");
        }
        modulus = default_modulus(p, m);
    }
    FieldSpec s;
    s.p = p;
    s.m = m;
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) q *= p;
    s.q = static_cast<std::uint32_t>(q);
    s.modulus = std::move(modulus);
    return make(s);
}

std::shared_ptr<const Field> Field::make_of_order(std::uint32_t q) {
    if (q < 2) throw domain_error("field order must be >= 2");
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q; // q itself prime
    std::uint32_t m = 0;
    std::uint32_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1)
        throw domain_error(std::to_string(q) + " is not a prime power");
    return make_extension(p, m);
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
    if (!is_prime(spec_.p)) throw domain_error(std::to_string(spec_.p) + " is not prime");
    if (spec_.m == 0) throw domain_error("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < spec_.m; ++i) {
        q *= spec_.p;
        if (q > kMaxOrder)
            throw domain_error("field order " + std::to_string(spec_.p) + "^" +
                               std::to_string(spec_.m) + " exceeds 2^20");
    }
    if (spec_.q != q)
        throw domain_error("field spec order mismatch: q=" + std::to_string(spec_.q) +
                           " but p^m=" + std::to_string(q));
    if (spec_.m == 1) {
        if (!spec_.modulus.empty())
            throw domain_error("prime field carries no modulus");
    } else {
        if (spec_.modulus.size() != spec_.m + 1)
            throw domain_error("modulus must have m+1 coefficients");
        for (std::uint32_t c : spec_.modulus)
            if (c >= spec_.p) throw domain_error("modulus coefficient out of range");
        if (!is_irreducible(spec_.modulus, spec_.p))
            throw domain_error("modulus is reducible over GF(" + std::to_string(spec_.p) + ")");
    }
    xor_add_ = (spec_.p == 2);
    build_tables();
}

std::vector<std::uint32_t> Field::digits(FieldElement a) const {
    std::vector<std::uint32_t> d(spec_.m);
    std::uint32_t v = a.index;
    for (std::uint32_t i = 0; i < spec_.m; ++i) {
        d[i] = v % spec_.p;
        v /= spec_.p;
    }
    return d;
}

FieldElement Field::from_digits(const std::vector<std::uint32_t>& d) const {
    if (d.size() != spec_.m) throw domain_error("digit vector has wrong length");
    std::uint32_t v = 0;
    for (std::uint32_t i = spec_.m; i-- > 0;) {
        if (d[i] >= spec_.p) throw domain_error("digit out of range");
        v = v * spec_.p + d[i];
    }
    return FieldElement{v};
}

FieldElement Field::add_digits(FieldElement a, FieldElement b) const {
    std::uint32_t out = 0;
    std::uint32_t va = a.index;
    std::uint32_t vb = b.index;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < spec_.m; ++i) {
        std::uint32_t s = va % spec_.p + vb % spec_.p;
        if (s >= spec_.p) s -= spec_.p;
        out += s * scale;
        va /= spec_.p;
        vb /= spec_.p;
        scale *= spec_.p;
    }
    return FieldElement{out};
}

FieldElement Field::neg_digits(FieldElement a) const {
    std::uint32_t out = 0;
    std::uint32_t va = a.index;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < spec_.m; ++i) {
        std::uint32_t d = va % spec_.p;
        out += (d == 0 ? 0 : spec_.p - d) * scale;
        va /= spec_.p;
        scale *= spec_.p;
    }
    return FieldElement{out};
}

FieldElement Field::mul_poly(FieldElement a, FieldElement b) const {
    if (spec_.m == 1)
        return FieldElement{static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(a.index) * b.index % spec_.p)};
    const std::uint32_t p = spec_.p;
    const std::uint32_t m = spec_.m;
    std::uint32_t da[24], db[24];
    std::uint64_t prod[47] = {0};
    std::uint32_t va = a.index, vb = b.index;
    for (std::uint32_t i = 0; i < m; ++i) {
        da[i] = va % p;
        db[i] = vb % p;
        va /= p;
        vb /= p;
    }
    for (std::uint32_t i = 0; i < m; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < m; ++j)
            prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
    }
    // reduce x^t for t >= m via the monic modulus: x^m = -(c_0 + ... + c_{m-1} x^{m-1})
    for (std::uint32_t t = 2 * m - 2; t >= m; --t) {
        std::uint64_t c = prod[t] % p;
        prod[t] = 0;
        if (c == 0) continue;
        for (std::uint32_t j = 0; j < m; ++j) {
            std::uint64_t sub = c * (spec_.modulus[j] % p) % p;
            prod[t - m + j] += p - sub; // add the negation, mod p later
        }
    }
    std::uint32_t out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        out += static_cast<std::uint32_t>(prod[i] % p) * scale;
        scale *= p;
    }
    return FieldElement{out};
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.index == 0) return zero();
    if (!exp_.empty()) {
        const std::uint64_t ord = spec_.q - 1;
        std::uint64_t le = static_cast<std::uint64_t>(log_[a.index]) % ord * (e % ord) % ord;
        return FieldElement{exp_[le]};
    }
    FieldElement acc = one();
    FieldElement base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

FieldElement Field::inv(FieldElement a) const {
    if (a.index == 0) throw domain_error("inverse of zero");
    if (!exp_.empty()) {
        const std::uint32_t ord = spec_.q - 1;
        return FieldElement{exp_[(ord - log_[a.index]) % ord]};
    }
    if (spec_.m == 1) {
        // extended Euclid on integers
        std::int64_t t = 0, nt = 1, r = spec_.p, nr = a.index;
        while (nr != 0) {
            std::int64_t qd = r / nr;
            std::int64_t tmp = t - qd * nt;
            t = nt;
            nt = tmp;
            tmp = r - qd * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0) t += spec_.p;
        return FieldElement{static_cast<std::uint32_t>(t)};
    }
    return pow(a, spec_.q - 2);
}

void Field::build_tables() {
    const std::uint32_t q = spec_.q;
    if (q > kTableLimit) return;

    if (spec_.m > 1) {
        // exp/log by a primitive element; order checked against the prime
        // factorization of q-1.
        std::vector<std::uint32_t> factors;
        {
            std::uint32_t r = q - 1;
            for (std::uint32_t d = 2; d * d <= r; ++d) {
                if (r % d == 0) {
                    factors.push_back(d);
                    while (r % d == 0) r /= d;
                }
            }
            if (r > 1) factors.push_back(r);
        }
        std::uint32_t gen = 0;
        for (std::uint32_t cand = 1; cand < q; ++cand) {
            bool ok = true;
            for (std::uint32_t f : factors) {
                FieldElement acc = one();
                FieldElement base{cand};
                std::uint64_t e = (q - 1) / f;
                while (e > 0) {
                    if (e & 1) acc = mul_poly(acc, base);
                    base = mul_poly(base, base);
                    e >>= 1;
                }
                if (acc.index == 1 && q > 2) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gen = cand;
                break;
            }
        }
        exp_.assign(q - 1, 0);
        log_.assign(q, 0);
        FieldElement cur = one();
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            exp_[i] = cur.index;
            log_[cur.index] = i;
            cur = mul_poly(cur, FieldElement{gen});
        }
        mul_table_.assign(static_cast<std::size_t>(q) * q, 0);
        for (std::uint32_t a = 1; a < q; ++a) {
            const std::uint32_t la = log_[a];
            for (std::uint32_t b = 1; b < q; ++b) {
                mul_table_[static_cast<std::size_t>(a) * q + b] =
                    static_cast<std::uint16_t>(exp_[(la + log_[b]) % (q - 1)]);
            }
        }
        if (spec_.p != 2) {
            add_table_.assign(static_cast<std::size_t>(q) * q, 0);
            for (std::uint32_t a = 0; a < q; ++a)
                for (std::uint32_t b = 0; b < q; ++b)
                    add_table_[static_cast<std::size_t>(a) * q + b] =
                        static_cast<std::uint16_t>(add_digits(FieldElement{a}, FieldElement{b}).index);
        }
    } else {
        mul_table_.assign(static_cast<std::size_t>(q) * q, 0);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                mul_table_[static_cast<std::size_t>(a) * q + b] =
                    static_cast<std::uint16_t>(static_cast<std::uint64_t>(a) * b % q);
    }
}

} // namespace lrlab
