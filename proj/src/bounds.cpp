#include "lrlab/bounds.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>

namespace lrlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

BigInt bigint_pow(const BigInt& base, std::uint64_t e) {
    BigInt acc = 1;
    BigInt b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

BigRational bigrat_pow(const BigRational& base, std::uint64_t e) {
    return BigRational(bigint_pow(boost::multiprecision::numerator(base), e),
                       bigint_pow(boost::multiprecision::denominator(base), e));
}

// Exponent bookkeeping for the exact companions: refuse blowups beyond
// roughly a megabit so callers always get the log form regardless.
bool exact_feasible(double log2_magnitude) {
    return std::abs(log2_magnitude) <= 1u << 20;
}

} // namespace

double log2_big(const BigInt& x) {
    if (x < 0) throw domain_error("log2 of negative integer");
    if (x == 0) return kNegInf;
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x));
    if (bits <= 52) return std::log2(x.convert_to<double>());
    const BigInt top = x >> (bits - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

double log2_big(const BigRational& x) {
    return log2_big(BigInt(boost::multiprecision::numerator(x))) -
           log2_big(BigInt(boost::multiprecision::denominator(x)));
}

BigInt exact_binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt acc = 1;
    for (long i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

double log2_binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return kNegInf;
    if (k == 0 || k == n) return 0.0;
    constexpr double inv_ln2 = 1.4426950408889634;
    return (std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
            std::lgamma(static_cast<double>(n - k) + 1)) *
           inv_ln2;
}

double q_ary_entropy(double x, double base) {
    if (!(base > 1.0)) throw domain_error("entropy base must exceed 1");
    if (x < 0.0 || x > 1.0) throw domain_error("entropy argument outside [0, 1]");
    const double lb = std::log2(base);
    double h = x * std::log2(base - 1.0) / lb;
    if (x > 0.0) h -= x * std::log2(x) / lb;
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x) / lb;
    return h;
}

BadConfigBound rlc_bad_config_log_prob(const Rational& R, const Rational& eps, long ell,
                                       long long q, long n) {
    if (!(R > Rational(0)) || !(R < Rational(1))) throw domain_error("need 0 < R < 1");
    if (!(eps > Rational(0))) throw domain_error("need eps > 0");
    if (n < 1) throw domain_error("need n >= 1");
    if (ell < 1) throw domain_error("need ell >= 1");
    if (q <= ell) throw domain_error("need q > ell");
    const Rational rho = Rational(1) - R - eps;
    if (rho < Rational(0)) throw domain_error("need R + eps <= 1 for a nonnegative radius");
    const Rational L = Rational(2 * ell) / eps;
    const long t = rho.floor_mul(n);

    const double log2_q = std::log2(static_cast<double>(q));
    const double log2_ell = std::log2(static_cast<double>(ell));
    const double Ld = L.to_double();

    BadConfigBound out;
    out.rho = rho;
    out.L = L;
    out.t = t;

    const double per_config = log2_binomial(n, t) + static_cast<double>(n - t) * log2_ell +
                              static_cast<double>(t) * std::log2(static_cast<double>(q - ell)) -
                              static_cast<double>(n) * log2_q;
    const double RnL = (R * Rational(n) * L).to_double();
    out.first_line.log2_value =
        Ld * per_config + static_cast<double>(n) * static_cast<double>(ell) * log2_q + RnL * log2_q;

    const Rational exponent = eps * Rational(n) * L / Rational(8); // eps n L / 8
    out.endpoint.log2_value = -exponent.to_double() * log2_q;

    // exact companions when every exponent is integral and the size sane
    const Rational RnL_rat = R * Rational(n) * L;
    if (L.is_integer() && L.num() >= 0 && RnL_rat.is_integer() && n <= 24 &&
        exact_feasible(out.first_line.log2_value) && L.num() <= 4096) {
        const BigInt qq = q;
        BigRational base(exact_binomial(n, t) * bigint_pow(ell, static_cast<std::uint64_t>(n - t)) *
                             bigint_pow(qq - ell, static_cast<std::uint64_t>(t)),
                         bigint_pow(qq, static_cast<std::uint64_t>(n)));
        BigRational first = bigrat_pow(base, static_cast<std::uint64_t>(L.num()));
        first *= BigRational(bigint_pow(qq, static_cast<std::uint64_t>(n) *
                                                static_cast<std::uint64_t>(ell)));
        first *= BigRational(bigint_pow(qq, static_cast<std::uint64_t>(RnL_rat.num())));
        out.first_line.exact = first;
    }
    if (exponent.is_integer() && exponent.num() >= 0 && exact_feasible(out.endpoint.log2_value))
        out.endpoint.exact =
            BigRational(1, bigint_pow(q, static_cast<std::uint64_t>(exponent.num())));
    return out;
}

BadConfigBound rlc_bad_config_log_prob(const CapacityParams& params) {
    if (!params.q || !params.n)
        throw usage_error("bad-configuration bound needs q and n");
    return rlc_bad_config_log_prob(params.R, params.eps, params.ell, *params.q, *params.n);
}

LogQuantity span_list_bound(long ell, const Rational& eps, long r) {
    if (ell < 1) throw domain_error("need ell >= 1");
    if (!(eps > Rational(0))) throw domain_error("need eps > 0");
    if (r < 0) throw domain_error("need r >= 0");
    const Rational B = Rational(2 * ell) / eps;
    LogQuantity out;
    out.log2_value = static_cast<double>(r) * (std::log2(static_cast<double>(B.num())) -
                                               std::log2(static_cast<double>(B.den())));
    if (exact_feasible(out.log2_value))
        out.exact = bigrat_pow(BigRational(B.num(), B.den()), static_cast<std::uint64_t>(r));
    return out;
}

RlcCapacity rlc_capacity_params(const Rational& R, const Rational& eps, long ell) {
    if (!(R > Rational(0)) || !(R < Rational(1))) throw domain_error("need 0 < R < 1");
    if (!(eps > Rational(0))) throw domain_error("need eps > 0");
    if (ell < 1) throw domain_error("need ell >= 1");

    RlcCapacity out;
    out.R = R;
    out.eps = eps;
    out.ell = ell;

    const Rational e1 = Rational(8) * R / eps + Rational(6); // ell^{e1}
    const Rational e2 = Rational(4) / eps;                   // ell * 2^{e2}
    const double log2_ell = std::log2(static_cast<double>(ell));
    const double cand1 = e1.to_double() * log2_ell;
    const double cand2 = log2_ell + e2.to_double();

    if (cand1 >= cand2) {
        out.q_min.log2_value = cand1;
        if (e1.is_integer() && e1.num() >= 0 && exact_feasible(cand1))
            out.q_min.exact = BigRational(bigint_pow(ell, static_cast<std::uint64_t>(e1.num())));
    } else {
        out.q_min.log2_value = cand2;
        if (e2.is_integer() && e2.num() >= 0 && exact_feasible(cand2))
            out.q_min.exact =
                BigRational(BigInt(ell) * bigint_pow(2, static_cast<std::uint64_t>(e2.num())));
    }

    const Rational B = Rational(2 * ell) / eps;
    const double log2_B =
        std::log2(static_cast<double>(B.num())) - std::log2(static_cast<double>(B.den()));
    out.list_bound.log2_value = B.to_double() * log2_B;
    if (B.is_integer() && B.num() >= 1 && exact_feasible(out.list_bound.log2_value))
        out.list_bound.exact =
            BigRational(bigint_pow(B.num(), static_cast<std::uint64_t>(B.num())));

    out.desk_feasible = out.q_min.log2_value <= 20.0;
    return out;
}

LogQuantity lcl_family_log_size(long n, const Rational& rho, long ell, const BigInt& L) {
    if (n < 1) throw domain_error("need n >= 1");
    if (rho < Rational(0) || rho > Rational(1)) throw domain_error("need rho in [0, 1]");
    if (ell < 1) throw domain_error("need ell >= 1");
    if (L < 0) throw domain_error("need L >= 0");
    const long t = rho.floor_mul(n);
    const double per = log2_binomial(n, t) + static_cast<double>(n) * std::log2(static_cast<double>(ell));
    const double Lp1 = (L + 1).convert_to<double>();
    LogQuantity out;
    out.log2_value = Lp1 * per;
    if (n <= 24 && exact_feasible(out.log2_value) && L + 1 <= 1u << 20) {
        const std::uint64_t e = (L + 1).convert_to<std::uint64_t>();
        out.exact = BigRational(bigint_pow(exact_binomial(n, t), e) *
                                bigint_pow(ell, e * static_cast<std::uint64_t>(n)));
    }
    return out;
}

LogQuantity rs_transfer_rhs_log(const BigInt& b, const Rational& R_prime, long n,
                                const Rational& eps_prime, long long q,
                                const LogQuantity& logF) {
    if (b < 1) throw domain_error("need locality b >= 1");
    if (!(R_prime > Rational(0)) || R_prime > Rational(1))
        throw domain_error("need punctured rate in (0, 1]");
    if (!(eps_prime > Rational(0))) throw domain_error("need eps' > 0");
    if (n < 1) throw domain_error("need n >= 1");
    if (q < 2) throw domain_error("need q >= 2");
    // q > R' n b
    if (BigInt(q) * R_prime.den() <= BigInt(R_prime.num()) * n * b)
        throw domain_error("precondition q > R' n b violated");
    // eps' n >= 2 b (b+1)
    if (BigInt(eps_prime.num()) * n < BigInt(2) * b * (b + 1) * eps_prime.den())
        throw domain_error("precondition eps' n >= 2 b (b+1) violated");

    LogQuantity out;
    if (logF.log2_value == kNegInf) {
        out.log2_value = kNegInf;
        return out;
    }
    const double bd = b.convert_to<double>();
    const double log2_2b_minus1 =
        b <= 62 ? std::log2(static_cast<double>((1ull << b.convert_to<unsigned>()) - 1)) : bd;
    const double exponent = eps_prime.to_double() * static_cast<double>(n) / (2.0 * bd);
    const double bracket = 4.0 * bd * std::log2(4.0 * bd) +
                           std::log2(R_prime.to_double() * static_cast<double>(n)) -
                           std::log2(eps_prime.to_double()) -
                           std::log2(static_cast<double>(q));
    out.log2_value = log2_2b_minus1 + exponent * bracket + logF.log2_value;

    // exact companion: exponent integral, sizes sane, |F| exact available
    if (logF.exact && b <= 4096 && exact_feasible(out.log2_value)) {
        const std::uint64_t bb = b.convert_to<std::uint64_t>();
        const Rational e_rat =
            eps_prime * Rational(n) / Rational(2 * static_cast<long long>(bb));
        if (e_rat.is_integer() && e_rat.num() >= 0 && e_rat.num() <= 100000) {
            const std::uint64_t e = static_cast<std::uint64_t>(e_rat.num());
            const BigInt fourb = BigInt(4) * bb;
            BigRational inner(bigint_pow(fourb, 4 * bb) * R_prime.num() * n * eps_prime.den(),
                              BigInt(R_prime.den()) * eps_prime.num() * q);
            BigRational v = bigrat_pow(inner, e);
            v *= BigRational(bigint_pow(2, bb) - 1);
            v *= *logF.exact;
            out.exact = v;
        }
    }
    return out;
}

RsAlphabetRequirement rs_alphabet_requirement_log(const Rational& R, const Rational& eps,
                                                  long ell, const Rational& eps_prime,
                                                  const Rational& eta, long n) {
    if (!(R > Rational(0)) || !(R < Rational(1))) throw domain_error("need 0 < R < 1");
    if (!(eps > Rational(0))) throw domain_error("need eps > 0");
    if (ell < 1) throw domain_error("need ell >= 1");
    if (!(eps_prime > Rational(0))) throw domain_error("need eps' > 0");
    if (eta < Rational(0)) throw domain_error("need eta >= 0");
    if (n < 1) throw domain_error("need n >= 1");

    RsAlphabetRequirement out;
    const Rational B = Rational(2 * ell) / eps;
    const double Bd = B.to_double();
    const double log2_B =
        std::log2(static_cast<double>(B.num())) - std::log2(static_cast<double>(B.den()));
    out.list_bound.log2_value = Bd * log2_B; // log2 of B^B, pre-floor

    std::optional<BigInt> L;
    if (B.is_integer() && B.num() >= 1 && B.num() <= 4096) {
        L = bigint_pow(B.num(), static_cast<std::uint64_t>(B.num()));
    } else if (Bd * log2_B <= 300.0) {
        using bf = boost::multiprecision::cpp_bin_float_100;
        const bf v = boost::multiprecision::pow(bf(B.num()) / bf(B.den()), bf(B.num()) / bf(B.den()));
        L = boost::multiprecision::floor(v).convert_to<BigInt>();
    }
    if (L) {
        out.list_bound.exact = BigRational(*L);
        out.list_bound.log2_value = log2_big(*L);
        const double Lp1 = (*L + 1).convert_to<double>();
        const double first = 4.0 * Lp1 * std::log2(4.0 * Lp1) + std::log2(R.to_double()) +
                             std::log2(static_cast<double>(n)) - std::log2(eps_prime.to_double());
        const double second = ((std::log2(static_cast<double>(ell)) + 2.0) * Lp1 +
                               eta.to_double()) *
                              2.0 * Lp1 / eps_prime.to_double();
        out.q_min.log2_value = first + second;
    } else {
        // L+1 itself overflows double here, so the requirement does too.
        out.q_min.log2_value = std::numeric_limits<double>::infinity();
    }
    out.desk_feasible = out.q_min.log2_value <= 20.0;
    return out;
}

BigInt list_size_lower_bound(const Rational& R, const Rational& eps, long ell) {
    if (!(R > Rational(0))) throw domain_error("need R > 0");
    if (!(eps > Rational(0))) throw domain_error("need eps > 0");
    if (ell < 1) throw domain_error("need ell >= 1");
    const long long e = (R / eps).floor();
    if (e > 1 << 20) throw budget_error("exponent floor(R/eps) too large to materialize");
    return bigint_pow(ell, static_cast<std::uint64_t>(e));
}

JohnsonRadius johnson_radius(const Rational& R, long ell) {
    if (!(R > Rational(0)) || R > Rational(1)) throw domain_error("need 0 < R <= 1");
    if (ell < 1) throw domain_error("need ell >= 1");
    JohnsonRadius out;
    const double v = 1.0 - std::sqrt(R.to_double() * static_cast<double>(ell));
    if (v <= 0.0) {
        out.radius = 0.0;
        out.clamped = R * Rational(ell) > Rational(1);
    } else {
        out.radius = v;
    }
    return out;
}

long long ball_rank_lower_bound(const Rational& R, const Rational& eps, long ell) {
    if (!(R > Rational(0)) || !(R < Rational(1))) throw domain_error("need 0 < R < 1");
    if (!(eps > Rational(0))) throw domain_error("need eps > 0");
    if (ell < 1) throw domain_error("need ell >= 1");
    return ((Rational(1) - R) * Rational(ell) / eps).ceil() - 1;
}

} // namespace lrlab
