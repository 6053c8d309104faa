#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>

#include "lrlab/rational.hpp"

namespace lrlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// A nonnegative quantity tracked in log2 space, with an exact big-rational
// companion whenever the exponents involved are integral and of feasible
// size. Infeasible magnitudes are still returned in log form, never
// saturated.
struct LogQuantity {
    double log2_value = 0.0;
    std::optional<BigRational> exact;
};

// log2 of exact positives (0 maps to -infinity).
double log2_big(const BigInt& x);
double log2_big(const BigRational& x);

BigInt exact_binomial(long n, long k);
double log2_binomial(long n, long k); // lgamma route, independent of exact_binomial

// Entropy with alphabet parameter `base` (> 1):
//   H_base(x) = x log_base(base-1) - x log_base x - (1-x) log_base(1-x).
double q_ary_entropy(double x, double base);

// Parameter bag for the capacity-style calculators; optional members are
// required only by the calculators that use them.
struct CapacityParams {
    Rational R;
    Rational eps;
    long ell = 2;
    std::optional<long long> q;
    std::optional<long> n;
    std::optional<Rational> rho; // defaults to 1 - R - eps
    std::optional<Rational> eps_prime;
    std::optional<Rational> eta;
    std::optional<Rational> R_prime;
    std::optional<long long> b;
};

// Union bound that a random [n, Rn] code meets a bad list configuration at
// radius rho = 1-R-eps with L = 2 ell / eps:
//   first_line = (binom(n, t) ell^{n-t} (q-ell)^t / q^n)^L * q^{n ell} * q^{R n L}
// with t = floor(rho n), together with the simplified chain endpoint
// q^{-eps n L / 8}. Under q >= max(ell^{8R/eps+6}, ell 2^{4/eps}) the first
// line is bounded by the endpoint.
struct BadConfigBound {
    LogQuantity first_line;
    LogQuantity endpoint;
    Rational rho;
    Rational L;
    long t = 0; // floor(rho n)
};

BadConfigBound rlc_bad_config_log_prob(const Rational& R, const Rational& eps, long ell,
                                       long long q, long n);
BadConfigBound rlc_bad_config_log_prob(const CapacityParams& params);

// (2 ell / eps)^r: list size forced by a recovered list spanning an
// r-dimensional subspace (codes of distance > eps/2 at radius distance-eps/2).
LogQuantity span_list_bound(long ell, const Rational& eps, long r);

// Alphabet threshold and list bound for list-recovering random linear codes
// eps below capacity: q_min = max(ell^{8R/eps+6}, ell 2^{4/eps}),
// list_bound = (2 ell / eps)^{2 ell / eps}, failure probability 2 q_min^{-eps n/8}.
struct RlcCapacity {
    LogQuantity q_min;
    LogQuantity list_bound;
    Rational R, eps;
    long ell = 0;
    bool desk_feasible = false; // q_min <= 2^20

    double failure_log2(long n) const {
        return 1.0 - eps.to_double() * static_cast<double>(n) / 8.0 * q_min.log2_value;
    }
};

RlcCapacity rlc_capacity_params(const Rational& R, const Rational& eps, long ell);

// Size bound for the family of local coordinate-wise linear profiles with
// locality b = L+1: binom(n, floor(rho n))^{L+1} * ell^{(L+1) n}.
LogQuantity lcl_family_log_size(long n, const Rational& rho, long ell, const BigInt& L);

// Right side of the profile-transfer bound from a length-n parent to random
// puncturings: (2^b - 1) ((4b)^{4b} R' n / (eps' q))^{eps' n / (2b)} |F|,
// given |F| in log form. Preconditions q > R' n b and eps' n >= 2 b (b+1).
LogQuantity rs_transfer_rhs_log(const BigInt& b, const Rational& R_prime, long n,
                                const Rational& eps_prime, long long q,
                                const LogQuantity& logF);

// Alphabet size sufficient for random polynomial-evaluation codes:
// q_min = (4(L+1))^{4(L+1)} R n / eps' * 2^{((log2 ell + 2)(L+1) + eta) 2(L+1)/eps'}
// with L = floor((2 ell/eps)^{2 ell/eps}).
struct RsAlphabetRequirement {
    LogQuantity q_min;
    LogQuantity list_bound; // L
    bool desk_feasible = false; // q_min <= 2^20
};

RsAlphabetRequirement rs_alphabet_requirement_log(const Rational& R, const Rational& eps,
                                                  long ell, const Rational& eps_prime,
                                                  const Rational& eta, long n);

// ell^{floor(R/eps)}: list sizes no code of rate R can beat at radius
// 1 - R - eps.
BigInt list_size_lower_bound(const Rational& R, const Rational& eps, long ell);

struct JohnsonRadius {
    double radius = 0.0;
    bool clamped = false; // R ell > 1: no positive radius
};

JohnsonRadius johnson_radius(const Rational& R, long ell);

// ceil((1-R) ell / eps) - 1: how many independent codewords some radius
// (1-R-eps) ball must contain.
long long ball_rank_lower_bound(const Rational& R, const Rational& eps, long ell);

} // namespace lrlab
