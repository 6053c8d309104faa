#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lrlab/bounds.hpp"
#include "lrlab/listrec.hpp"

namespace lrlab {

// Hard cap on the number of trapped codewords a certificate materializes.
inline constexpr std::uint64_t kTrappedListLimit = 1'000'000;

// m+1 nonzero codewords whose supports inside the window of the first
// k + k' systematic coordinates are pairwise disjoint, k' = ceil(eps n).
// Members 0..m-1 place a kernel vector of the k' x (k'+1) parity window in
// one of m disjoint blocks of k'+1 systematic columns; member m is the last
// systematic basis column, untouched by the blocks. Coordinates here are
// systematic (row-permuted); row_perm[i] gives the original coordinate.
struct DisjointSupportFamily {
    std::shared_ptr<const Field> field;
    int k_prime = 0;                   // ceil(eps n)
    int m = 0;                         // floor((k-1)/(k'+1)); family size m+1
    std::vector<std::size_t> row_perm; // systematic row i <- original row row_perm[i]
    std::vector<Vec> messages;         // m+1 systematic-basis messages
    std::vector<Vec> w;                // m+1 codewords, systematic coordinates
};

// Throws construction_error when ceil(eps n) >= k or k + ceil(eps n) > n
// (the window construction needs eps below the rate and inside the length).
DisjointSupportFamily build_disjoint_supports(const LinearCode& code, const Rational& eps);

// A checkable witness that list-recovery of the embedded code at radius
// 1 - R - eps (R = k/n) has output list size at least ell^(m+1): every
// combination sum_i beta_{d_i} w_i lands in one explicit ball. Trapped
// codewords and the ball are stored in original coordinates.
struct LowerBoundCertificate {
    LinearCode code;
    int ell = 0;
    Rational eps;
    DisjointSupportFamily family;
    Vec betas;                        // shared coefficient set, ell distinct elements
    std::vector<Vec> trapped;         // ell^(m+1) codewords, original coordinates
    std::vector<Vec> trapped_messages; // matching original-basis messages
    RecoveryBall ball;                // original coordinates; rho = (n-k-k')/n
    BigInt claimed_bound;             // ell^floor(R/eps)
    // (eps n)^2 > 2k, the regime where m+1 provably reaches floor(R/eps) and
    // the trapped count meets claimed_bound.
    bool floor_exponent_met = false;
};

// Canonical build: betas default to the first ell field elements (a caller
// may supply any ell distinct elements instead); lists are padded with the
// smallest unused element indices. Throws construction_error on infeasible
// parameters and budget_error when ell^(m+1) > kTrappedListLimit.
LowerBoundCertificate build_lower_bound_certificate(const LinearCode& code, int ell,
                                                    const Rational& eps,
                                                    std::optional<Vec> betas = std::nullopt);

struct CheckEntry {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckEntry> checks;
    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

// Re-derives every claim from the embedded code; accepts any valid systematic
// row choice, not only the canonical one. Structural failures (shapes, row
// permutation) end the report early; semantic checks all run. With
// brute_force, additionally enumerates the full recovered list and checks it
// contains every trapped codeword (enumeration budget applies).
VerificationReport verify_lower_bound_certificate(const LowerBoundCertificate& cert,
                                                  bool brute_force = false);

// A checkable witness that one radius-(1-R-eps) ball contains
// m = ceil((1-R) ell / eps) - 1 linearly independent codewords: the first m
// systematic basis codewords, covered on the parity window by a round-robin
// schedule of ell columns per coordinate.
struct IndependentSubsetCertificate {
    LinearCode code;
    int ell = 0;
    Rational eps;
    int m = 0;
    std::vector<std::size_t> row_perm;
    std::vector<Vec> messages;         // m original-basis messages
    std::vector<Vec> vectors;          // the codewords, original coordinates
    RecoveryBall ball;                 // original coordinates; rho = 1 - R - eps
    std::vector<int> agreement_counts; // per vector, |agreement| with the lists
};

// Throws construction_error when eps > 1 - R, m < 1, m > k, or some vector
// misses the agreement threshold (the error names the failing count).
IndependentSubsetCertificate build_independent_subset_certificate(const LinearCode& code,
                                                                  int ell, const Rational& eps);

// Re-derives rank, membership and the recorded agreement counts. With
// cross_check, also runs the enumeration-based rank of ball-intersect-code
// and checks it reaches m.
VerificationReport verify_independent_subset_certificate(const IndependentSubsetCertificate& cert,
                                                         bool cross_check = false);

// Text round-trips. Certificates are self-contained documents: they embed
// the code and the ball, so verification needs no side inputs. Parsing
// validates shapes and ranges (usage_error) but leaves semantic claims to
// the verifiers.
std::string lower_bound_certificate_to_text(const LowerBoundCertificate& cert);
LowerBoundCertificate lower_bound_certificate_from_text(const std::string& text);
std::string independent_subset_certificate_to_text(const IndependentSubsetCertificate& cert);
IndependentSubsetCertificate independent_subset_certificate_from_text(const std::string& text);

} // namespace lrlab
