#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrlab/bounds.hpp"
#include "lrlab/listrec.hpp"

namespace lrlab {

// Abstract shape of a b-tuple of codewords inside one radius-rho ball:
// slot j agrees on the coordinate set sets[j] (exactly ceil((1-rho) n)
// coordinates), and M[i][j] in 1..ell names which list element slot j takes
// at coordinate i. The spec never stores concrete field values, so the
// number of distinct specs is binom(n, floor(rho n))^b * ell^(b n).
struct ProfileSpec {
    int n = 0;
    int b = 0;
    int ell = 0;
    Rational rho;
    std::vector<std::vector<int>> sets; // b rows, ascending, size = threshold
    std::vector<std::vector<int>> M;    // n rows of b entries in 1..ell
};

// Per-coordinate subspace V_i of F^b the spec induces: at coordinate i,
// slots j and k are linked when both agree there with the same list element;
// V_i is the solution space of the generated equalities, i.e. vectors
// constant on each class of the transitive closure. Only the partition is
// stored; bases are materialized on demand.
struct LocalProfile {
    std::shared_ptr<const Field> field;
    ProfileSpec spec;
    int threshold = 0;
    std::vector<std::vector<int>> classes_of; // [i][j] = class of slot j at coordinate i
    std::vector<int> dims;                    // dim V_i = classes per coordinate
    long long total_dim = 0;                  // sum of dims
};

// Validates shapes and ranges (usage_error) and builds the class structure.
LocalProfile profile_from_spec(ProfileSpec spec, std::shared_ptr<const Field> field);

// Basis of V_i, one row per class: the class indicator vectors.
Matrix profile_subspace_basis(const LocalProfile& prof, int i);

// Does the tuple realize the profile: b distinct vectors of length n whose
// rows lie in every V_i (values constant on each class).
bool profile_matches(const LocalProfile& prof, const std::vector<Vec>& tuple);

// An n x b matrix with distinct codeword columns whose rows lie in the V_i.
struct ContainmentWitness {
    Matrix A;                         // n x b, column j = codeword of slot j
    std::vector<Vec> column_messages; // the b messages
};

struct ContainmentResult {
    bool contained = false;
    bool inconclusive = false; // randomized search exhausted its trials
    std::optional<ContainmentWitness> witness;
    std::uint64_t nodes = 0;   // tuple extensions tested / trials used
};

// Exhaustive search over ordered b-tuples of distinct codewords in message
// lex order with prefix pruning; the witness is the lex-least realization
// and is re-validated before being returned. OpenMP splits the outermost
// column choice. Throws budget_error when q^(k b) > budget.
ContainmentResult code_contains_profile(const LinearCode& code, const LocalProfile& prof,
                                        std::uint64_t budget = kEnumerationBudget);

// Random distinct codeword tuples instead; a miss is inconclusive, never a
// refutation.
ContainmentResult code_contains_profile_random(const LinearCode& code, const LocalProfile& prof,
                                               std::uint64_t trials, std::uint64_t seed);

// The profile induced by b distinct ball members: sets[j] keeps the
// lexicographically least threshold agreement coordinates, M[i][j] the
// 1-based list position of the value when present (1 otherwise). The result
// is re-checked to match the witnesses. Throws usage_error on duplicate
// witnesses or a witness outside the ball.
ProfileSpec violation_to_profile(const RecoveryBall& ball, const std::vector<Vec>& codewords);

// The ball a containment witness generates: S_i collects the witness values
// of the slots agreeing at i, padded with the smallest unused elements.
// Every witness column lands inside it by construction.
RecoveryBall profile_witness_ball(const LocalProfile& prof, const std::vector<Vec>& columns);

// Uniform spec: each agreement set a uniform threshold-subset, each matrix
// entry uniform in 1..ell.
ProfileSpec sample_profile_spec(int n, int b, int ell, const Rational& rho, Rng& rng);

// Size bound for the spec family with locality b = L+1; single source of
// truth lives in the bounds module.
inline LogQuantity family_log_size(long n, const Rational& rho, long ell, const BigInt& L) {
    return lcl_family_log_size(n, rho, ell, L);
}

// Two-directional consistency sweep between balls and profiles.
//  - Ball direction: random balls (substream 2t) whose recovered list
//    reaches b codewords; the induced profile must match its own tuple and
//    be found contained by the exhaustive search.
//  - Spec direction: random specs (substream 2t+1); when a containment
//    witness exists, the witness ball must hold every witness column.
// Violations of either implication are counted; both counts must stay zero.
struct LclConsistencyReport {
    std::uint64_t balls_tried = 0;
    std::uint64_t ball_cases = 0; // recovered list reached b
    std::uint64_t ball_violations = 0;
    std::uint64_t specs_tried = 0;
    std::uint64_t spec_cases = 0; // containment witness found
    std::uint64_t spec_violations = 0;
};

LclConsistencyReport lcl_consistency_check(const LinearCode& code, int b, int ell,
                                           const Rational& rho, std::uint64_t trials,
                                           std::uint64_t seed,
                                           std::uint64_t budget = kEnumerationBudget);

// Text round-trip: dimensions, radius, the b index sets, the n x b matrix.
std::string profile_to_text(const ProfileSpec& spec);
ProfileSpec profile_from_text(const std::string& text);

} // namespace lrlab
