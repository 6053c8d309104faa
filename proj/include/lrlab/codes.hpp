#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lrlab/matrix.hpp"
#include "lrlab/rng.hpp"

namespace lrlab {

// Hard cap on full-codebook enumerations: q^k <= 2^30.
inline constexpr std::uint64_t kEnumerationBudget = 1ull << 30;

// Consecutive degenerate redraws tolerated before sampling gives up.
inline constexpr int kResampleLimit = 100;

// An [n, k] linear code given by an n x k generator of full column rank;
// codewords are G * message.
struct LinearCode {
    std::shared_ptr<const Field> field;
    int n = 0;
    int k = 0;
    Matrix G;
};

// Validates shape and column rank.
LinearCode make_linear_code(std::shared_ptr<const Field> field, Matrix G);

struct SampleStats {
    int resamples = 0; // discarded degenerate draws before success
};

// Uniform i.i.d. generator entries, redrawn wholesale while the column rank
// is deficient. Throws sampling_error after kResampleLimit consecutive
// failures (q^k close to q^{k-1} territory, i.e. k too large for n).
LinearCode sample_rlc(std::shared_ptr<const Field> field, int n, int k, Rng& rng,
                      SampleStats* stats = nullptr);
LinearCode sample_rlc(std::shared_ptr<const Field> field, int n, int k, std::uint64_t seed,
                      SampleStats* stats = nullptr);

// Polynomial-evaluation code: G[i][j] = points[i]^j. Requires at least k
// distinct evaluation points for full rank.
LinearCode rs_code(std::shared_ptr<const Field> field, const Vec& points, int k);

// Evaluation points drawn i.i.d. uniform (the default model), redrawn
// wholesale while fewer than k distinct values come up; with
// distinct_points, a uniformly random injective point sequence instead
// (the i.i.d. draw conditioned on all points distinct).
std::pair<LinearCode, Vec> sample_random_rs(std::shared_ptr<const Field> field, int n, int k,
                                            Rng& rng, SampleStats* stats = nullptr,
                                            bool distinct_points = false);

Vec encode(const LinearCode& code, const Vec& message);

// q^k, guarded by kEnumerationBudget (budget_error beyond it).
std::uint64_t codeword_count(const LinearCode& code);
std::uint64_t message_count(std::uint32_t q, int k, std::uint64_t budget = kEnumerationBudget);

// Messages are ordered lexicographically by element index with coordinate 0
// most significant: index = msg[0] q^{k-1} + ... + msg[k-1].
Vec message_from_index(const Field& F, int k, std::uint64_t index);
std::uint64_t index_from_message(const Field& F, const Vec& message);

struct MessageRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
};

// Contiguous near-even split of [0, total); concatenated in order the parts
// restore the full stream.
std::vector<MessageRange> partition_messages(std::uint64_t total, unsigned parts);

// Streams codewords in message order. advance() updates the cached codeword
// incrementally: each changed message digit contributes one scaled generator
// column, so a step costs O(n) amortized instead of a full k x n encode.
class CodewordScanner {
public:
    CodewordScanner(const LinearCode& code, std::uint64_t start_index);

    std::uint64_t index() const { return index_; }
    const Vec& codeword() const { return cw_; }
    const std::vector<std::uint32_t>& message_digits() const { return msg_; }

    void advance();

private:
    const Field& F_;
    std::uint32_t q_;
    int n_, k_;
    std::vector<Vec> cols_; // generator columns
    std::vector<std::uint32_t> msg_;
    Vec cw_;
    std::uint64_t index_;
};

struct DistanceResult {
    int d = 0;                          // minimum Hamming weight over nonzero codewords
    Vec witness;                        // a codeword attaining it
    std::uint64_t witness_message = 0;  // smallest message index attaining d
};

// Exhaustive weight scan over all q^k messages (OpenMP across message
// ranges; the (weight, index)-lexicographic merge makes the witness
// independent of the parallelism degree).
DistanceResult min_distance(const LinearCode& code, std::uint64_t budget = kEnumerationBudget);

// Text round-trip: header (p, m, modulus, n, k) + row-major generator entries.
std::string code_to_text(const LinearCode& code);
LinearCode code_from_text(const std::string& text);

namespace detail {
struct LineReader;
}

// Parses one code block ("lrlab-code v1" ... "end") from an open reader, so
// documents embedding a code can delegate to the same parser.
LinearCode code_from_reader(detail::LineReader& rd);

} // namespace lrlab
