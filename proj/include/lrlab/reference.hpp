#pragma once

// Serial reference implementations, deliberately coded on a different path
// from the OpenMP kernels: plain per-message encodes, linear-search list
// membership, no incremental updates. They exist as oracles for the fast
// kernels (tests, acceptance cross-checks) and as the baseline side of the
// benchmark.

#include "lrlab/listrec.hpp"

namespace lrlab::ref {

// Per-codeword membership scan over all q^k messages.
RecoveredList recover_list(const LinearCode& code, const RecoveryBall& ball,
                           std::uint64_t budget = kEnumerationBudget);

// Minimum distance as the minimum over pairwise differences of distinct
// codewords; quadratic, so limited to q^k <= pair_budget.
DistanceResult min_distance_pairwise(const LinearCode& code, std::uint64_t pair_budget = 10'000);

// Serial naive weight scan (full encode per message), benchmark baseline.
DistanceResult min_distance_naive(const LinearCode& code, std::uint64_t budget = kEnumerationBudget);

} // namespace lrlab::ref
