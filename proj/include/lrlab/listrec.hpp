#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrlab/codes.hpp"
#include "lrlab/rational.hpp"

namespace lrlab {

// Cap on exhaustive-tiny ball enumeration: binom(q, ell)^n tuples.
inline constexpr std::uint64_t kBallEnumerationBudget = 10'000'000;

// One candidate list per coordinate, each of exactly ell distinct elements,
// stored sorted ascending by element index.
struct InputLists {
    std::shared_ptr<const Field> field;
    int n = 0;
    int ell = 0;
    std::vector<std::vector<FieldElement>> lists;
};

InputLists make_input_lists(std::shared_ptr<const Field> field,
                            std::vector<std::vector<FieldElement>> lists);

// The radius-rho ball around the lists: vectors agreeing with at least
// ceil((1-rho) n) coordinates. The threshold is exact; rho never touches
// floating point.
struct RecoveryBall {
    Rational rho;
    InputLists lists;
    int threshold = 0;
};

RecoveryBall make_ball(const Rational& rho, InputLists lists);

// Coordinates where x[i] is a member of list i, ascending.
std::vector<int> agreement(const Vec& x, const InputLists& lists);
bool in_ball(const Vec& x, const RecoveryBall& ball);

struct RecoveredList {
    std::vector<Vec> codewords; // in message-index order
    std::vector<Vec> messages;
    int span_dim = 0; // dimension of the span of the recovered codewords
};

// Full enumeration of all q^k codewords against the ball (OpenMP across
// message ranges; per-range hits concatenated in range order, so the output
// is identical at every parallelism degree).
RecoveredList recover_list(const LinearCode& code, const RecoveryBall& ball,
                           std::uint64_t budget = kEnumerationBudget);

struct IndependentInBall {
    int rank = 0;
    std::vector<Vec> witnesses; // greedy basis in message-index order
};

// Rank of the span of (ball intersect code) without materializing the list:
// per-range greedy bases re-merged in range order reproduce the serial greedy
// scan exactly.
IndependentInBall independent_in_ball(const LinearCode& code, const RecoveryBall& ball,
                                      std::uint64_t budget = kEnumerationBudget);

enum class SearchStrategy { Random, CodewordSeeded, ExhaustiveTiny };

SearchStrategy strategy_from_name(const std::string& name);
std::string strategy_name(SearchStrategy s);

struct SearchResult {
    RecoveryBall ball;     // best ball found
    RecoveredList list;    // its recovered list
    std::uint64_t proposals = 0;
    bool exhaustive = false;
};

// Adversarial search for large recovered lists at a fixed radius.
//  - Random: `budget` balls with uniform distinct lists, one substream per
//    proposal (substream 2t of `seed`).
//  - CodewordSeeded: every Random proposal plus, per trial, a ball seeded
//    from ell random codewords (substream 2t+1) padded with uniform symbols;
//    therefore never worse than Random on the same seed.
//  - ExhaustiveTiny: all binom(q, ell)^n list tuples (budget-guarded),
//    exact maximum.
// Ties break toward the earliest proposal, so results are seed-reproducible.
SearchResult max_list_size_search(const LinearCode& code, int ell, const Rational& rho,
                                  SearchStrategy strategy, std::uint64_t budget,
                                  std::uint64_t seed);

// Draw ell distinct elements per coordinate, uniformly.
InputLists sample_input_lists(std::shared_ptr<const Field> field, int n, int ell, Rng& rng);

// Text round-trip: radius as num/den + n lines of ell element indices.
std::string ball_to_text(const RecoveryBall& ball);
RecoveryBall ball_from_text(const std::string& text, std::shared_ptr<const Field> field);

// Parses one ball block ("lrlab-ball v1" ... "end") from an open reader, so
// documents embedding a ball can delegate to the same parser.
RecoveryBall ball_from_reader(detail::LineReader& rd, std::shared_ptr<const Field> field);

} // namespace lrlab
