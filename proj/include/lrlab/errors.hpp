#pragma once

#include <stdexcept>
#include <string>

namespace lrlab {

// Error taxonomy shared by the library and the CLI. The CLI maps these to
// exit codes: usage/domain/rank/sampling/construction -> 2, budget -> 3.
// Verification *failures* are not exceptions; verifiers return reports.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad flags, mismatched shapes, mismatched field specs,
// unparseable documents.
struct usage_error : error {
    using error::error;
};

// Parameter outside its mathematical domain (nonprime characteristic,
// reducible modulus, rho outside [0,1], entropy base <= 1, ...).
struct domain_error : error {
    using error::error;
};

// A rank/independence precondition failed (rank-deficient generator,
// too few distinct evaluation points).
struct rank_error : error {
    using error::error;
};

// Repeated degenerate random draws (resample limit exhausted).
struct sampling_error : error {
    using error::error;
};

// A certificate construction is infeasible at these parameters; the message
// names the failing inequality or count.
struct construction_error : error {
    using error::error;
};

// An enumeration or search budget would be exceeded.
struct budget_error : error {
    using error::error;
};

} // namespace lrlab
