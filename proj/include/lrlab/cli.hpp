#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "lrlab/certify.hpp"
#include "lrlab/lcl.hpp"

namespace lrlab::cli {

// Everything a run depends on. Commands are pure functions of this struct:
// equal configs produce byte-identical documents. The thread count is
// execution environment, not experiment input, and is therefore excluded
// from the config echo in output documents.
struct Config {
    std::string command;

    std::uint32_t p = 2;
    std::uint32_t field_m = 1; // extension degree (q = p^field_m)
    int n = 0;
    int k = 0;
    int b = 2;   // profile locality (lcl-check)
    int ell = 1;

    std::optional<Rational> eps;
    std::optional<Rational> rho;
    std::optional<Rational> rate;      // overrides k/n where a rate is needed
    std::optional<Rational> eps_prime;
    std::optional<Rational> eta;
    std::optional<long long> transfer_b;

    std::uint64_t seed = 0;
    std::uint64_t trials = 10;
    std::uint64_t proposals = 50; // adversarial ball proposals per trial (mc)
    std::uint64_t budget = kEnumerationBudget;
    int threads = 0; // 0 = library default

    std::string family = "rlc"; // rlc | rs
    bool distinct_points = false;
    std::string strategy = "codeword-seeded";
    std::string format = "json"; // json | csv

    std::string out_path;  // certify-*: certificate file; others: copy of stdout
    std::string code_path; // load a code document instead of sampling
    std::string ball_path; // load a ball document instead of sampling
    std::string cert_path; // certificate to verify
    bool verify_only = false;
    bool verify_brute_force = false;
};

// stdout_text goes to standard output; files maps paths to documents the
// caller should write. Exit codes: 0 success, 1 verification failure,
// 2 usage/parameter error, 3 budget exceeded.
struct Outcome {
    int exit_code = 0;
    std::string stdout_text;
    std::string error; // diagnostic for nonzero exits, printed to stderr
    std::map<std::string, std::string> files;
};

Outcome cmd_bounds(const Config& config);
Outcome cmd_certify_lower_bound(const Config& config);
Outcome cmd_certify_independent(const Config& config);
Outcome cmd_recover(const Config& config);
Outcome cmd_mc(const Config& config);
Outcome cmd_distance(const Config& config);
Outcome cmd_lcl_check(const Config& config);

// Dispatches on config.command and maps the error taxonomy to exit codes
// (usage/domain/rank/sampling/construction -> 2, budget -> 3).
Outcome run(const Config& config);

// Shortest round-trip decimal for doubles ("inf", "-inf", "nan" spelled
// out); documents store all floating-point values through this single
// formatter so output is platform-independent.
std::string format_double(double x);

} // namespace lrlab::cli
