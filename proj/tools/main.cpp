// lrlab: finite-field list-recovery laboratory.
//
// Experiment configuration happens entirely on the command line; every
// subcommand is a deterministic function of its flags (see cli.hpp), so the
// process here is thin: parse flags, run, write files, report timing to
// stderr (never into the documents).

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lrlab/cli.hpp"
#include "lrlab/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

lrlab::Rational parse_rational(const std::string& text) { return lrlab::Rational::parse(text); }

void add_common_flags(CLI::App* cmd, lrlab::cli::Config& cfg, std::string& eps, std::string& rho,
                      std::string& rate) {
    cmd->add_option("--p", cfg.p, "field characteristic (prime)");
    cmd->add_option("--m", cfg.field_m, "extension degree; q = p^m");
    cmd->add_option("--n", cfg.n, "block length");
    cmd->add_option("--k", cfg.k, "dimension");
    cmd->add_option("--ell", cfg.ell, "input list size");
    cmd->add_option("--eps", eps, "slack epsilon as num/den (exact)");
    cmd->add_option("--rho", rho, "radius as num/den (exact)");
    cmd->add_option("--rate", rate, "rate as num/den (defaults to k/n where needed)");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--trials", cfg.trials, "trial count");
    cmd->add_option("--budget", cfg.budget, "enumeration budget (q^k cap)");
    cmd->add_option("--threads", cfg.threads, "parallelism degree (0 = default)");
    cmd->add_option("--out", cfg.out_path, "write the primary artifact to this file");
    cmd->add_option("--format", cfg.format, "output format: json or csv");
    cmd->add_option("--code", cfg.code_path, "load a code document instead of sampling");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(lrlab::kToolName) + " " + lrlab::kToolVersion +
                 " - list-recovery laboratory for linear codes over GF(q)"};
    app.require_subcommand(1);

    lrlab::cli::Config cfg;
    std::string eps, rho, rate, eps_prime, eta;
    long long transfer_b = -1;

    auto* bounds = app.add_subcommand("bounds", "capacity, list-size and transfer bound table");
    add_common_flags(bounds, cfg, eps, rho, rate);
    bounds->add_option("--eps-prime", eps_prime, "puncturing slack as num/den");
    bounds->add_option("--eta", eta, "failure exponent eta as num/den");
    bounds->add_option("--b", transfer_b, "profile locality for the transfer row");

    auto* clb = app.add_subcommand("certify-lower-bound",
                                   "build and verify a trapped-list lower bound certificate");
    add_common_flags(clb, cfg, eps, rho, rate);
    clb->add_option("--cert", cfg.cert_path, "certificate document to verify");
    clb->add_flag("--verify-only", cfg.verify_only, "verify --cert without building");
    clb->add_flag("--verify-brute-force", cfg.verify_brute_force,
                  "cross-check against full list enumeration");

    auto* cin_ = app.add_subcommand("certify-independent",
                                    "build and verify an independent-subset certificate");
    add_common_flags(cin_, cfg, eps, rho, rate);
    cin_->add_option("--cert", cfg.cert_path, "certificate document to verify");
    cin_->add_flag("--verify-only", cfg.verify_only, "verify --cert without building");
    cin_->add_flag("--verify-brute-force", cfg.verify_brute_force,
                   "cross-check rank via full enumeration");

    auto* recover = app.add_subcommand("recover", "enumerate one ball's recovered list");
    add_common_flags(recover, cfg, eps, rho, rate);
    recover->add_option("--ball", cfg.ball_path, "load a ball document instead of sampling");

    auto* mc = app.add_subcommand("mc", "multi-trial sampling experiments (RLC or RS)");
    add_common_flags(mc, cfg, eps, rho, rate);
    mc->add_option("--family", cfg.family, "code family: rlc or rs");
    mc->add_flag("--distinct", cfg.distinct_points, "RS: insist on distinct evaluation points");
    mc->add_option("--strategy", cfg.strategy,
                   "ball search: random, codeword-seeded, or exhaustive-tiny");
    mc->add_option("--proposals", cfg.proposals, "adversarial ball proposals per trial");

    auto* distance = app.add_subcommand("distance", "exact minimum distance of one code");
    add_common_flags(distance, cfg, eps, rho, rate);
    distance->add_option("--family", cfg.family, "code family when sampling: rlc or rs");
    distance->add_flag("--distinct", cfg.distinct_points, "RS: insist on distinct evaluation points");

    auto* lcl = app.add_subcommand("lcl-check",
                                   "bidirectional profile/ball consistency sweep");
    add_common_flags(lcl, cfg, eps, rho, rate);
    lcl->add_option("--b", cfg.b, "profile locality");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!eps.empty()) cfg.eps = parse_rational(eps);
        if (!rho.empty()) cfg.rho = parse_rational(rho);
        if (!rate.empty()) cfg.rate = parse_rational(rate);
        if (!eps_prime.empty()) cfg.eps_prime = parse_rational(eps_prime);
        if (!eta.empty()) cfg.eta = parse_rational(eta);
        if (transfer_b >= 0) cfg.transfer_b = transfer_b;
    } catch (const lrlab::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

    const auto t0 = std::chrono::steady_clock::now();
    const lrlab::cli::Outcome out = lrlab::cli::run(cfg);
    const auto t1 = std::chrono::steady_clock::now();

    for (const auto& [path, content] : out.files) {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open \"" << path << "\" for writing\n";
            return 2;
        }
        f << content;
    }
    std::cout << out.stdout_text;
    if (!out.error.empty()) std::cerr << "error: " << out.error << "\n";
    std::cerr << "wall-clock: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << " ms\n";
    return out.exit_code;
}
