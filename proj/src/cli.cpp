#include "lrlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "lrlab/version.hpp"

namespace lrlab::cli {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open \"" + path + "\" for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string bigrat_str(const BigRational& x) {
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].index;
    return os.str();
}

ordered_json opt_rational(const std::optional<Rational>& r) {
    if (!r) return nullptr;
    return r->str();
}

ordered_json config_echo(const Config& c) {
    ordered_json j;
    j["p"] = c.p;
    j["m"] = c.field_m;
    j["n"] = c.n;
    j["k"] = c.k;
    j["b"] = c.b;
    j["ell"] = c.ell;
    j["eps"] = opt_rational(c.eps);
    j["rho"] = opt_rational(c.rho);
    j["rate"] = opt_rational(c.rate);
    j["eps_prime"] = opt_rational(c.eps_prime);
    j["eta"] = opt_rational(c.eta);
    j["transfer_b"] = c.transfer_b ? ordered_json(*c.transfer_b) : ordered_json(nullptr);
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["proposals"] = c.proposals;
    j["budget"] = c.budget;
    j["family"] = c.family;
    j["distinct_points"] = c.distinct_points;
    j["strategy"] = c.strategy;
    j["format"] = c.format;
    j["out"] = c.out_path;
    j["code"] = c.code_path;
    j["ball"] = c.ball_path;
    j["cert"] = c.cert_path;
    j["verify_only"] = c.verify_only;
    j["verify_brute_force"] = c.verify_brute_force;
    return j;
}

ordered_json document_head(const Config& c) {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = c.command;
    j["config"] = config_echo(c);
    return j;
}

ordered_json log_quantity_json(const LogQuantity& v) {
    ordered_json j;
    j["log2"] = format_double(v.log2_value);
    j["exact"] = v.exact ? ordered_json(bigrat_str(*v.exact)) : ordered_json(nullptr);
    return j;
}

ordered_json report_json(const VerificationReport& rep) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["detail"] = c.detail;
        arr.push_back(std::move(e));
    }
    ordered_json j;
    j["checks"] = std::move(arr);
    j["all_pass"] = rep.all_pass();
    return j;
}

std::string first_failing_check(const VerificationReport& rep) {
    for (const auto& c : rep.checks)
        if (!c.pass) return c.name;
    return "";
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string scalar_str(const ordered_json& j) {
    if (j.is_null()) return "";
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    return j.dump();
}

void flatten(const ordered_json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (const auto& item : j.items())
            flatten(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(), out);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& v : j) flatten(v, prefix + "." + std::to_string(i++), out);
    } else {
        out += csv_escape(prefix);
        out += ',';
        out += csv_escape(scalar_str(j));
        out += '\n';
    }
}

// Tabular mode is a flat key,value projection of the structured document, so
// both formats carry identical information (including provenance).
std::string to_csv(const ordered_json& doc) {
    std::string out = "key,value\n";
    flatten(doc, "", out);
    return out;
}

void finish(Outcome& out, const Config& c, const ordered_json& doc) {
    out.stdout_text = c.format == "csv" ? to_csv(doc) : doc.dump(2) + "\n";
    if (!c.out_path.empty() && !out.files.count(c.out_path)) out.files[c.out_path] = out.stdout_text;
}

// Loads --code when given, otherwise samples per --family on substream 0.
LinearCode obtain_code(const Config& c, ordered_json* provenance) {
    if (!c.code_path.empty()) {
        if (provenance) {
            (*provenance)["source"] = c.code_path;
        }
        return code_from_text(read_file(c.code_path));
    }
    if (c.n < 1 || c.k < 1) throw usage_error("need --n >= 1 and --k >= 1 (or --code FILE)");
    auto field = Field::make_extension(c.p, c.field_m);
    Rng rng = Rng::substream(c.seed, 0);
    SampleStats stats;
    LinearCode code;
    std::string source;
    if (c.family == "rlc") {
        code = sample_rlc(field, c.n, c.k, rng, &stats);
        source = "sampled-rlc";
    } else if (c.family == "rs") {
        code = sample_random_rs(field, c.n, c.k, rng, &stats, c.distinct_points).first;
        source = "sampled-rs";
    } else {
        throw usage_error("unknown family \"" + c.family + "\" (rlc or rs)");
    }
    if (provenance) {
        (*provenance)["source"] = source;
        (*provenance)["resamples"] = stats.resamples;
    }
    return code;
}

// A bounds-table row that is inapplicable at these parameters reports the
// violated inequality instead of failing the whole run.
template <typename Fn>
ordered_json guarded_row(Fn&& fn) {
    try {
        return fn();
    } catch (const budget_error& e) {
        return ordered_json{{"applicable", false}, {"reason", e.what()}};
    } catch (const error& e) {
        return ordered_json{{"applicable", false}, {"reason", e.what()}};
    }
}

} // namespace

Outcome cmd_bounds(const Config& c) {
    if (!c.rate) throw usage_error("bounds needs --rate num/den");
    if (!c.eps) throw usage_error("bounds needs --eps num/den");
    if (c.ell < 1) throw usage_error("bounds needs --ell >= 1");
    const Rational R = *c.rate;
    const Rational eps = *c.eps;
    const long ell = c.ell;
    const long long q = [&] {
        long long v = 1;
        for (std::uint32_t i = 0; i < c.field_m; ++i) v *= c.p;
        return v;
    }();

    ordered_json doc = document_head(c);
    ordered_json res;

    const RlcCapacity cap = rlc_capacity_params(R, eps, ell);
    {
        ordered_json row;
        row["q_min"] = log_quantity_json(cap.q_min);
        row["list_bound"] = log_quantity_json(cap.list_bound);
        row["desk_feasible"] = cap.desk_feasible;
        row["failure_log2"] =
            c.n > 0 ? ordered_json(format_double(cap.failure_log2(c.n))) : ordered_json(nullptr);
        res["rlc_capacity"] = std::move(row);
    }

    res["list_size_floor"] = guarded_row([&] { return ordered_json(list_size_lower_bound(R, eps, ell).str()); });

    {
        const JohnsonRadius jr = johnson_radius(R, ell);
        res["johnson_radius"] = ordered_json{{"radius", format_double(jr.radius)}, {"clamped", jr.clamped}};
    }

    res["ball_rank_lower_bound"] = guarded_row([&] { return ordered_json(ball_rank_lower_bound(R, eps, ell)); });

    if (c.n > 0) {
        res["rlc_bad_config"] = guarded_row([&] {
            const BadConfigBound bc = rlc_bad_config_log_prob(R, eps, ell, q, c.n);
            ordered_json row;
            row["q"] = q;
            row["rho"] = bc.rho.str();
            row["L"] = bc.L.str();
            row["t"] = bc.t;
            row["first_line"] = log_quantity_json(bc.first_line);
            row["endpoint"] = log_quantity_json(bc.endpoint);
            row["chain_holds"] = bc.first_line.log2_value <= bc.endpoint.log2_value;
            return row;
        });

        const Rational rho_family = c.rho ? *c.rho : Rational(1) - R - eps;
        const BigInt L_family =
            c.transfer_b ? BigInt(*c.transfer_b) - 1 : BigInt((Rational(2 * ell) / eps).ceil());
        res["lcl_family"] = guarded_row([&] {
            ordered_json row;
            row["rho"] = rho_family.str();
            row["L"] = L_family.str();
            row["size"] = log_quantity_json(lcl_family_log_size(c.n, rho_family, ell, L_family));
            return row;
        });

        if (c.eps_prime) {
            res["rs_alphabet"] = guarded_row([&] {
                const Rational eta = c.eta ? *c.eta : Rational(1);
                const RsAlphabetRequirement rs =
                    rs_alphabet_requirement_log(R, eps, ell, *c.eps_prime, eta, c.n);
                ordered_json row;
                row["eps_prime"] = c.eps_prime->str();
                row["eta"] = eta.str();
                row["q_min"] = log_quantity_json(rs.q_min);
                row["list_bound"] = log_quantity_json(rs.list_bound);
                row["desk_feasible"] = rs.desk_feasible;
                return row;
            });

            if (c.transfer_b) {
                res["rs_transfer"] = guarded_row([&] {
                    const BigInt tb(*c.transfer_b);
                    const Rational R_prime = R - *c.eps_prime;
                    const LogQuantity logF = lcl_family_log_size(c.n, rho_family, ell, tb - 1);
                    ordered_json row;
                    row["b"] = *c.transfer_b;
                    row["R_prime"] = R_prime.str();
                    row["family_size"] = log_quantity_json(logF);
                    row["rhs"] =
                        log_quantity_json(rs_transfer_rhs_log(tb, R_prime, c.n, *c.eps_prime, q, logF));
                    return row;
                });
            }
        }
    }

    doc["results"] = std::move(res);
    Outcome out;
    finish(out, c, doc);
    return out;
}

Outcome cmd_certify_lower_bound(const Config& c) {
    LowerBoundCertificate cert;
    if (c.verify_only) {
        if (c.cert_path.empty()) throw usage_error("verify-only needs --cert FILE");
        cert = lower_bound_certificate_from_text(read_file(c.cert_path));
    } else {
        if (!c.eps) throw usage_error("certify-lower-bound needs --eps num/den");
        cert = build_lower_bound_certificate(obtain_code(c, nullptr), c.ell, *c.eps);
    }
    const VerificationReport rep = verify_lower_bound_certificate(cert, c.verify_brute_force);

    ordered_json doc = document_head(c);
    ordered_json res;
    res["q"] = cert.code.field->q();
    res["n"] = cert.code.n;
    res["k"] = cert.code.k;
    res["ell"] = cert.ell;
    res["eps"] = cert.eps.str();
    res["k_prime"] = cert.family.k_prime;
    res["m"] = cert.family.m;
    res["trapped_count"] = cert.trapped.size();
    res["claimed_bound"] = cert.claimed_bound.str();
    res["floor_exponent_met"] = cert.floor_exponent_met;
    res["rho"] = cert.ball.rho.str();
    res["threshold"] = cert.ball.threshold;
    res["verification"] = report_json(rep);
    doc["results"] = std::move(res);

    Outcome out;
    if (!c.out_path.empty()) out.files[c.out_path] = lower_bound_certificate_to_text(cert);
    finish(out, c, doc);
    if (!rep.all_pass()) {
        out.exit_code = 1;
        out.error = "verification failed at check \"" + first_failing_check(rep) + "\"";
    }
    return out;
}

Outcome cmd_certify_independent(const Config& c) {
    IndependentSubsetCertificate cert;
    if (c.verify_only) {
        if (c.cert_path.empty()) throw usage_error("verify-only needs --cert FILE");
        cert = independent_subset_certificate_from_text(read_file(c.cert_path));
    } else {
        if (!c.eps) throw usage_error("certify-independent needs --eps num/den");
        cert = build_independent_subset_certificate(obtain_code(c, nullptr), c.ell, *c.eps);
    }
    const VerificationReport rep = verify_independent_subset_certificate(cert, c.verify_brute_force);

    ordered_json doc = document_head(c);
    ordered_json res;
    res["q"] = cert.code.field->q();
    res["n"] = cert.code.n;
    res["k"] = cert.code.k;
    res["ell"] = cert.ell;
    res["eps"] = cert.eps.str();
    res["m"] = cert.m;
    res["agreement_counts"] = cert.agreement_counts;
    res["rho"] = cert.ball.rho.str();
    res["threshold"] = cert.ball.threshold;
    res["verification"] = report_json(rep);
    doc["results"] = std::move(res);

    Outcome out;
    if (!c.out_path.empty()) out.files[c.out_path] = independent_subset_certificate_to_text(cert);
    finish(out, c, doc);
    if (!rep.all_pass()) {
        out.exit_code = 1;
        out.error = "verification failed at check \"" + first_failing_check(rep) + "\"";
    }
    return out;
}

Outcome cmd_recover(const Config& c) {
    ordered_json prov;
    const LinearCode code = obtain_code(c, &prov);
    RecoveryBall ball = [&] {
        if (!c.ball_path.empty()) return ball_from_text(read_file(c.ball_path), code.field);
        if (!c.rho) throw usage_error("recover needs --rho num/den (or --ball FILE)");
        Rng rng = Rng::substream(c.seed, 1);
        return make_ball(*c.rho, sample_input_lists(code.field, code.n, c.ell, rng));
    }();
    const RecoveredList rec = recover_list(code, ball, c.budget);

    ordered_json doc = document_head(c);
    ordered_json res;
    res["code"] = std::move(prov);
    res["rho"] = ball.rho.str();
    res["threshold"] = ball.threshold;
    res["list_size"] = rec.codewords.size();
    res["span_dim"] = rec.span_dim;
    if (rec.codewords.size() <= 1000) {
        ordered_json msgs = ordered_json::array(), cws = ordered_json::array();
        for (const Vec& v : rec.messages) msgs.push_back(vec_str(v));
        for (const Vec& v : rec.codewords) cws.push_back(vec_str(v));
        res["messages"] = std::move(msgs);
        res["codewords"] = std::move(cws);
    } else {
        res["codewords_omitted"] = true; // count above; list too large to print
    }
    doc["results"] = std::move(res);

    Outcome out;
    finish(out, c, doc);
    return out;
}

Outcome cmd_distance(const Config& c) {
    ordered_json prov;
    const LinearCode code = obtain_code(c, &prov);
    const DistanceResult d = min_distance(code, c.budget);

    ordered_json doc = document_head(c);
    ordered_json res;
    res["code"] = std::move(prov);
    res["n"] = code.n;
    res["k"] = code.k;
    res["distance"] = d.d;
    res["relative_distance"] = Rational(d.d, code.n).str();
    res["singleton_defect"] = (code.n - code.k + 1) - d.d; // 0 exactly for MDS codes
    res["witness_message"] = d.witness_message;
    res["witness"] = vec_str(d.witness);
    doc["results"] = std::move(res);

    Outcome out;
    finish(out, c, doc);
    return out;
}

Outcome cmd_mc(const Config& c) {
    if (c.n < 1 || c.k < 1) throw usage_error("mc needs --n >= 1 and --k >= 1");
    if (c.ell < 1) throw usage_error("mc needs --ell >= 1");
    if (!c.rho && !c.eps) throw usage_error("mc needs --rho num/den or --eps num/den");
    if (c.family != "rlc" && c.family != "rs")
        throw usage_error("unknown family \"" + c.family + "\" (rlc or rs)");
    const auto field = Field::make_extension(c.p, c.field_m);
    const Rational R = c.rate ? *c.rate : Rational(c.k, c.n);
    const Rational rho = c.rho ? *c.rho : Rational(1) - R - *c.eps;
    const SearchStrategy strategy = strategy_from_name(c.strategy);
    // E_2-style event: relative distance at least 1 - R - eps/2.
    const std::optional<Rational> dist_event =
        c.eps ? std::optional<Rational>(Rational(1) - R - *c.eps / Rational(2)) : std::nullopt;

    const std::uint64_t T = c.trials;
    std::vector<ordered_json> records(T);
    std::vector<std::exception_ptr> failures(T);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long t = 0; t < static_cast<long long>(T); ++t) {
        ordered_json rec;
        rec["trial"] = t;
        try {
            const std::uint64_t tu = static_cast<std::uint64_t>(t);
            LinearCode code;
            if (!c.code_path.empty()) {
                code = code_from_text(read_file(c.code_path));
            } else {
                Rng crng = Rng::substream(c.seed, 3 * tu);
                SampleStats stats;
                code = c.family == "rlc"
                           ? sample_rlc(field, c.n, c.k, crng, &stats)
                           : sample_random_rs(field, c.n, c.k, crng, &stats, c.distinct_points).first;
                rec["resamples"] = stats.resamples;
            }
            const std::uint64_t search_seed = mix64(mix64(c.seed) + 3 * tu + 1);
            const SearchResult sr =
                max_list_size_search(code, c.ell, rho, strategy, c.proposals, search_seed);
            rec["max_list"] = sr.list.codewords.size();
            rec["span_dim"] = sr.list.span_dim;
            rec["proposals"] = sr.proposals;
            rec["exhaustive"] = sr.exhaustive;
            const IndependentInBall ib = independent_in_ball(code, sr.ball, c.budget);
            rec["independent_rank"] = ib.rank;
            const DistanceResult d = min_distance(code, c.budget);
            rec["distance"] = d.d;
            rec["relative_distance"] = Rational(d.d, code.n).str();
            if (dist_event) rec["distance_ok"] = Rational(d.d, code.n) >= *dist_event;
        } catch (const budget_error& e) {
            rec["budget_error"] = e.what(); // recorded per trial, not fatal
        } catch (...) {
            failures[static_cast<std::size_t>(t)] = std::current_exception();
        }
        records[static_cast<std::size_t>(t)] = std::move(rec);
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::uint64_t list_max = 0, list_sum = 0, list_n = 0;
    long long rank_max = 0, span_max = 0;
    std::optional<int> dist_min, dist_max;
    std::uint64_t dist_n = 0, dist_ok = 0, budget_hits = 0;
    for (const auto& rec : records) {
        if (rec.contains("budget_error")) ++budget_hits;
        if (rec.contains("max_list")) {
            const std::uint64_t v = rec["max_list"].get<std::uint64_t>();
            list_max = std::max(list_max, v);
            list_sum += v;
            ++list_n;
        }
        if (rec.contains("span_dim"))
            span_max = std::max(span_max, rec["span_dim"].get<long long>());
        if (rec.contains("independent_rank"))
            rank_max = std::max(rank_max, rec["independent_rank"].get<long long>());
        if (rec.contains("distance")) {
            const int v = rec["distance"].get<int>();
            dist_min = dist_min ? std::min(*dist_min, v) : v;
            dist_max = dist_max ? std::max(*dist_max, v) : v;
            ++dist_n;
            if (rec.contains("distance_ok") && rec["distance_ok"].get<bool>()) ++dist_ok;
        }
    }

    ordered_json doc = document_head(c);
    ordered_json res;
    res["rate"] = R.str();
    res["rho"] = rho.str();
    ordered_json trials_arr = ordered_json::array();
    for (auto& rec : records) trials_arr.push_back(std::move(rec));
    res["trials"] = std::move(trials_arr);

    ordered_json agg;
    agg["trials_with_search"] = list_n;
    agg["max_list"] = list_max;
    agg["mean_list"] = list_n ? ordered_json(Rational(static_cast<long long>(list_sum),
                                                      static_cast<long long>(list_n)).str())
                              : ordered_json(nullptr);
    agg["max_span_dim"] = span_max;
    agg["max_independent_rank"] = rank_max;
    agg["min_distance"] = dist_min ? ordered_json(*dist_min) : ordered_json(nullptr);
    agg["max_distance"] = dist_max ? ordered_json(*dist_max) : ordered_json(nullptr);
    if (dist_event) {
        agg["distance_event"] = dist_event->str();
        agg["distance_ok_count"] = dist_ok;
        agg["distance_ok_fraction"] =
            dist_n ? ordered_json(Rational(static_cast<long long>(dist_ok),
                                           static_cast<long long>(dist_n)).str())
                   : ordered_json(nullptr);
    }
    agg["budget_errors"] = budget_hits;
    res["aggregate"] = std::move(agg);

    const Rational eps_ref = c.eps ? *c.eps : Rational(1) - R - rho;
    ordered_json refs;
    refs["span_list_bound"] = guarded_row([&] {
        ordered_json row;
        row["r"] = span_max;
        row["value"] = log_quantity_json(span_list_bound(c.ell, eps_ref, span_max));
        return row;
    });
    refs["ball_rank_lower_bound"] =
        guarded_row([&] { return ordered_json(ball_rank_lower_bound(R, eps_ref, c.ell)); });
    refs["list_size_floor"] =
        guarded_row([&] { return ordered_json(list_size_lower_bound(R, eps_ref, c.ell).str()); });
    res["reference"] = std::move(refs);

    doc["results"] = std::move(res);
    Outcome out;
    finish(out, c, doc);
    return out;
}

Outcome cmd_lcl_check(const Config& c) {
    if (c.b < 1) throw usage_error("lcl-check needs --b >= 1");
    if (c.ell < 1) throw usage_error("lcl-check needs --ell >= 1");
    if (!c.rho) throw usage_error("lcl-check needs --rho num/den");
    ordered_json prov;
    const LinearCode code = obtain_code(c, &prov);
    const std::uint64_t check_seed = mix64(mix64(c.seed) + 1);
    const LclConsistencyReport rep =
        lcl_consistency_check(code, c.b, c.ell, *c.rho, c.trials, check_seed, c.budget);
    const std::uint64_t violations = rep.ball_violations + rep.spec_violations;

    ordered_json doc = document_head(c);
    ordered_json res;
    res["code"] = std::move(prov);
    res["balls_tried"] = rep.balls_tried;
    res["ball_cases"] = rep.ball_cases;
    res["ball_violations"] = rep.ball_violations;
    res["specs_tried"] = rep.specs_tried;
    res["spec_cases"] = rep.spec_cases;
    res["spec_violations"] = rep.spec_violations;
    res["violations"] = violations;
    doc["results"] = std::move(res);

    Outcome out;
    finish(out, c, doc);
    if (violations > 0) {
        out.exit_code = 1;
        out.error = "consistency check found " + std::to_string(violations) + " violation(s)";
    }
    return out;
}

Outcome run(const Config& c) {
    try {
        if (c.format != "json" && c.format != "csv")
            throw usage_error("unknown format \"" + c.format + "\" (json or csv)");
        if (c.command == "bounds") return cmd_bounds(c);
        if (c.command == "certify-lower-bound") return cmd_certify_lower_bound(c);
        if (c.command == "certify-independent") return cmd_certify_independent(c);
        if (c.command == "recover") return cmd_recover(c);
        if (c.command == "mc") return cmd_mc(c);
        if (c.command == "distance") return cmd_distance(c);
        if (c.command == "lcl-check") return cmd_lcl_check(c);
        throw usage_error("unknown command \"" + c.command + "\"");
    } catch (const budget_error& e) {
        Outcome out;
        out.exit_code = 3;
        out.error = std::string("budget exceeded: ") + e.what();
        return out;
    } catch (const error& e) {
        Outcome out;
        out.exit_code = 2;
        out.error = e.what();
        return out;
    } catch (const std::exception& e) {
        Outcome out;
        out.exit_code = 2;
        out.error = std::string("internal error: ") + e.what();
        return out;
    }
}

} // namespace lrlab::cli
