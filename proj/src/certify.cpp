#include "lrlab/certify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lrlab/detail/lineio.hpp"

namespace lrlab {

namespace {

bool is_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
    if (perm.size() != n) return false;
    std::vector<std::uint8_t> seen(n, 0);
    for (std::size_t v : perm) {
        if (v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// The k x k block formed by rows row_perm[0..k) of G.
Matrix top_block(const Matrix& G, const std::vector<std::size_t>& row_perm, int k) {
    Matrix A(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
            A.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                G.at(row_perm[static_cast<std::size_t>(r)], static_cast<std::size_t>(c));
    return A;
}

Matrix invert(const Field& F, const Matrix& A) {
    const std::size_t k = A.rows();
    if (A.cols() != k) throw usage_error("matrix inverse needs a square matrix");
    Matrix aug(k, 2 * k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, k + r) = F.element(1);
    }
    const RrefResult red = rref(F, aug);
    if (red.rank < k || red.pivot_cols[k - 1] != k - 1) throw rank_error("matrix is singular");
    Matrix inv(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) inv.at(r, c) = red.R.at(r, k + c);
    return inv;
}

// P G T for the given row choice: rows row_perm[0..k) become the identity.
// Throws rank_error when those rows are dependent.
Matrix induced_systematic(const Field& F, const Matrix& G,
                          const std::vector<std::size_t>& row_perm) {
    const std::size_t n = G.rows(), k = G.cols();
    const Matrix T = invert(F, top_block(G, row_perm, static_cast<int>(k)));
    Matrix PG(n, k);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < k; ++c) PG.at(r, c) = G.at(row_perm[r], c);
    return mat_mul(F, PG, T);
}

Vec unpermute(const Vec& v_sys, const std::vector<std::size_t>& row_perm) {
    Vec out(v_sys.size());
    for (std::size_t i = 0; i < v_sys.size(); ++i) out[row_perm[i]] = v_sys[i];
    return out;
}

// ell^count, or nullopt past kTrappedListLimit.
std::optional<std::uint64_t> trapped_size(int ell, int count) {
    std::uint64_t s = 1;
    for (int i = 0; i < count; ++i) {
        s *= static_cast<std::uint64_t>(ell);
        if (s > kTrappedListLimit) return std::nullopt;
    }
    return s;
}

// Pads `vals` with the smallest element indices not already present until it
// holds exactly ell distinct elements.
std::vector<FieldElement> pad_list(std::set<std::uint32_t> vals, int ell, std::uint32_t q) {
    for (std::uint32_t e = 0; static_cast<int>(vals.size()) < ell; ++e) {
        if (e >= q) throw construction_error("cannot pad list: ell exceeds field order");
        vals.insert(e);
    }
    std::vector<FieldElement> out;
    out.reserve(vals.size());
    for (std::uint32_t v : vals) out.push_back(FieldElement{v});
    return out;
}

std::string join_counts(const std::vector<int>& counts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < counts.size(); ++i) os << (i ? " " : "") << counts[i];
    return os.str();
}

void write_rows(std::ostringstream& os, const std::vector<Vec>& rows) {
    for (const Vec& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i].index;
        os << "\n";
    }
}

std::vector<Vec> read_rows(detail::LineReader& rd, std::size_t count, std::size_t len,
                           std::uint32_t q) {
    std::vector<Vec> rows;
    rows.reserve(count);
    for (std::size_t r = 0; r < count; ++r) {
        const auto vals = detail::LineReader::ints(rd.line());
        if (vals.size() != len) throw usage_error("row has wrong number of entries");
        Vec v;
        v.reserve(len);
        for (long long x : vals) {
            if (x < 0 || x >= q) throw usage_error("element index out of field range");
            v.push_back(FieldElement{static_cast<std::uint32_t>(x)});
        }
        rows.push_back(std::move(v));
    }
    return rows;
}

std::vector<std::size_t> read_perm_line(detail::LineReader& rd, const std::string& key,
                                        std::size_t n) {
    const auto vals = rd.keyed(key, n, n);
    std::vector<std::size_t> perm;
    perm.reserve(n);
    for (long long v : vals) {
        if (v < 0 || v >= static_cast<long long>(n))
            throw usage_error("row permutation entry out of range");
        perm.push_back(static_cast<std::size_t>(v));
    }
    return perm;
}

} // namespace

DisjointSupportFamily build_disjoint_supports(const LinearCode& code, const Rational& eps) {
    const Field& F = *code.field;
    if (!(eps > Rational(0))) throw construction_error("need eps > 0");
    const int n = code.n, k = code.k;
    const long long kp = eps.ceil_mul(n);
    if (kp >= k)
        throw construction_error("window height ceil(eps n) = " + std::to_string(kp) +
                                 " must stay below k = " + std::to_string(k));
    if (k + kp > n)
        throw construction_error("window k + ceil(eps n) = " + std::to_string(k + kp) +
                                 " exceeds the length n = " + std::to_string(n));

    const SystematicForm sys = systematic_form(F, code.G);
    DisjointSupportFamily fam;
    fam.field = code.field;
    fam.k_prime = static_cast<int>(kp);
    fam.m = (k - 1) / (fam.k_prime + 1);
    fam.row_perm = sys.row_perm;

    for (int i = 0; i < fam.m; ++i) {
        // parity window restricted to block i of k'+1 systematic columns
        Matrix A(static_cast<std::size_t>(fam.k_prime),
                 static_cast<std::size_t>(fam.k_prime) + 1);
        for (int r = 0; r < fam.k_prime; ++r)
            for (int c = 0; c <= fam.k_prime; ++c)
                A.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                    sys.G.at(static_cast<std::size_t>(k + r),
                             static_cast<std::size_t>(i * (fam.k_prime + 1) + c));
        const Vec kappa = kernel_basis(F, A).front(); // k'+1 columns, rank <= k'
        Vec msg(static_cast<std::size_t>(k), FieldElement{0});
        for (int c = 0; c <= fam.k_prime; ++c)
            msg[static_cast<std::size_t>(i * (fam.k_prime + 1) + c)] = kappa[static_cast<std::size_t>(c)];
        fam.w.push_back(mat_vec(F, sys.G, msg));
        fam.messages.push_back(std::move(msg));
    }
    Vec last(static_cast<std::size_t>(k), FieldElement{0});
    last[static_cast<std::size_t>(k - 1)] = F.element(1);
    fam.w.push_back(mat_vec(F, sys.G, last));
    fam.messages.push_back(std::move(last));
    return fam;
}

LowerBoundCertificate build_lower_bound_certificate(const LinearCode& code, int ell,
                                                    const Rational& eps,
                                                    std::optional<Vec> betas) {
    const Field& F = *code.field;
    const int n = code.n, k = code.k;
    if (ell < 1) throw construction_error("need ell >= 1");
    if (static_cast<std::uint32_t>(ell) > F.q())
        throw construction_error("need ell <= q for ell-element lists");
    if (betas) {
        if (betas->size() != static_cast<std::size_t>(ell))
            throw usage_error("need exactly ell beta coefficients");
        std::set<std::uint32_t> seen;
        for (FieldElement b : *betas) {
            if (b.index >= F.q()) throw usage_error("beta coefficient out of field range");
            if (!seen.insert(b.index).second) throw usage_error("beta coefficients must be distinct");
        }
    }

    LowerBoundCertificate cert;
    cert.code = code;
    cert.ell = ell;
    cert.eps = eps;
    cert.family = build_disjoint_supports(code, eps);
    const int m = cert.family.m, kp = cert.family.k_prime;
    const int window = k + kp;

    const auto count = trapped_size(ell, m + 1);
    if (!count)
        throw budget_error("trapped list ell^(m+1) would exceed " +
                           std::to_string(kTrappedListLimit) + " codewords");

    if (betas) {
        cert.betas = std::move(*betas);
    } else {
        for (int b = 0; b < ell; ++b) cert.betas.push_back(F.element(static_cast<std::uint32_t>(b)));
    }

    // owner[j] = family member whose support covers window coordinate j
    std::vector<int> owner(static_cast<std::size_t>(window), -1);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j < window; ++j)
            if (cert.family.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].index != 0)
                owner[static_cast<std::size_t>(j)] = i;

    std::vector<std::vector<FieldElement>> lists(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::set<std::uint32_t> vals;
        if (j < window && owner[static_cast<std::size_t>(j)] >= 0) {
            const Vec& w = cert.family.w[static_cast<std::size_t>(owner[static_cast<std::size_t>(j)])];
            for (FieldElement beta : cert.betas)
                vals.insert(F.mul(beta, w[static_cast<std::size_t>(j)]).index);
        } else if (j < window) {
            vals.insert(0); // every trapped combination vanishes here
        }
        lists[cert.family.row_perm[static_cast<std::size_t>(j)]] =
            pad_list(std::move(vals), ell, F.q());
    }
    cert.ball = make_ball(Rational(n - window, n), make_input_lists(code.field, std::move(lists)));

    // original-basis messages come from the inverse of the systematic block
    const Matrix T = invert(F, top_block(code.G, cert.family.row_perm, k));
    std::vector<std::uint32_t> digit(static_cast<std::size_t>(m) + 1, 0);
    for (std::uint64_t t = 0; t < *count; ++t) {
        Vec c_sys(static_cast<std::size_t>(n), FieldElement{0});
        Vec m_sys(static_cast<std::size_t>(k), FieldElement{0});
        for (int i = 0; i <= m; ++i) {
            const FieldElement beta = cert.betas[digit[static_cast<std::size_t>(i)]];
            const Vec& w = cert.family.w[static_cast<std::size_t>(i)];
            const Vec& wm = cert.family.messages[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j)
                c_sys[static_cast<std::size_t>(j)] = F.add(
                    c_sys[static_cast<std::size_t>(j)], F.mul(beta, w[static_cast<std::size_t>(j)]));
            for (int j = 0; j < k; ++j)
                m_sys[static_cast<std::size_t>(j)] = F.add(
                    m_sys[static_cast<std::size_t>(j)], F.mul(beta, wm[static_cast<std::size_t>(j)]));
        }
        cert.trapped.push_back(unpermute(c_sys, cert.family.row_perm));
        cert.trapped_messages.push_back(mat_vec(F, T, m_sys));
        // odometer, member 0 most significant
        for (int i = m; i >= 0; --i) {
            if (++digit[static_cast<std::size_t>(i)] < static_cast<std::uint32_t>(ell)) break;
            digit[static_cast<std::size_t>(i)] = 0;
        }
    }

    cert.claimed_bound = list_size_lower_bound(Rational(k, n), eps, ell);
    cert.floor_exponent_met = BigInt(eps.num()) * eps.num() * n * n >
                              BigInt(2) * k * eps.den() * eps.den();
    return cert;
}

VerificationReport verify_lower_bound_certificate(const LowerBoundCertificate& cert,
                                                  bool brute_force) {
    VerificationReport rep;
    auto add = [&rep](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
        return pass;
    };

    const LinearCode& code = cert.code;
    const Field& F = *code.field;
    const int n = code.n, k = code.k, m = cert.family.m, kp = cert.family.k_prime;
    const std::size_t fam_size = static_cast<std::size_t>(m) + 1;

    {
        std::ostringstream d;
        bool ok = cert.ell >= 1 && static_cast<std::uint32_t>(cert.ell) <= F.q() && m >= 0 &&
                  kp >= 1 && cert.family.messages.size() == fam_size &&
                  cert.family.w.size() == fam_size &&
                  cert.betas.size() == static_cast<std::size_t>(cert.ell) &&
                  cert.trapped.size() == cert.trapped_messages.size() &&
                  cert.ball.lists.n == n && cert.ball.lists.ell == cert.ell &&
                  cert.ball.lists.field->spec() == F.spec();
        for (const Vec& v : cert.family.messages) ok = ok && v.size() == static_cast<std::size_t>(k);
        for (const Vec& v : cert.family.w) ok = ok && v.size() == static_cast<std::size_t>(n);
        for (const Vec& v : cert.trapped) ok = ok && v.size() == static_cast<std::size_t>(n);
        for (const Vec& v : cert.trapped_messages) ok = ok && v.size() == static_cast<std::size_t>(k);
        d << "ell=" << cert.ell << " m=" << m << " k'=" << kp << " family=" << fam_size
          << " trapped=" << cert.trapped.size();
        if (!add("shape", ok, d.str())) return rep;
    }

    const int window = k + kp;
    add("k-prime-formula",
        kp == cert.eps.ceil_mul(n) && kp < k && window <= n,
        "k'=" + std::to_string(kp) + " ceil(eps n)=" + std::to_string(cert.eps.ceil_mul(n)) +
            " window=" + std::to_string(window));
    add("m-formula", m == (k - 1) / (kp + 1),
        "m=" + std::to_string(m) + " floor((k-1)/(k'+1))=" + std::to_string((k - 1) / (kp + 1)));

    bool perm_ok = is_permutation(cert.family.row_perm, static_cast<std::size_t>(n));
    Matrix Gp;
    if (perm_ok) {
        try {
            Gp = induced_systematic(F, code.G, cert.family.row_perm);
        } catch (const rank_error&) {
            perm_ok = false;
        }
    }
    if (!add("row-perm", perm_ok,
             perm_ok ? "valid systematic row choice" : "not a permutation with independent top rows"))
        return rep;

    {
        bool ok = true;
        for (std::size_t i = 0; i < fam_size && ok; ++i)
            ok = cert.family.w[i] == mat_vec(F, Gp, cert.family.messages[i]);
        add("family-members", ok, "w[i] = G' msg[i] for the induced systematic G'");
    }
    {
        bool ok = true;
        std::vector<int> owner(static_cast<std::size_t>(window), -1);
        for (std::size_t i = 0; i < fam_size && ok; ++i) {
            bool nonzero = false;
            for (int j = 0; j < window && ok; ++j) {
                if (cert.family.w[i][static_cast<std::size_t>(j)].index == 0) continue;
                nonzero = true;
                if (owner[static_cast<std::size_t>(j)] >= 0)
                    ok = false; // two members share a window coordinate
                owner[static_cast<std::size_t>(j)] = static_cast<int>(i);
            }
            ok = ok && nonzero;
        }
        add("window-disjoint", ok,
            "supports inside the first " + std::to_string(window) + " systematic coordinates");
    }
    {
        std::set<std::uint32_t> b;
        bool ok = true;
        for (FieldElement e : cert.betas) ok = ok && e.index < F.q() && b.insert(e.index).second;
        add("betas-distinct", ok, std::to_string(cert.betas.size()) + " coefficients");
    }

    const auto expect = trapped_size(cert.ell, m + 1);
    const bool count_ok = expect && cert.trapped.size() == *expect;
    add("trapped-count", count_ok,
        expect ? "ell^(m+1) = " + std::to_string(*expect) + ", stored " +
                     std::to_string(cert.trapped.size())
               : "ell^(m+1) exceeds the materialization cap");

    if (count_ok) {
        bool ok = true;
        std::vector<std::uint32_t> digit(fam_size, 0);
        for (std::uint64_t t = 0; t < *expect && ok; ++t) {
            Vec c_sys(static_cast<std::size_t>(n), FieldElement{0});
            for (std::size_t i = 0; i < fam_size; ++i) {
                if (digit[i] >= cert.betas.size()) { ok = false; break; }
                const FieldElement beta = cert.betas[digit[i]];
                for (int j = 0; j < n; ++j)
                    c_sys[static_cast<std::size_t>(j)] =
                        F.add(c_sys[static_cast<std::size_t>(j)],
                              F.mul(beta, cert.family.w[i][static_cast<std::size_t>(j)]));
            }
            ok = ok && unpermute(c_sys, cert.family.row_perm) == cert.trapped[t];
            for (int i = m; i >= 0; --i) {
                if (++digit[static_cast<std::size_t>(i)] < static_cast<std::uint32_t>(cert.ell))
                    break;
                digit[static_cast<std::size_t>(i)] = 0;
            }
        }
        add("trapped-combinations", ok, "trapped list equals the coefficient odometer");
    } else {
        add("trapped-combinations", false, "not evaluated: trapped-count failed");
    }

    {
        bool ok = true;
        for (std::size_t t = 0; t < cert.trapped.size() && ok; ++t)
            ok = encode(code, cert.trapped_messages[t]) == cert.trapped[t];
        add("trapped-codewords", ok, "every trapped vector re-encodes from its message");
    }
    {
        std::set<Vec> uniq(cert.trapped.begin(), cert.trapped.end());
        add("trapped-distinct", uniq.size() == cert.trapped.size(),
            std::to_string(uniq.size()) + " distinct of " + std::to_string(cert.trapped.size()));
    }

    const Rational R(k, n);
    const Rational rho_cert(n - window, n);
    add("ball-radius",
        cert.ball.rho == rho_cert && cert.ball.rho <= Rational(1) - R - cert.eps,
        "rho = " + cert.ball.rho.str() + ", construction radius " + rho_cert.str() +
            ", target 1-R-eps = " + (Rational(1) - R - cert.eps).str());

    {
        bool ok = true;
        std::size_t fail_at = 0;
        for (std::size_t t = 0; t < cert.trapped.size(); ++t)
            if (!in_ball(cert.trapped[t], cert.ball)) {
                ok = false;
                fail_at = t;
                break;
            }
        add("trapped-in-ball", ok,
            ok ? "all trapped codewords meet threshold " + std::to_string(cert.ball.threshold)
               : "trapped codeword " + std::to_string(fail_at) + " misses the threshold");
    }

    {
        std::ostringstream d;
        BigInt claimed_formula;
        bool formula_ok = true;
        try {
            claimed_formula = list_size_lower_bound(R, cert.eps, cert.ell);
        } catch (const error&) {
            formula_ok = false;
        }
        bool ok = formula_ok && cert.claimed_bound == claimed_formula;
        const bool flag_cond = BigInt(cert.eps.num()) * cert.eps.num() * n * n >
                               BigInt(2) * k * cert.eps.den() * cert.eps.den();
        if (cert.floor_exponent_met) {
            ok = ok && flag_cond && BigInt(cert.trapped.size()) >= cert.claimed_bound;
        }
        d << "claimed " << cert.claimed_bound << ", trapped " << cert.trapped.size()
          << ", exponent flag " << (cert.floor_exponent_met ? "set" : "clear");
        add("claimed-bound", ok, d.str());
    }

    if (brute_force) {
        const RecoveredList rec = recover_list(code, cert.ball);
        std::set<Vec> found(rec.codewords.begin(), rec.codewords.end());
        bool ok = true;
        for (const Vec& t : cert.trapped) ok = ok && found.count(t) > 0;
        add("recovered-superset", ok,
            "enumerated list has " + std::to_string(rec.codewords.size()) + " codewords");
    }
    return rep;
}

IndependentSubsetCertificate build_independent_subset_certificate(const LinearCode& code,
                                                                  int ell, const Rational& eps) {
    const Field& F = *code.field;
    const int n = code.n, k = code.k;
    const Rational R(k, n);
    if (ell < 1) throw construction_error("need ell >= 1");
    if (static_cast<std::uint32_t>(ell) > F.q())
        throw construction_error("need ell <= q for ell-element lists");
    if (!(eps > Rational(0))) throw construction_error("need eps > 0");
    if (eps > Rational(1) - R)
        throw construction_error("need eps <= 1 - R = " + (Rational(1) - R).str() +
                                 " for a nonnegative radius");

    const long long m_ll = ((Rational(1) - R) * Rational(ell) / eps).ceil() - 1;
    if (m_ll < 1)
        throw construction_error("family size ceil((1-R) ell / eps) - 1 = " +
                                 std::to_string(m_ll) + " certifies nothing");
    if (m_ll > k)
        throw construction_error("family size " + std::to_string(m_ll) +
                                 " exceeds the dimension k = " + std::to_string(k));
    const int m = static_cast<int>(m_ll);

    const SystematicForm sys = systematic_form(F, code.G);
    IndependentSubsetCertificate cert;
    cert.code = code;
    cert.ell = ell;
    cert.eps = eps;
    cert.m = m;
    cert.row_perm = sys.row_perm;

    const Matrix T = invert(F, top_block(code.G, sys.row_perm, k));
    for (int j = 0; j < m; ++j) {
        cert.messages.push_back(T.col(static_cast<std::size_t>(j)));
        cert.vectors.push_back(unpermute(sys.G.col(static_cast<std::size_t>(j)), sys.row_perm));
    }

    // Lists in systematic coordinates: the basis pattern {0, 1, ...} on the
    // message part, then a round-robin of ell columns per parity coordinate.
    std::vector<std::vector<FieldElement>> lists(static_cast<std::size_t>(n));
    for (int i = 0; i < k; ++i)
        lists[sys.row_perm[static_cast<std::size_t>(i)]] = pad_list({}, ell, F.q());
    const int cover = std::min(ell, m);
    for (int s = 0; s < n - k; ++s) {
        std::set<std::uint32_t> vals;
        for (int t = 0; t < cover; ++t) {
            const int c = static_cast<int>((static_cast<long long>(s) * ell + t) % m);
            vals.insert(sys.G.at(static_cast<std::size_t>(k + s), static_cast<std::size_t>(c)).index);
        }
        lists[sys.row_perm[static_cast<std::size_t>(k + s)]] = pad_list(std::move(vals), ell, F.q());
    }
    cert.ball = make_ball(Rational(1) - R - eps, make_input_lists(code.field, std::move(lists)));

    for (int j = 0; j < m; ++j) {
        const int c = static_cast<int>(agreement(cert.vectors[static_cast<std::size_t>(j)],
                                                 cert.ball.lists)
                                           .size());
        if (c < cert.ball.threshold)
            throw construction_error("vector " + std::to_string(j) + " agreement " +
                                     std::to_string(c) + " misses threshold " +
                                     std::to_string(cert.ball.threshold));
        cert.agreement_counts.push_back(c);
    }
    return cert;
}

VerificationReport verify_independent_subset_certificate(const IndependentSubsetCertificate& cert,
                                                         bool cross_check) {
    VerificationReport rep;
    auto add = [&rep](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
        return pass;
    };

    const LinearCode& code = cert.code;
    const Field& F = *code.field;
    const int n = code.n, k = code.k, m = cert.m;
    const Rational R(k, n);

    {
        std::ostringstream d;
        bool ok = cert.ell >= 1 && static_cast<std::uint32_t>(cert.ell) <= F.q() && m >= 1 &&
                  cert.eps > Rational(0) &&
                  cert.vectors.size() == static_cast<std::size_t>(m) &&
                  cert.messages.size() == static_cast<std::size_t>(m) &&
                  cert.agreement_counts.size() == static_cast<std::size_t>(m) &&
                  cert.ball.lists.n == n && cert.ball.lists.ell == cert.ell &&
                  cert.ball.lists.field->spec() == F.spec();
        for (const Vec& v : cert.vectors) ok = ok && v.size() == static_cast<std::size_t>(n);
        for (const Vec& v : cert.messages) ok = ok && v.size() == static_cast<std::size_t>(k);
        d << "ell=" << cert.ell << " m=" << m;
        if (!add("shape", ok, d.str())) return rep;
    }

    add("m-formula",
        static_cast<long long>(m) == ((Rational(1) - R) * Rational(cert.ell) / cert.eps).ceil() - 1 &&
            m <= k,
        "m=" + std::to_string(m) + " target ceil((1-R) ell/eps)-1=" +
            std::to_string(((Rational(1) - R) * Rational(cert.ell) / cert.eps).ceil() - 1));

    const bool perm_ok = is_permutation(cert.row_perm, static_cast<std::size_t>(n));
    if (!add("row-perm", perm_ok, perm_ok ? "valid permutation" : "not a permutation")) return rep;

    {
        bool ok = true;
        for (int j = 0; j < m && ok; ++j)
            for (int i = 0; i < k && ok; ++i) {
                const std::uint32_t want = i == j ? 1 : 0;
                ok = cert.vectors[static_cast<std::size_t>(j)][cert.row_perm[static_cast<std::size_t>(i)]]
                         .index == want;
            }
        add("systematic-pattern", ok,
            "vectors restricted to the systematic rows form the identity pattern");
    }
    {
        bool ok = true;
        for (int j = 0; j < m && ok; ++j)
            ok = encode(code, cert.messages[static_cast<std::size_t>(j)]) ==
                 cert.vectors[static_cast<std::size_t>(j)];
        add("vector-codewords", ok, "every vector re-encodes from its message");
    }
    {
        Matrix M(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i)
                M.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) =
                    cert.vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        const std::size_t r = rank(F, M);
        add("independent-rank", r == static_cast<std::size_t>(m),
            "rank " + std::to_string(r) + " of m = " + std::to_string(m));
    }

    add("ball-radius", cert.ball.rho == Rational(1) - R - cert.eps,
        "rho = " + cert.ball.rho.str() + ", 1-R-eps = " + (Rational(1) - R - cert.eps).str());

    {
        bool counts_ok = true, in_ok = true;
        std::vector<int> actual;
        for (int j = 0; j < m; ++j) {
            const int c = static_cast<int>(agreement(cert.vectors[static_cast<std::size_t>(j)],
                                                     cert.ball.lists)
                                               .size());
            actual.push_back(c);
            counts_ok = counts_ok && c == cert.agreement_counts[static_cast<std::size_t>(j)];
            in_ok = in_ok && c >= cert.ball.threshold;
        }
        add("agreement-counts", counts_ok,
            "recorded " + join_counts(cert.agreement_counts) + ", actual " + join_counts(actual));
        add("vectors-in-ball", in_ok,
            "threshold " + std::to_string(cert.ball.threshold) + ", counts " + join_counts(actual));
    }

    if (cross_check) {
        const IndependentInBall ind = independent_in_ball(code, cert.ball);
        add("enumerated-rank", ind.rank >= m,
            "enumeration finds rank " + std::to_string(ind.rank) + ", certificate claims " +
                std::to_string(m));
    }
    return rep;
}

std::string lower_bound_certificate_to_text(const LowerBoundCertificate& cert) {
    std::ostringstream os;
    os << "lrlab-lower-bound-certificate v1\n";
    os << "ell " << cert.ell << "\n";
    os << "eps " << cert.eps.str() << "\n";
    os << "k-prime " << cert.family.k_prime << "\n";
    os << "m " << cert.family.m << "\n";
    os << "claimed-bound " << cert.claimed_bound << "\n";
    os << "floor-exponent-met " << (cert.floor_exponent_met ? 1 : 0) << "\n";
    os << code_to_text(cert.code);
    os << "row-perm";
    for (std::size_t v : cert.family.row_perm) os << " " << v;
    os << "\nbetas";
    for (FieldElement b : cert.betas) os << " " << b.index;
    os << "\nfamily-messages\n";
    write_rows(os, cert.family.messages);
    os << "family-vectors\n";
    write_rows(os, cert.family.w);
    os << ball_to_text(cert.ball);
    os << "trapped-count " << cert.trapped.size() << "\n";
    os << "trapped-messages\n";
    write_rows(os, cert.trapped_messages);
    os << "trapped-vectors\n";
    write_rows(os, cert.trapped);
    os << "end\n";
    return os.str();
}

LowerBoundCertificate lower_bound_certificate_from_text(const std::string& text) {
    detail::LineReader rd(text);
    rd.expect("lrlab-lower-bound-certificate v1");
    LowerBoundCertificate cert;
    cert.ell = static_cast<int>(rd.keyed("ell", 1, 1)[0]);
    cert.eps = rd.keyed_rational("eps");
    cert.family.k_prime = static_cast<int>(rd.keyed("k-prime", 1, 1)[0]);
    cert.family.m = static_cast<int>(rd.keyed("m", 1, 1)[0]);
    try {
        cert.claimed_bound = BigInt(rd.keyed_text("claimed-bound"));
    } catch (const error&) {
        throw;
    } catch (const std::exception&) {
        throw usage_error("cannot parse claimed-bound");
    }
    const long long flag = rd.keyed("floor-exponent-met", 1, 1)[0];
    if (flag != 0 && flag != 1) throw usage_error("floor-exponent-met must be 0 or 1");
    cert.floor_exponent_met = flag == 1;
    if (cert.ell < 1 || cert.family.k_prime < 0 || cert.family.m < 0)
        throw usage_error("bad certificate dimensions");

    cert.code = code_from_reader(rd);
    cert.family.field = cert.code.field;
    const std::uint32_t q = cert.code.field->q();
    const std::size_t n = static_cast<std::size_t>(cert.code.n);
    const std::size_t k = static_cast<std::size_t>(cert.code.k);
    const std::size_t fam = static_cast<std::size_t>(cert.family.m) + 1;

    cert.family.row_perm = read_perm_line(rd, "row-perm", n);
    {
        const auto vals = rd.keyed("betas", static_cast<std::size_t>(cert.ell),
                                   static_cast<std::size_t>(cert.ell));
        for (long long v : vals) {
            if (v < 0 || v >= q) throw usage_error("beta out of field range");
            cert.betas.push_back(FieldElement{static_cast<std::uint32_t>(v)});
        }
    }
    rd.expect("family-messages");
    cert.family.messages = read_rows(rd, fam, k, q);
    rd.expect("family-vectors");
    cert.family.w = read_rows(rd, fam, n, q);
    cert.ball = ball_from_reader(rd, cert.code.field);
    const long long trapped = rd.keyed("trapped-count", 1, 1)[0];
    if (trapped < 0) throw usage_error("negative trapped-count");
    if (static_cast<std::uint64_t>(trapped) > kTrappedListLimit)
        throw budget_error("trapped-count exceeds the materialization cap");
    rd.expect("trapped-messages");
    cert.trapped_messages = read_rows(rd, static_cast<std::size_t>(trapped), k, q);
    rd.expect("trapped-vectors");
    cert.trapped = read_rows(rd, static_cast<std::size_t>(trapped), n, q);
    rd.expect("end");
    return cert;
}

std::string independent_subset_certificate_to_text(const IndependentSubsetCertificate& cert) {
    std::ostringstream os;
    os << "lrlab-independent-subset-certificate v1\n";
    os << "ell " << cert.ell << "\n";
    os << "eps " << cert.eps.str() << "\n";
    os << "m " << cert.m << "\n";
    os << code_to_text(cert.code);
    os << "row-perm";
    for (std::size_t v : cert.row_perm) os << " " << v;
    os << "\nmessages\n";
    write_rows(os, cert.messages);
    os << "vectors\n";
    write_rows(os, cert.vectors);
    os << "agreements";
    for (int c : cert.agreement_counts) os << " " << c;
    os << "\n";
    os << ball_to_text(cert.ball);
    os << "end\n";
    return os.str();
}

IndependentSubsetCertificate independent_subset_certificate_from_text(const std::string& text) {
    detail::LineReader rd(text);
    rd.expect("lrlab-independent-subset-certificate v1");
    IndependentSubsetCertificate cert;
    cert.ell = static_cast<int>(rd.keyed("ell", 1, 1)[0]);
    cert.eps = rd.keyed_rational("eps");
    cert.m = static_cast<int>(rd.keyed("m", 1, 1)[0]);
    if (cert.ell < 1 || cert.m < 0) throw usage_error("bad certificate dimensions");

    cert.code = code_from_reader(rd);
    const std::uint32_t q = cert.code.field->q();
    const std::size_t n = static_cast<std::size_t>(cert.code.n);
    const std::size_t k = static_cast<std::size_t>(cert.code.k);
    const std::size_t m = static_cast<std::size_t>(cert.m);

    cert.row_perm = read_perm_line(rd, "row-perm", n);
    rd.expect("messages");
    cert.messages = read_rows(rd, m, k, q);
    rd.expect("vectors");
    cert.vectors = read_rows(rd, m, n, q);
    {
        const auto vals = rd.keyed("agreements", m, m);
        for (long long v : vals) {
            if (v < 0 || v > static_cast<long long>(n))
                throw usage_error("agreement count out of range");
            cert.agreement_counts.push_back(static_cast<int>(v));
        }
    }
    cert.ball = ball_from_reader(rd, cert.code.field);
    rd.expect("end");
    return cert;
}

} // namespace lrlab
