#include "lrlab/lcl.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "lrlab/detail/lineio.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lrlab {

namespace {

std::vector<FieldElement> pad_list(std::set<std::uint32_t> vals, int ell, std::uint32_t q) {
    for (std::uint32_t e = 0; static_cast<int>(vals.size()) < ell; ++e) {
        if (e >= q) throw usage_error("cannot pad list: ell exceeds field order");
        vals.insert(e);
    }
    std::vector<FieldElement> out;
    out.reserve(vals.size());
    for (std::uint32_t v : vals) out.push_back(FieldElement{v});
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// rel[i][j] = 1 when coordinate i belongs to sets[j].
std::vector<std::vector<std::uint8_t>> relevance(const ProfileSpec& spec) {
    std::vector<std::vector<std::uint8_t>> rel(
        static_cast<std::size_t>(spec.n),
        std::vector<std::uint8_t>(static_cast<std::size_t>(spec.b), 0));
    for (int j = 0; j < spec.b; ++j)
        for (int i : spec.sets[static_cast<std::size_t>(j)])
            rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    return rel;
}

void validate_spec(const ProfileSpec& spec, int threshold) {
    if (spec.n < 1 || spec.b < 1 || spec.ell < 1) throw usage_error("bad profile dimensions");
    if (spec.rho < Rational(0) || spec.rho > Rational(1))
        throw usage_error("profile radius must lie in [0, 1]");
    if (spec.sets.size() != static_cast<std::size_t>(spec.b))
        throw usage_error("profile needs b agreement sets");
    for (const auto& s : spec.sets) {
        if (s.size() != static_cast<std::size_t>(threshold))
            throw usage_error("agreement set size must equal ceil((1-rho) n)");
        for (std::size_t t = 0; t < s.size(); ++t) {
            if (s[t] < 0 || s[t] >= spec.n) throw usage_error("agreement coordinate out of range");
            if (t && s[t] <= s[t - 1]) throw usage_error("agreement set must ascend strictly");
        }
    }
    if (spec.M.size() != static_cast<std::size_t>(spec.n))
        throw usage_error("profile matrix needs n rows");
    for (const auto& row : spec.M) {
        if (row.size() != static_cast<std::size_t>(spec.b))
            throw usage_error("profile matrix row needs b entries");
        for (int v : row)
            if (v < 1 || v > spec.ell) throw usage_error("profile matrix entry outside 1..ell");
    }
}

} // namespace

LocalProfile profile_from_spec(ProfileSpec spec, std::shared_ptr<const Field> field) {
    if (!field) throw usage_error("null field");
    if (static_cast<std::uint32_t>(spec.ell) > field->q())
        throw usage_error("profile ell exceeds field order");
    LocalProfile prof;
    prof.threshold = (Rational(1) - spec.rho).ceil_mul(spec.n);
    validate_spec(spec, prof.threshold);
    prof.field = std::move(field);
    prof.spec = std::move(spec);

    const auto rel = relevance(prof.spec);
    const int b = prof.spec.b;
    prof.classes_of.resize(static_cast<std::size_t>(prof.spec.n));
    prof.dims.resize(static_cast<std::size_t>(prof.spec.n));
    for (int i = 0; i < prof.spec.n; ++i) {
        UnionFind uf(b);
        for (int j = 0; j < b; ++j)
            for (int k = j + 1; k < b; ++k)
                if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                    rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                    prof.spec.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                        prof.spec.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
                    uf.unite(j, k);
        std::vector<int> label(static_cast<std::size_t>(b), -1);
        std::vector<int>& cls = prof.classes_of[static_cast<std::size_t>(i)];
        cls.resize(static_cast<std::size_t>(b));
        int next = 0;
        for (int j = 0; j < b; ++j) {
            const int r = uf.find(j);
            if (label[static_cast<std::size_t>(r)] < 0) label[static_cast<std::size_t>(r)] = next++;
            cls[static_cast<std::size_t>(j)] = label[static_cast<std::size_t>(r)];
        }
        prof.dims[static_cast<std::size_t>(i)] = next;
        prof.total_dim += next;
    }
    return prof;
}

Matrix profile_subspace_basis(const LocalProfile& prof, int i) {
    if (i < 0 || i >= prof.spec.n) throw usage_error("coordinate out of range");
    const auto& cls = prof.classes_of[static_cast<std::size_t>(i)];
    Matrix B(static_cast<std::size_t>(prof.dims[static_cast<std::size_t>(i)]),
             static_cast<std::size_t>(prof.spec.b));
    for (int j = 0; j < prof.spec.b; ++j)
        B.at(static_cast<std::size_t>(cls[static_cast<std::size_t>(j)]),
             static_cast<std::size_t>(j)) = prof.field->element(1);
    return B;
}

bool profile_matches(const LocalProfile& prof, const std::vector<Vec>& tuple) {
    const int n = prof.spec.n, b = prof.spec.b;
    if (tuple.size() != static_cast<std::size_t>(b))
        throw usage_error("tuple size must equal the locality b");
    for (const Vec& v : tuple) {
        if (v.size() != static_cast<std::size_t>(n)) throw usage_error("tuple entry length != n");
        for (FieldElement e : v)
            if (e.index >= prof.field->q()) throw usage_error("tuple entry out of field range");
    }
    for (std::size_t a = 0; a < tuple.size(); ++a)
        for (std::size_t c = a + 1; c < tuple.size(); ++c)
            if (tuple[a] == tuple[c]) return false;
    std::vector<FieldElement> rep(static_cast<std::size_t>(b));
    for (int i = 0; i < n; ++i) {
        const auto& cls = prof.classes_of[static_cast<std::size_t>(i)];
        std::vector<std::int8_t> seen(static_cast<std::size_t>(b), 0);
        for (int j = 0; j < b; ++j) {
            const int c = cls[static_cast<std::size_t>(j)];
            const FieldElement v = tuple[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (!seen[static_cast<std::size_t>(c)]) {
                seen[static_cast<std::size_t>(c)] = 1;
                rep[static_cast<std::size_t>(c)] = v;
            } else if (rep[static_cast<std::size_t>(c)] != v) {
                return false;
            }
        }
    }
    return true;
}

namespace {

// Constraint coordinates between slot d and each earlier slot.
std::vector<std::vector<std::vector<int>>> pair_constraints(const LocalProfile& prof) {
    const int n = prof.spec.n, b = prof.spec.b;
    std::vector<std::vector<std::vector<int>>> pc(static_cast<std::size_t>(b));
    for (int d = 0; d < b; ++d) {
        pc[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < n; ++i)
                if (prof.classes_of[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] ==
                    prof.classes_of[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    pc[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)].push_back(i);
    }
    return pc;
}

ContainmentWitness assemble_witness(const LinearCode& code,
                                    const std::vector<std::uint64_t>& pick) {
    ContainmentWitness w;
    const int b = static_cast<int>(pick.size());
    w.A = Matrix(static_cast<std::size_t>(code.n), static_cast<std::size_t>(b));
    for (int j = 0; j < b; ++j) {
        const Vec msg = message_from_index(*code.field, code.k, pick[static_cast<std::size_t>(j)]);
        const Vec cw = encode(code, msg);
        for (int i = 0; i < code.n; ++i)
            w.A.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                cw[static_cast<std::size_t>(i)];
        w.column_messages.push_back(msg);
    }
    return w;
}

void require_profile_compatible(const LinearCode& code, const LocalProfile& prof) {
    if (code.field->spec() != prof.field->spec())
        throw usage_error("code and profile live over different fields");
    if (code.n != prof.spec.n) throw usage_error("code length != profile length");
}

} // namespace

ContainmentResult code_contains_profile(const LinearCode& code, const LocalProfile& prof,
                                        std::uint64_t budget) {
    require_profile_compatible(code, prof);
    const int b = prof.spec.b;
    const std::uint64_t N = message_count(code.field->q(), code.k, budget);
    std::uint64_t total = 1;
    for (int j = 0; j < b; ++j) {
        if (total > budget / N)
            throw budget_error("containment search space q^(k b) exceeds the budget");
        total *= N;
    }

    const auto pc = pair_constraints(prof);

    struct Hit {
        std::uint64_t outer = 0;
        std::vector<std::uint64_t> pick;
    };

    const unsigned parts = static_cast<unsigned>(
        std::min<std::uint64_t>(256, std::max<std::uint64_t>(1, N >> 12)));
    const auto chunks = partition_messages(N, parts);
    std::vector<std::optional<Hit>> hits(chunks.size());
    std::atomic<std::uint64_t> best_outer{std::numeric_limits<std::uint64_t>::max()};
    std::uint64_t nodes_total = 0;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : nodes_total)
#endif
    for (long long ci = 0; ci < static_cast<long long>(chunks.size()); ++ci) {
        const MessageRange r = chunks[static_cast<std::size_t>(ci)];
        if (r.begin > best_outer.load()) continue;
        std::uint64_t nodes = 0;
        std::vector<std::uint64_t> pick(static_cast<std::size_t>(b), 0);
        std::vector<Vec> cols(static_cast<std::size_t>(b));

        // Depth-first over slots d >= 1; slot 0 runs over this chunk only.
        std::function<bool(int)> down = [&](int d) -> bool {
            CodewordScanner scan(code, 0);
            for (std::uint64_t idx = 0; idx < N; ++idx) {
                bool dup = false;
                for (int j = 0; j < d && !dup; ++j)
                    dup = pick[static_cast<std::size_t>(j)] == idx;
                if (!dup) {
                    ++nodes;
                    const Vec& cw = scan.codeword();
                    bool ok = true;
                    for (int j = 0; j < d && ok; ++j)
                        for (int i :
                             pc[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)]) {
                            if (cw[static_cast<std::size_t>(i)] !=
                                cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
                                ok = false;
                                break;
                            }
                        }
                    if (ok) {
                        pick[static_cast<std::size_t>(d)] = idx;
                        cols[static_cast<std::size_t>(d)] = cw;
                        if (d == b - 1 || down(d + 1)) return true;
                    }
                }
                if (idx + 1 < N) scan.advance();
            }
            return false;
        };

        CodewordScanner outer(code, r.begin);
        for (std::uint64_t idx = r.begin; idx < r.end; ++idx) {
            if (idx > best_outer.load()) break;
            ++nodes;
            pick[0] = idx;
            cols[0] = outer.codeword();
            if (b == 1 || down(1)) {
                hits[static_cast<std::size_t>(ci)] = Hit{idx, pick};
                std::uint64_t cur = best_outer.load();
                while (idx < cur && !best_outer.compare_exchange_weak(cur, idx)) {
                }
                break;
            }
            if (idx + 1 < r.end) outer.advance();
        }
        nodes_total += nodes;
    }

    ContainmentResult res;
    res.nodes = nodes_total;
    const Hit* best = nullptr;
    for (const auto& h : hits)
        if (h && (!best || h->outer < best->outer)) best = &*h;
    if (!best) return res;

    res.contained = true;
    res.witness = assemble_witness(code, best->pick);
    std::vector<Vec> tuple;
    for (int j = 0; j < b; ++j)
        tuple.push_back(res.witness->A.col(static_cast<std::size_t>(j)));
    if (!profile_matches(prof, tuple))
        throw error("internal: containment witness failed revalidation");
    return res;
}

ContainmentResult code_contains_profile_random(const LinearCode& code, const LocalProfile& prof,
                                               std::uint64_t trials, std::uint64_t seed) {
    require_profile_compatible(code, prof);
    const int b = prof.spec.b;
    const std::uint64_t N =
        message_count(code.field->q(), code.k, std::numeric_limits<std::uint64_t>::max());
    ContainmentResult res;
    if (N < static_cast<std::uint64_t>(b)) return res; // not enough distinct codewords: definitive

    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, t);
        std::vector<std::uint64_t> pick;
        while (pick.size() < static_cast<std::size_t>(b)) {
            const std::uint64_t idx = rng.below(N);
            if (std::find(pick.begin(), pick.end(), idx) == pick.end()) pick.push_back(idx);
        }
        std::vector<Vec> tuple;
        for (std::uint64_t idx : pick)
            tuple.push_back(encode(code, message_from_index(*code.field, code.k, idx)));
        ++res.nodes;
        if (profile_matches(prof, tuple)) {
            res.contained = true;
            res.witness = assemble_witness(code, pick);
            return res;
        }
    }
    res.inconclusive = true;
    return res;
}

ProfileSpec violation_to_profile(const RecoveryBall& ball, const std::vector<Vec>& codewords) {
    if (codewords.empty()) throw usage_error("need at least one witness codeword");
    for (std::size_t a = 0; a < codewords.size(); ++a)
        for (std::size_t c = a + 1; c < codewords.size(); ++c)
            if (codewords[a] == codewords[c]) throw usage_error("witness codewords must be distinct");

    ProfileSpec spec;
    spec.n = ball.lists.n;
    spec.b = static_cast<int>(codewords.size());
    spec.ell = ball.lists.ell;
    spec.rho = ball.rho;
    spec.M.assign(static_cast<std::size_t>(spec.n),
                  std::vector<int>(static_cast<std::size_t>(spec.b), 1));
    for (int j = 0; j < spec.b; ++j) {
        const Vec& cw = codewords[static_cast<std::size_t>(j)];
        const auto agr = agreement(cw, ball.lists);
        if (static_cast<int>(agr.size()) < ball.threshold)
            throw usage_error("witness " + std::to_string(j) + " agreement " +
                              std::to_string(agr.size()) + " below the ball threshold " +
                              std::to_string(ball.threshold));
        spec.sets.push_back(
            std::vector<int>(agr.begin(), agr.begin() + ball.threshold)); // lex-least coordinates
        for (int i = 0; i < spec.n; ++i) {
            const auto& l = ball.lists.lists[static_cast<std::size_t>(i)];
            const auto it =
                std::lower_bound(l.begin(), l.end(), cw[static_cast<std::size_t>(i)]);
            if (it != l.end() && *it == cw[static_cast<std::size_t>(i)])
                spec.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    static_cast<int>(it - l.begin()) + 1;
        }
    }

    const LocalProfile prof = profile_from_spec(spec, ball.lists.field);
    if (!profile_matches(prof, codewords))
        throw error("internal: induced profile rejects its own witnesses");
    return spec;
}

RecoveryBall profile_witness_ball(const LocalProfile& prof, const std::vector<Vec>& columns) {
    const int n = prof.spec.n, b = prof.spec.b, ell = prof.spec.ell;
    if (columns.size() != static_cast<std::size_t>(b))
        throw usage_error("witness must supply b columns");
    for (const Vec& v : columns) {
        if (v.size() != static_cast<std::size_t>(n)) throw usage_error("witness column length != n");
        for (FieldElement e : v)
            if (e.index >= prof.field->q()) throw usage_error("witness entry out of field range");
    }
    const auto rel = relevance(prof.spec);
    std::vector<std::vector<FieldElement>> lists;
    lists.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::set<std::uint32_t> vals;
        for (int j = 0; j < b; ++j)
            if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                vals.insert(columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].index);
        if (static_cast<int>(vals.size()) > ell)
            throw usage_error("witness columns need more than ell values at coordinate " +
                              std::to_string(i));
        lists.push_back(pad_list(std::move(vals), ell, prof.field->q()));
    }
    return make_ball(prof.spec.rho, make_input_lists(prof.field, std::move(lists)));
}

ProfileSpec sample_profile_spec(int n, int b, int ell, const Rational& rho, Rng& rng) {
    if (n < 1 || b < 1 || ell < 1) throw usage_error("bad profile dimensions");
    if (rho < Rational(0) || rho > Rational(1))
        throw usage_error("profile radius must lie in [0, 1]");
    const int threshold = (Rational(1) - rho).ceil_mul(n);
    ProfileSpec spec;
    spec.n = n;
    spec.b = b;
    spec.ell = ell;
    spec.rho = rho;
    for (int j = 0; j < b; ++j) {
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        for (int t = 0; t < threshold; ++t)
            std::swap(idx[static_cast<std::size_t>(t)],
                      idx[static_cast<std::size_t>(t) +
                          rng.below(static_cast<std::uint64_t>(n - t))]);
        std::vector<int> s(idx.begin(), idx.begin() + threshold);
        std::sort(s.begin(), s.end());
        spec.sets.push_back(std::move(s));
    }
    for (int i = 0; i < n; ++i) {
        std::vector<int> row;
        row.reserve(static_cast<std::size_t>(b));
        for (int j = 0; j < b; ++j)
            row.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(ell))));
        spec.M.push_back(std::move(row));
    }
    return spec;
}

LclConsistencyReport lcl_consistency_check(const LinearCode& code, int b, int ell,
                                           const Rational& rho, std::uint64_t trials,
                                           std::uint64_t seed, std::uint64_t budget) {
    if (b < 1) throw usage_error("need locality b >= 1");
    LclConsistencyReport rep;
    for (std::uint64_t t = 0; t < trials; ++t) {
        {
            Rng rng = Rng::substream(seed, 2 * t);
            const RecoveryBall ball =
                make_ball(rho, sample_input_lists(code.field, code.n, ell, rng));
            ++rep.balls_tried;
            const RecoveredList rec = recover_list(code, ball, budget);
            if (rec.codewords.size() >= static_cast<std::size_t>(b)) {
                ++rep.ball_cases;
                std::vector<Vec> tuple(rec.codewords.begin(), rec.codewords.begin() + b);
                const ProfileSpec spec = violation_to_profile(ball, tuple);
                const LocalProfile prof = profile_from_spec(spec, code.field);
                bool ok = profile_matches(prof, tuple);
                ok = ok && code_contains_profile(code, prof, budget).contained;
                if (!ok) ++rep.ball_violations;
            }
        }
        {
            Rng rng = Rng::substream(seed, 2 * t + 1);
            const ProfileSpec spec = sample_profile_spec(code.n, b, ell, rho, rng);
            const LocalProfile prof = profile_from_spec(spec, code.field);
            ++rep.specs_tried;
            const ContainmentResult res = code_contains_profile(code, prof, budget);
            if (res.contained) {
                ++rep.spec_cases;
                std::vector<Vec> cols;
                for (int j = 0; j < b; ++j)
                    cols.push_back(res.witness->A.col(static_cast<std::size_t>(j)));
                const RecoveryBall ball = profile_witness_ball(prof, cols);
                bool ok = true;
                for (const Vec& c : cols) ok = ok && in_ball(c, ball);
                if (!ok) ++rep.spec_violations;
            }
        }
    }
    return rep;
}

std::string profile_to_text(const ProfileSpec& spec) {
    std::ostringstream os;
    os << "lrlab-profile v1\n";
    os << "n " << spec.n << "\n";
    os << "b " << spec.b << "\n";
    os << "ell " << spec.ell << "\n";
    os << "rho " << spec.rho.str() << "\n";
    os << "sets\n";
    for (const auto& s : spec.sets) {
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
        os << "\n";
    }
    os << "matrix\n";
    for (const auto& row : spec.M) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

ProfileSpec profile_from_text(const std::string& text) {
    detail::LineReader rd(text);
    rd.expect("lrlab-profile v1");
    ProfileSpec spec;
    spec.n = static_cast<int>(rd.keyed("n", 1, 1)[0]);
    spec.b = static_cast<int>(rd.keyed("b", 1, 1)[0]);
    spec.ell = static_cast<int>(rd.keyed("ell", 1, 1)[0]);
    spec.rho = rd.keyed_rational("rho");
    if (spec.n < 1 || spec.b < 1 || spec.ell < 1) throw usage_error("bad profile dimensions");
    if (spec.rho < Rational(0) || spec.rho > Rational(1))
        throw usage_error("profile radius must lie in [0, 1]");
    const int threshold = (Rational(1) - spec.rho).ceil_mul(spec.n);
    rd.expect("sets");
    for (int j = 0; j < spec.b; ++j) {
        const auto vals = detail::LineReader::ints(rd.line());
        std::vector<int> s;
        for (long long v : vals) s.push_back(static_cast<int>(v));
        spec.sets.push_back(std::move(s));
    }
    rd.expect("matrix");
    for (int i = 0; i < spec.n; ++i) {
        const auto vals = detail::LineReader::ints(rd.line());
        std::vector<int> row;
        for (long long v : vals) row.push_back(static_cast<int>(v));
        spec.M.push_back(std::move(row));
    }
    rd.expect("end");
    validate_spec(spec, threshold);
    return spec;
}

} // namespace lrlab
