#include "lrlab/listrec.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lrlab/detail/lineio.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lrlab {

InputLists make_input_lists(std::shared_ptr<const Field> field,
                            std::vector<std::vector<FieldElement>> lists) {
    if (!field) throw usage_error("null field");
    const int n = static_cast<int>(lists.size());
    if (n < 1) throw usage_error("need at least one coordinate list");
    int ell = static_cast<int>(lists.front().size());
    if (ell < 1) throw usage_error("lists must be nonempty");
    if (static_cast<std::uint32_t>(ell) > field->q())
        throw usage_error("list size ell exceeds field order");
    for (auto& l : lists) {
        if (static_cast<int>(l.size()) != ell)
            throw usage_error("all lists must have the same size ell");
        std::sort(l.begin(), l.end());
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (l[i].index >= field->q()) throw usage_error("list entry out of field range");
            if (i && l[i] == l[i - 1]) throw usage_error("list entries must be distinct");
        }
    }
    return InputLists{std::move(field), n, ell, std::move(lists)};
}

RecoveryBall make_ball(const Rational& rho, InputLists lists) {
    if (rho < Rational(0) || rho > Rational(1))
        throw domain_error("radius rho must lie in [0, 1], got " + rho.str());
    const int n = lists.n;
    RecoveryBall ball{rho, std::move(lists), 0};
    ball.threshold = static_cast<int>((Rational(1) - rho).ceil_mul(n));
    return ball;
}

std::vector<int> agreement(const Vec& x, const InputLists& lists) {
    if (x.size() != static_cast<std::size_t>(lists.n))
        throw usage_error("vector length != number of coordinate lists");
    std::vector<int> agr;
    for (int i = 0; i < lists.n; ++i) {
        const auto& l = lists.lists[static_cast<std::size_t>(i)];
        if (x[static_cast<std::size_t>(i)].index >= lists.field->q())
            throw usage_error("vector entry out of field range");
        if (std::binary_search(l.begin(), l.end(), x[static_cast<std::size_t>(i)]))
            agr.push_back(i);
    }
    return agr;
}

bool in_ball(const Vec& x, const RecoveryBall& ball) {
    return static_cast<int>(agreement(x, ball.lists).size()) >= ball.threshold;
}

namespace {

// 0/1 membership flags, coordinate-major: member[i*q + e].
std::vector<std::uint8_t> membership_flags(const InputLists& lists) {
    const std::uint32_t q = lists.field->q();
    std::vector<std::uint8_t> member(static_cast<std::size_t>(lists.n) * q, 0);
    for (int i = 0; i < lists.n; ++i)
        for (FieldElement e : lists.lists[static_cast<std::size_t>(i)])
            member[static_cast<std::size_t>(i) * q + e.index] = 1;
    return member;
}

void require_compatible(const LinearCode& code, const RecoveryBall& ball) {
    if (code.field->spec() != ball.lists.field->spec())
        throw usage_error("code and ball live over different fields");
    if (code.n != ball.lists.n) throw usage_error("code length != ball length");
}

unsigned scan_parts(std::uint64_t total) {
    return static_cast<unsigned>(
        std::min<std::uint64_t>(256, std::max<std::uint64_t>(1, total >> 12)));
}

// Forward-elimination basis for incremental rank; insert() keeps the first
// (scan-order) maximal independent subset.
struct GreedyBasis {
    const Field& F;
    std::vector<Vec> reduced;
    std::vector<std::size_t> pivot;

    explicit GreedyBasis(const Field& f) : F(f) {}

    bool insert(const Vec& v) {
        Vec r = v;
        for (std::size_t t = 0; t < reduced.size(); ++t) {
            const FieldElement f = r[pivot[t]];
            if (f.index == 0) continue;
            const Vec& row = reduced[t];
            for (std::size_t j = 0; j < r.size(); ++j) r[j] = F.sub(r[j], F.mul(f, row[j]));
        }
        std::size_t pc = r.size();
        for (std::size_t j = 0; j < r.size(); ++j)
            if (r[j].index != 0) {
                pc = j;
                break;
            }
        if (pc == r.size()) return false;
        const FieldElement s = F.inv(r[pc]);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = F.mul(s, r[j]);
        reduced.push_back(std::move(r));
        pivot.push_back(pc);
        return true;
    }
};

int span_dimension(const Field& F, const std::vector<Vec>& vecs) {
    GreedyBasis basis(F);
    int dim = 0;
    for (const Vec& v : vecs) dim += basis.insert(v);
    return dim;
}

} // namespace

RecoveredList recover_list(const LinearCode& code, const RecoveryBall& ball,
                           std::uint64_t budget) {
    require_compatible(code, ball);
    const std::uint64_t total = message_count(code.field->q(), code.k, budget);
    const std::uint32_t q = code.field->q();
    const int n = code.n;
    const int threshold = ball.threshold;
    const std::vector<std::uint8_t> member = membership_flags(ball.lists);

    const std::vector<MessageRange> ranges = partition_messages(total, scan_parts(total));
    std::vector<std::vector<std::pair<std::uint64_t, Vec>>> hits(ranges.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long ri = 0; ri < static_cast<long>(ranges.size()); ++ri) {
        const MessageRange r = ranges[static_cast<std::size_t>(ri)];
        if (r.begin == r.end) continue;
        auto& local = hits[static_cast<std::size_t>(ri)];
        CodewordScanner scan(code, r.begin);
        for (std::uint64_t idx = r.begin; idx < r.end; ++idx) {
            const Vec& cw = scan.codeword();
            int agr = 0;
            for (int i = 0; i < n; ++i)
                agr += member[static_cast<std::size_t>(i) * q + cw[static_cast<std::size_t>(i)].index];
            if (agr >= threshold) local.emplace_back(idx, cw);
            scan.advance();
        }
    }

    RecoveredList out;
    for (const auto& local : hits) {
        for (const auto& [idx, cw] : local) {
            out.codewords.push_back(cw);
            out.messages.push_back(message_from_index(*code.field, code.k, idx));
        }
    }
    out.span_dim = span_dimension(*code.field, out.codewords);
    return out;
}

IndependentInBall independent_in_ball(const LinearCode& code, const RecoveryBall& ball,
                                      std::uint64_t budget) {
    require_compatible(code, ball);
    const std::uint64_t total = message_count(code.field->q(), code.k, budget);
    const std::uint32_t q = code.field->q();
    const int n = code.n;
    const int threshold = ball.threshold;
    const Field& F = *code.field;
    const std::vector<std::uint8_t> member = membership_flags(ball.lists);

    const std::vector<MessageRange> ranges = partition_messages(total, scan_parts(total));
    // Per-range greedy bases; re-greedy over the concatenation (in range
    // order) spans the same prefixes as a serial scan, hence equals it.
    std::vector<std::vector<Vec>> local_witnesses(ranges.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long ri = 0; ri < static_cast<long>(ranges.size()); ++ri) {
        const MessageRange r = ranges[static_cast<std::size_t>(ri)];
        if (r.begin == r.end) continue;
        GreedyBasis basis(F);
        auto& wit = local_witnesses[static_cast<std::size_t>(ri)];
        CodewordScanner scan(code, r.begin);
        for (std::uint64_t idx = r.begin; idx < r.end; ++idx) {
            const Vec& cw = scan.codeword();
            int agr = 0;
            for (int i = 0; i < n; ++i)
                agr += member[static_cast<std::size_t>(i) * q + cw[static_cast<std::size_t>(i)].index];
            if (agr >= threshold && basis.insert(cw)) wit.push_back(cw);
            scan.advance();
        }
    }

    IndependentInBall out;
    GreedyBasis merged(F);
    for (const auto& wit : local_witnesses)
        for (const Vec& v : wit)
            if (merged.insert(v)) out.witnesses.push_back(v);
    out.rank = static_cast<int>(out.witnesses.size());
    return out;
}

SearchStrategy strategy_from_name(const std::string& name) {
    if (name == "random") return SearchStrategy::Random;
    if (name == "codeword-seeded") return SearchStrategy::CodewordSeeded;
    if (name == "exhaustive-tiny") return SearchStrategy::ExhaustiveTiny;
    throw usage_error("unknown search strategy \"" + name + "\"");
}

std::string strategy_name(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::Random: return "random";
        case SearchStrategy::CodewordSeeded: return "codeword-seeded";
        case SearchStrategy::ExhaustiveTiny: return "exhaustive-tiny";
    }
    return "?";
}

InputLists sample_input_lists(std::shared_ptr<const Field> field, int n, int ell, Rng& rng) {
    if (!field) throw usage_error("null field");
    if (ell < 1 || static_cast<std::uint32_t>(ell) > field->q())
        throw usage_error("need 1 <= ell <= q");
    const std::uint32_t q = field->q();
    std::vector<std::vector<FieldElement>> lists(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::set<std::uint32_t> chosen;
        while (chosen.size() < static_cast<std::size_t>(ell))
            chosen.insert(static_cast<std::uint32_t>(rng.below(q)));
        for (std::uint32_t v : chosen) lists[static_cast<std::size_t>(i)].push_back(FieldElement{v});
    }
    return make_input_lists(std::move(field), std::move(lists));
}

namespace {

InputLists codeword_seeded_lists(const LinearCode& code, int ell, Rng& rng) {
    const std::uint32_t q = code.field->q();
    std::vector<std::set<std::uint32_t>> chosen(static_cast<std::size_t>(code.n));
    for (int t = 0; t < ell; ++t) {
        Vec msg(static_cast<std::size_t>(code.k));
        for (int j = 0; j < code.k; ++j)
            msg[static_cast<std::size_t>(j)] = FieldElement{static_cast<std::uint32_t>(rng.below(q))};
        const Vec cw = encode(code, msg);
        for (int i = 0; i < code.n; ++i)
            chosen[static_cast<std::size_t>(i)].insert(cw[static_cast<std::size_t>(i)].index);
    }
    // pad collision-shrunk lists back to ell with uniform fresh symbols
    for (auto& set : chosen)
        while (set.size() < static_cast<std::size_t>(ell))
            set.insert(static_cast<std::uint32_t>(rng.below(q)));
    std::vector<std::vector<FieldElement>> lists(static_cast<std::size_t>(code.n));
    for (int i = 0; i < code.n; ++i)
        for (std::uint32_t v : chosen[static_cast<std::size_t>(i)])
            lists[static_cast<std::size_t>(i)].push_back(FieldElement{v});
    return make_input_lists(code.field, std::move(lists));
}

std::uint64_t binom_guarded(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(acc);
}

} // namespace

SearchResult max_list_size_search(const LinearCode& code, int ell, const Rational& rho,
                                  SearchStrategy strategy, std::uint64_t budget,
                                  std::uint64_t seed) {
    if (budget == 0) throw usage_error("search budget must be >= 1");
    const std::uint32_t q = code.field->q();
    if (ell < 1 || static_cast<std::uint32_t>(ell) > q) throw usage_error("need 1 <= ell <= q");

    SearchResult best;
    bool have = false;
    auto consider = [&](RecoveryBall&& ball) {
        RecoveredList got = recover_list(code, ball);
        if (!have || got.codewords.size() > best.list.codewords.size()) {
            best.ball = std::move(ball);
            best.list = std::move(got);
            have = true;
        }
        ++best.proposals;
    };

    if (strategy == SearchStrategy::ExhaustiveTiny) {
        const std::uint64_t combos = binom_guarded(q, static_cast<std::uint64_t>(ell),
                                                   kBallEnumerationBudget);
        unsigned __int128 tuples = 1;
        for (int i = 0; i < code.n; ++i) {
            tuples *= combos;
            if (tuples > kBallEnumerationBudget)
                throw budget_error("exhaustive-tiny needs binom(q,ell)^n <= " +
                                   std::to_string(kBallEnumerationBudget));
        }
        // all ell-subsets of the field, lexicographic
        std::vector<std::vector<FieldElement>> subsets;
        std::vector<std::uint32_t> idx(static_cast<std::size_t>(ell));
        for (int i = 0; i < ell; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
        while (true) {
            std::vector<FieldElement> s;
            for (std::uint32_t v : idx) s.push_back(FieldElement{v});
            subsets.push_back(std::move(s));
            int j = ell - 1;
            while (j >= 0 && idx[static_cast<std::size_t>(j)] ==
                                 q - static_cast<std::uint32_t>(ell - j))
                --j;
            if (j < 0) break;
            ++idx[static_cast<std::size_t>(j)];
            for (int t = j + 1; t < ell; ++t)
                idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
        }
        // odometer over coordinates, coordinate 0 most significant
        std::vector<std::size_t> pick(static_cast<std::size_t>(code.n), 0);
        while (true) {
            std::vector<std::vector<FieldElement>> lists;
            lists.reserve(static_cast<std::size_t>(code.n));
            for (int i = 0; i < code.n; ++i) lists.push_back(subsets[pick[static_cast<std::size_t>(i)]]);
            consider(make_ball(rho, make_input_lists(code.field, std::move(lists))));
            int j = code.n - 1;
            while (j >= 0 && pick[static_cast<std::size_t>(j)] == subsets.size() - 1) {
                pick[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j < 0) break;
            ++pick[static_cast<std::size_t>(j)];
        }
        best.exhaustive = true;
        return best;
    }

    for (std::uint64_t t = 0; t < budget; ++t) {
        {
            Rng rng = Rng::substream(seed, 2 * t);
            consider(make_ball(rho, sample_input_lists(code.field, code.n, ell, rng)));
        }
        if (strategy == SearchStrategy::CodewordSeeded) {
            Rng rng = Rng::substream(seed, 2 * t + 1);
            consider(make_ball(rho, codeword_seeded_lists(code, ell, rng)));
        }
    }
    return best;
}

std::string ball_to_text(const RecoveryBall& ball) {
    std::ostringstream os;
    os << "lrlab-ball v1\n";
    os << "rho " << ball.rho.str() << "\n";
    os << "n " << ball.lists.n << "\n";
    os << "ell " << ball.lists.ell << "\n";
    os << "lists\n";
    for (const auto& l : ball.lists.lists) {
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (i) os << " ";
            os << l[i].index;
        }
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

RecoveryBall ball_from_text(const std::string& text, std::shared_ptr<const Field> field) {
    detail::LineReader rd(text);
    return ball_from_reader(rd, std::move(field));
}

RecoveryBall ball_from_reader(detail::LineReader& rd, std::shared_ptr<const Field> field) {
    if (!field) throw usage_error("null field");
    rd.expect("lrlab-ball v1");
    const Rational rho = rd.keyed_rational("rho");
    const long long n = rd.keyed("n", 1, 1)[0];
    const long long ell = rd.keyed("ell", 1, 1)[0];
    if (n < 1 || ell < 1) throw usage_error("bad ball dimensions");
    rd.expect("lists");
    std::vector<std::vector<FieldElement>> lists;
    for (long long i = 0; i < n; ++i) {
        const auto vals = detail::LineReader::ints(rd.line());
        if (vals.size() != static_cast<std::size_t>(ell))
            throw usage_error("list line has wrong number of entries");
        std::vector<FieldElement> l;
        for (long long v : vals) {
            if (v < 0 || v >= field->q()) throw usage_error("list entry out of range");
            l.push_back(FieldElement{static_cast<std::uint32_t>(v)});
        }
        lists.push_back(std::move(l));
    }
    rd.expect("end");
    return make_ball(rho, make_input_lists(std::move(field), std::move(lists)));
}

} // namespace lrlab
