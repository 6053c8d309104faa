#include "lrlab/codes.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lrlab/detail/lineio.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lrlab {

LinearCode make_linear_code(std::shared_ptr<const Field> field, Matrix G) {
    if (!field) throw usage_error("null field");
    const int n = static_cast<int>(G.rows());
    const int k = static_cast<int>(G.cols());
    if (k < 1 || n < k) throw usage_error("generator must be n x k with 1 <= k <= n");
    for (std::size_t r = 0; r < G.rows(); ++r)
        for (std::size_t c = 0; c < G.cols(); ++c)
            if (G.at(r, c).index >= field->q()) throw usage_error("generator entry out of field range");
    if (rank(*field, G) != static_cast<std::size_t>(k))
        throw rank_error("generator has column rank < k");
    return LinearCode{std::move(field), n, k, std::move(G)};
}

LinearCode sample_rlc(std::shared_ptr<const Field> field, int n, int k, Rng& rng,
                      SampleStats* stats) {
    if (!field) throw usage_error("null field");
    if (k < 1 || n < k) throw domain_error("need 1 <= k <= n");
    const std::uint32_t q = field->q();
    for (int attempt = 0; attempt <= kResampleLimit; ++attempt) {
        Matrix G(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < k; ++c)
                G.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                    FieldElement{static_cast<std::uint32_t>(rng.below(q))};
        if (rank(*field, G) == static_cast<std::size_t>(k)) {
            if (stats) stats->resamples = attempt;
            return LinearCode{std::move(field), n, k, std::move(G)};
        }
    }
    throw sampling_error("rank-deficient generator redrawn " + std::to_string(kResampleLimit) +
                         " times (k too large for n at this q)");
}

LinearCode sample_rlc(std::shared_ptr<const Field> field, int n, int k, std::uint64_t seed,
                      SampleStats* stats) {
    Rng rng(seed);
    return sample_rlc(std::move(field), n, k, rng, stats);
}

LinearCode rs_code(std::shared_ptr<const Field> field, const Vec& points, int k) {
    if (!field) throw usage_error("null field");
    const int n = static_cast<int>(points.size());
    if (k < 1 || n < k) throw domain_error("need 1 <= k <= n evaluation points");
    std::set<std::uint32_t> distinct;
    for (FieldElement pt : points) {
        if (pt.index >= field->q()) throw usage_error("evaluation point out of field range");
        distinct.insert(pt.index);
    }
    if (distinct.size() < static_cast<std::size_t>(k))
        throw rank_error("only " + std::to_string(distinct.size()) +
                         " distinct evaluation points, need k = " + std::to_string(k));
    Matrix G(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i) {
        FieldElement pw = field->one();
        for (int j = 0; j < k; ++j) {
            G.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = pw;
            pw = field->mul(pw, points[static_cast<std::size_t>(i)]);
        }
    }
    return LinearCode{std::move(field), n, k, std::move(G)};
}

std::pair<LinearCode, Vec> sample_random_rs(std::shared_ptr<const Field> field, int n, int k,
                                            Rng& rng, SampleStats* stats, bool distinct_points) {
    if (!field) throw usage_error("null field");
    if (k < 1 || n < k) throw domain_error("need 1 <= k <= n");
    const std::uint32_t q = field->q();
    if (distinct_points && n > static_cast<int>(q))
        throw domain_error("distinct evaluation points require n <= q");
    if (distinct_points) {
        // Uniform injective sequence = the i.i.d. draw conditioned on
        // distinctness; sampled directly (partial Fisher-Yates) because the
        // rejection route stalls when n is close to q.
        std::vector<std::uint32_t> pool(q);
        for (std::uint32_t i = 0; i < q; ++i) pool[i] = i;
        Vec points(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) +
                static_cast<std::size_t>(rng.below(q - static_cast<std::uint32_t>(i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            points[static_cast<std::size_t>(i)] = FieldElement{pool[static_cast<std::size_t>(i)]};
        }
        if (stats) stats->resamples = 0;
        return {rs_code(std::move(field), points, k), points};
    }
    for (int attempt = 0; attempt <= kResampleLimit; ++attempt) {
        Vec points(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            points[static_cast<std::size_t>(i)] = FieldElement{static_cast<std::uint32_t>(rng.below(q))};
        std::set<std::uint32_t> distinct;
        for (FieldElement pt : points) distinct.insert(pt.index);
        const bool ok = distinct.size() >= static_cast<std::size_t>(k);
        if (ok) {
            if (stats) stats->resamples = attempt;
            return {rs_code(std::move(field), points, k), points};
        }
    }
    throw sampling_error("evaluation points degenerate " + std::to_string(kResampleLimit) +
                         " times in a row");
}

Vec encode(const LinearCode& code, const Vec& message) {
    if (message.size() != static_cast<std::size_t>(code.k))
        throw usage_error("message length != k");
    for (FieldElement e : message)
        if (e.index >= code.field->q()) throw usage_error("message entry out of field range");
    return mat_vec(*code.field, code.G, message);
}

std::uint64_t message_count(std::uint32_t q, int k, std::uint64_t budget) {
    unsigned __int128 total = 1;
    for (int i = 0; i < k; ++i) {
        total *= q;
        if (total > budget) {
            std::string size = total > (static_cast<unsigned __int128>(1) << 63)
                                   ? std::string("> 2^63")
                                   : std::to_string(static_cast<std::uint64_t>(total));
            throw budget_error("q^k = " + size + " exceeds enumeration budget " +
                               std::to_string(budget));
        }
    }
    return static_cast<std::uint64_t>(total);
}

std::uint64_t codeword_count(const LinearCode& code) {
    return message_count(code.field->q(), code.k);
}

Vec message_from_index(const Field& F, int k, std::uint64_t index) {
    Vec msg(static_cast<std::size_t>(k));
    const std::uint32_t q = F.q();
    for (int j = k - 1; j >= 0; --j) {
        msg[static_cast<std::size_t>(j)] = FieldElement{static_cast<std::uint32_t>(index % q)};
        index /= q;
    }
    return msg;
}

std::uint64_t index_from_message(const Field& F, const Vec& message) {
    std::uint64_t idx = 0;
    for (FieldElement e : message) idx = idx * F.q() + e.index;
    return idx;
}

std::vector<MessageRange> partition_messages(std::uint64_t total, unsigned parts) {
    if (parts == 0) parts = 1;
    std::vector<MessageRange> out;
    const std::uint64_t base = total / parts;
    const std::uint64_t extra = total % parts;
    std::uint64_t at = 0;
    for (unsigned i = 0; i < parts; ++i) {
        const std::uint64_t len = base + (i < extra ? 1 : 0);
        out.push_back({at, at + len});
        at += len;
    }
    return out;
}

CodewordScanner::CodewordScanner(const LinearCode& code, std::uint64_t start_index)
    : F_(*code.field), q_(code.field->q()), n_(code.n), k_(code.k), index_(start_index) {
    cols_.reserve(static_cast<std::size_t>(k_));
    for (int j = 0; j < k_; ++j) cols_.push_back(code.G.col(static_cast<std::size_t>(j)));
    msg_.assign(static_cast<std::size_t>(k_), 0);
    std::uint64_t v = start_index;
    for (int j = k_ - 1; j >= 0; --j) {
        msg_[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(v % q_);
        v /= q_;
    }
    cw_.assign(static_cast<std::size_t>(n_), FieldElement{0});
    for (int j = 0; j < k_; ++j) {
        const FieldElement d{msg_[static_cast<std::size_t>(j)]};
        if (d.index == 0) continue;
        const Vec& col = cols_[static_cast<std::size_t>(j)];
        for (int i = 0; i < n_; ++i)
            cw_[static_cast<std::size_t>(i)] =
                F_.add(cw_[static_cast<std::size_t>(i)],
                       F_.mul(d, col[static_cast<std::size_t>(i)]));
    }
}

void CodewordScanner::advance() {
    ++index_;
    for (int j = k_ - 1; j >= 0; --j) {
        const std::uint32_t old = msg_[static_cast<std::size_t>(j)];
        const std::uint32_t nw = (old + 1 == q_) ? 0 : old + 1;
        msg_[static_cast<std::size_t>(j)] = nw;
        const FieldElement delta = F_.sub(FieldElement{nw}, FieldElement{old});
        const Vec& col = cols_[static_cast<std::size_t>(j)];
        if (delta.index == 1) {
            for (int i = 0; i < n_; ++i)
                cw_[static_cast<std::size_t>(i)] =
                    F_.add(cw_[static_cast<std::size_t>(i)], col[static_cast<std::size_t>(i)]);
        } else if (delta.index != 0) {
            for (int i = 0; i < n_; ++i)
                cw_[static_cast<std::size_t>(i)] =
                    F_.add(cw_[static_cast<std::size_t>(i)],
                           F_.mul(delta, col[static_cast<std::size_t>(i)]));
        }
        if (nw != 0) break;
    }
}

DistanceResult min_distance(const LinearCode& code, std::uint64_t budget) {
    const std::uint64_t total = message_count(code.field->q(), code.k, budget);
    const int n = code.n;

    // chunked scan; the global (weight, index) lexicographic minimum is
    // independent of chunk execution order
    const unsigned parts =
        static_cast<unsigned>(std::min<std::uint64_t>(256, std::max<std::uint64_t>(1, total >> 12)));
    const std::vector<MessageRange> ranges = partition_messages(total, parts);

    int best_w = n + 1;
    std::uint64_t best_idx = 0;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long ri = 0; ri < static_cast<long>(ranges.size()); ++ri) {
        const MessageRange r = ranges[static_cast<std::size_t>(ri)];
        if (r.begin == r.end) continue;
        int local_w = n + 1;
        std::uint64_t local_idx = 0;
        CodewordScanner scan(code, r.begin);
        for (std::uint64_t idx = r.begin; idx < r.end; ++idx) {
            if (idx != 0) {
                const Vec& cw = scan.codeword();
                int w = 0;
                for (int i = 0; i < n; ++i) w += cw[static_cast<std::size_t>(i)].index != 0;
                if (w < local_w || (w == local_w && idx < local_idx)) {
                    local_w = w;
                    local_idx = idx;
                }
            }
            scan.advance();
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            if (local_w < best_w || (local_w == best_w && local_idx < best_idx)) {
                best_w = local_w;
                best_idx = local_idx;
            }
        }
    }

    DistanceResult out;
    out.d = best_w;
    out.witness_message = best_idx;
    out.witness = encode(code, message_from_index(*code.field, code.k, best_idx));
    return out;
}

std::string code_to_text(const LinearCode& code) {
    std::ostringstream os;
    os << "lrlab-code v1\n";
    os << "p " << code.field->p() << "\n";
    os << "m " << code.field->m() << "\n";
    os << "modulus";
    for (std::uint32_t c : code.field->spec().modulus) os << " " << c;
    os << "\n";
    os << "n " << code.n << "\n";
    os << "k " << code.k << "\n";
    os << "generator\n";
    for (int r = 0; r < code.n; ++r) {
        for (int c = 0; c < code.k; ++c) {
            if (c) os << " ";
            os << code.G.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)).index;
        }
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

LinearCode code_from_text(const std::string& text) {
    detail::LineReader rd(text);
    return code_from_reader(rd);
}

LinearCode code_from_reader(detail::LineReader& rd) {
    rd.expect("lrlab-code v1");
    const auto p = rd.keyed("p", 1, 1)[0];
    const auto m = rd.keyed("m", 1, 1)[0];
    const auto mod = rd.keyed("modulus", 0, 64);
    const auto n = rd.keyed("n", 1, 1)[0];
    const auto k = rd.keyed("k", 1, 1)[0];
    std::vector<std::uint32_t> modulus;
    for (long long c : mod) {
        if (c < 0) throw usage_error("negative modulus coefficient");
        modulus.push_back(static_cast<std::uint32_t>(c));
    }
    auto field = Field::make_extension(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m),
                                       std::move(modulus));
    rd.expect("generator");
    if (n < 1 || k < 1) throw usage_error("bad code dimensions");
    Matrix G(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
    for (long long r = 0; r < n; ++r) {
        const auto row = rd.ints(rd.line());
        if (row.size() != static_cast<std::size_t>(k)) throw usage_error("generator row length != k");
        for (long long c = 0; c < k; ++c) {
            const long long v = row[static_cast<std::size_t>(c)];
            if (v < 0 || v >= field->q()) throw usage_error("generator entry out of range");
            G.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                FieldElement{static_cast<std::uint32_t>(v)};
        }
    }
    rd.expect("end");
    return make_linear_code(std::move(field), std::move(G));
}

} // namespace lrlab
