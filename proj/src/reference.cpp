#include "lrlab/reference.hpp"

namespace lrlab::ref {

namespace {

// Self-contained digit expansion (coordinate 0 most significant).
std::vector<std::uint32_t> digits_of(std::uint64_t index, std::uint32_t q, int k) {
    std::vector<std::uint32_t> d(static_cast<std::size_t>(k), 0);
    int j = k;
    while (j-- > 0) {
        d[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(index % q);
        index /= q;
    }
    return d;
}

Vec encode_rows(const LinearCode& code, const std::vector<std::uint32_t>& msg) {
    const Field& F = *code.field;
    Vec cw;
    cw.reserve(static_cast<std::size_t>(code.n));
    for (int i = 0; i < code.n; ++i) {
        FieldElement acc = F.zero();
        for (int j = 0; j < code.k; ++j)
            acc = F.add(acc, F.mul(code.G.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
                                   FieldElement{msg[static_cast<std::size_t>(j)]}));
        cw.push_back(acc);
    }
    return cw;
}

} // namespace

RecoveredList recover_list(const LinearCode& code, const RecoveryBall& ball,
                           std::uint64_t budget) {
    if (code.field->spec() != ball.lists.field->spec())
        throw usage_error("code and ball live over different fields");
    if (code.n != ball.lists.n) throw usage_error("code length != ball length");
    const std::uint32_t q = code.field->q();
    const std::uint64_t total = message_count(q, code.k, budget);

    RecoveredList out;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const auto msg = digits_of(idx, q, code.k);
        const Vec cw = encode_rows(code, msg);
        int agr = 0;
        for (int i = 0; i < code.n; ++i) {
            const auto& list = ball.lists.lists[static_cast<std::size_t>(i)];
            for (FieldElement e : list)
                if (e == cw[static_cast<std::size_t>(i)]) {
                    ++agr;
                    break;
                }
        }
        if (agr >= ball.threshold) {
            out.codewords.push_back(cw);
            Vec m;
            for (std::uint32_t d : msg) m.push_back(FieldElement{d});
            out.messages.push_back(std::move(m));
        }
    }

    // span via plain forward elimination over a scratch copy
    const Field& F = *code.field;
    std::vector<Vec> rows = out.codewords;
    int dim = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t lead = rows[r].size();
        for (std::size_t j = 0; j < rows[r].size(); ++j)
            if (rows[r][j].index != 0) {
                lead = j;
                break;
            }
        if (lead == rows[r].size()) continue;
        ++dim;
        const FieldElement piv = rows[r][lead];
        for (std::size_t r2 = r + 1; r2 < rows.size(); ++r2) {
            if (rows[r2][lead].index == 0) continue;
            const FieldElement f = F.div(rows[r2][lead], piv);
            for (std::size_t j = 0; j < rows[r2].size(); ++j)
                rows[r2][j] = F.sub(rows[r2][j], F.mul(f, rows[r][j]));
        }
    }
    out.span_dim = dim;
    return out;
}

DistanceResult min_distance_pairwise(const LinearCode& code, std::uint64_t pair_budget) {
    const std::uint32_t q = code.field->q();
    const std::uint64_t total = message_count(q, code.k, pair_budget);
    const Field& F = *code.field;

    std::vector<Vec> all;
    all.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx)
        all.push_back(encode_rows(code, digits_of(idx, q, code.k)));

    DistanceResult out;
    out.d = code.n + 1;
    for (std::uint64_t a = 0; a < total; ++a) {
        for (std::uint64_t b = 0; b < total; ++b) {
            if (a == b) continue;
            int w = 0;
            for (int i = 0; i < code.n; ++i)
                w += F.sub(all[a][static_cast<std::size_t>(i)], all[b][static_cast<std::size_t>(i)]).index != 0;
            if (w < out.d) out.d = w;
        }
    }
    // witness: difference is itself a codeword; find the first message whose
    // codeword attains the minimum weight
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        int w = 0;
        for (int i = 0; i < code.n; ++i) w += all[idx][static_cast<std::size_t>(i)].index != 0;
        if (w == out.d) {
            out.witness = all[idx];
            out.witness_message = idx;
            break;
        }
    }
    return out;
}

DistanceResult min_distance_naive(const LinearCode& code, std::uint64_t budget) {
    const std::uint32_t q = code.field->q();
    const std::uint64_t total = message_count(q, code.k, budget);
    DistanceResult out;
    out.d = code.n + 1;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        const Vec cw = encode_rows(code, digits_of(idx, q, code.k));
        int w = 0;
        for (int i = 0; i < code.n; ++i) w += cw[static_cast<std::size_t>(i)].index != 0;
        if (w < out.d) {
            out.d = w;
            out.witness = cw;
            out.witness_message = idx;
        }
    }
    return out;
}

} // namespace lrlab::ref
