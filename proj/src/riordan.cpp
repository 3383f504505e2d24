#include <iterroot/riordan.hpp>

#include <string>

namespace iterroot {

namespace {

std::string entry_name(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void require_pair(const TruncSeries& f, const TruncSeries& g, std::size_t m) {
    if (!(f.ctx() == g.ctx())) {
        throw ContextMismatch("Riordan pair over " + f.ctx().name() + " and " + g.ctx().name());
    }
    if (f.order() < m || g.order() < m) {
        throw NotRiordanPair("pair known to order " + std::to_string(std::min(f.order(), g.order())) +
                             ", matrix needs order " + std::to_string(m));
    }
    if (!f[0].is_one()) {
        throw NotRiordanPair("f_0 must be 1, got " + f[0].to_string());
    }
    if (!g[0].is_zero() || (g.order() >= 1 && !g[1].is_one())) {
        throw NotRiordanPair("g must satisfy g_0 = 0 and g_1 = 1");
    }
}

} // namespace

RiordanMat::RiordanMat(Trusted, LowerTriangular entries, TruncSeries f, TruncSeries g)
    : entries_(std::move(entries)), f_(std::move(f)), g_(std::move(g)) {}

RiordanMat::RiordanMat(LowerTriangular entries, TruncSeries f, TruncSeries g)
    : entries_(std::move(entries)), f_(std::move(f)), g_(std::move(g)) {
    const std::size_t m = entries_.dim() - 1;
    if (f_.order() != m || g_.order() != m) {
        throw OrderMismatch("pair order does not match a matrix of order " + std::to_string(m));
    }
    const RiordanMat expected = build(f_, g_, m);
    if (auto bad = first_mismatch(entries_, expected.entries_)) {
        throw NotRiordan(bad->first, bad->second,
                         "entries disagree with the stored pair at " + entry_name(bad->first, bad->second));
    }
}

RiordanMat build(const TruncSeries& f, const TruncSeries& g, std::size_t m) {
    require_pair(f, g, m);
    TruncSeries ft = truncate(f, m);
    TruncSeries gt = truncate(g, m);
    LowerTriangular e(f.ctx(), m + 1);
    TruncSeries column = ft;
    for (std::size_t j = 0; j <= m; ++j) {
        for (std::size_t i = j; i <= m; ++i) {
            e.set(i, j, column[i]);
        }
        if (j < m) {
            column = mul(column, gt);
        }
    }
    return RiordanMat(RiordanMat::Trusted{}, std::move(e), std::move(ft), std::move(gt));
}

RiordanMat mat_mul(const RiordanMat& a, const RiordanMat& b) {
    if (a.order() != b.order()) {
        throw OrderMismatch("Riordan product of orders " + std::to_string(a.order()) + " and " +
                            std::to_string(b.order()));
    }
    LowerTriangular product = a.entries() * b.entries();
    // a = R(d, h), b = R(f, g)  =>  a b = R(d (f o h), g o h).
    TruncSeries f = mul(a.f(), compose(b.f(), a.g()));
    TruncSeries g = compose(b.g(), a.g());
    RiordanMat law = build(f, g, a.order());
    if (auto bad = first_mismatch(product, law.entries())) {
        throw InternalInconsistency("matrix product and Operation Law disagree at " +
                                    entry_name(bad->first, bad->second));
    }
    return law;
}

std::vector<RingElem> apply_vector(const RiordanMat& a, std::span<const RingElem> v) { return a.entries() * v; }

RiordanPair extract(const LowerTriangular& mat) {
    const std::size_t n = mat.dim();
    if (n == 0) {
        throw NotRiordan(0, 0, "empty matrix");
    }
    const RingCtx& ctx = mat.ctx();
    for (std::size_t i = 0; i < n; ++i) {
        if (!mat(i, i).is_one()) {
            throw NotRiordan(i, i, "diagonal entry " + entry_name(i, i) + " is not 1");
        }
    }
    const std::size_t m = n - 1;
    std::vector<RingElem> col0;
    std::vector<RingElem> col1;
    for (std::size_t i = 0; i <= m; ++i) {
        col0.push_back(mat(i, 0));
        col1.push_back(m >= 1 ? mat(i, 1) : ctx.zero());
    }
    TruncSeries f(ctx, std::move(col0));
    // Column 1 is f g, and f is a unit because f_0 = 1.
    TruncSeries g = m >= 1 ? mul(TruncSeries(ctx, std::move(col1)), recip(f)) : TruncSeries::zero(ctx, 0);
    RiordanMat rebuilt = build(f, g, m);
    if (auto bad = first_mismatch(mat, rebuilt.entries())) {
        throw NotRiordan(bad->first, bad->second, "not a Riordan matrix: entry " +
                                                      entry_name(bad->first, bad->second) +
                                                      " is not reproduced by the extracted pair");
    }
    return {std::move(f), std::move(g)};
}

RiordanMat delete_row_col(const RiordanMat& a) {
    if (a.order() == 0) {
        throw OrderMismatch("delete_row_col needs order >= 1");
    }
    const std::size_t m = a.order() - 1;
    TruncSeries f = mul(truncate(a.f(), m), shift_down(a.g()));
    TruncSeries g = truncate(a.g(), m);
    return RiordanMat(trailing_block(a.entries(), 1), std::move(f), std::move(g));
}

} // namespace iterroot
