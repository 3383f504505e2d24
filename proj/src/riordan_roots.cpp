#include <iterroot/riordan_roots.hpp>

#include <string>

namespace iterroot {

namespace {

void require_pair(const TruncSeries& f, const TruncSeries& g) {
    if (!(f.ctx() == g.ctx())) {
        throw ContextMismatch("pair over " + f.ctx().name() + " and " + g.ctx().name());
    }
    if (f.order() != g.order()) {
        throw OrderMismatch("f and g must share a truncation order");
    }
    if (!f[0].is_one()) {
        throw NotRiordanPair("f_0 must be 1, got " + f[0].to_string());
    }
    if (!g.in_substitution_group()) {
        throw NotInSubstitutionGroup("g must satisfy g_0 = 0 and g_1 = 1");
    }
}

// f_k - [x^k] prod_j alpha o omega^[j], read at truncation k.
RingElem alpha_rhs(const TruncSeries& f, const std::vector<TruncSeries>& iterates, const TruncSeries& alpha,
                   std::size_t k) {
    const TruncSeries a = truncate(alpha, k);
    TruncSeries product = TruncSeries::one(f.ctx(), k);
    for (const auto& w : iterates) {
        product = mul(product, compose(a, truncate(w, k)));
    }
    return f[k] - product[k];
}

SearchResult solve_alpha(const TruncSeries& f, const TruncSeries& omega, unsigned long n, const SearchOptions& opts) {
    std::vector<TruncSeries> iterates;
    iterates.reserve(n);
    TruncSeries w = TruncSeries::identity(f.ctx(), f.order());
    for (unsigned long j = 0; j < n; ++j) {
        iterates.push_back(w);
        w = compose(w, omega);
    }
    RhsFn rhs = [&](const TruncSeries& alpha, std::size_t k) { return alpha_rhs(f, iterates, alpha, k); };
    return solve_triangular(TruncSeries::one(f.ctx(), f.order()), 1, n, rhs, opts);
}

void verify_pair(const TruncSeries& alpha, const TruncSeries& omega, const TruncSeries& f, const TruncSeries& g,
                 unsigned long n) {
    const RiordanPair power = riordan_power(alpha, omega, n);
    const std::size_t m = f.order();
    if (first_mismatch(build(power.f, power.g, m).entries(), build(f, g, m).entries())) {
        throw InternalInconsistency("computed Riordan root does not power back to R(f, g)");
    }
}

} // namespace

RiordanRootResult riordan_root(const TruncSeries& f, const TruncSeries& g, unsigned long n, const SearchOptions& opts) {
    require_pair(f, g);
    RootResult stage1 = iter_root(g, n, opts);
    if (auto* none = std::get_if<RootNoSolution>(&stage1)) {
        return RRootNoSolution{RootStage::Omega, none->index, none->rhs};
    }

    std::vector<TruncSeries> omegas;
    bool complete = true;
    bool branched = false;
    if (auto* u = std::get_if<RootUnique>(&stage1)) {
        omegas.push_back(u->omega);
    } else {
        auto& b = std::get<RootBranches>(stage1);
        omegas = std::move(b.roots);
        complete = b.complete;
        branched = true;
    }

    std::vector<RiordanPair> found;
    std::optional<Obstruction> obstruction;
    for (const auto& omega : omegas) {
        SearchResult alphas = solve_alpha(f, omega, n, opts);
        branched = branched || alphas.branched;
        complete = complete && alphas.complete;
        if (alphas.obstruction && (!obstruction || alphas.obstruction->index < obstruction->index)) {
            obstruction = alphas.obstruction;
        }
        for (auto& alpha : alphas.solutions) {
            verify_pair(alpha, omega, f, g, n);
            if (found.size() >= opts.cap) {
                complete = false;
                break;
            }
            found.push_back({std::move(alpha), omega});
        }
        if (found.size() >= opts.cap && !complete) {
            break;
        }
    }

    if (!branched && found.size() == 1) {
        return RRootUnique{std::move(found.front().f), std::move(found.front().g)};
    }
    if (found.empty() && complete && obstruction) {
        return RRootNoSolution{RootStage::Alpha, obstruction->index, obstruction->rhs};
    }
    return RRootBranches{std::move(found), complete};
}

RiordanPair riordan_power(const TruncSeries& f, const TruncSeries& g, unsigned long n) {
    require_pair(f, g);
    const std::size_t m = f.order();
    const RingCtx& ctx = f.ctx();

    const RiordanMat base = build(f, g, m);
    RiordanMat by_matrix = build(TruncSeries::one(ctx, m), TruncSeries::identity(ctx, m), m);
    for (unsigned long i = 0; i < n; ++i) {
        by_matrix = mat_mul(by_matrix, base);
    }

    TruncSeries product = TruncSeries::one(ctx, m);
    TruncSeries g_iter = TruncSeries::identity(ctx, m);
    for (unsigned long j = 0; j < n; ++j) {
        product = mul(product, compose(f, g_iter));
        g_iter = compose(g_iter, g);
    }

    if (!(by_matrix.f() == product) || !(by_matrix.g() == g_iter)) {
        throw InternalInconsistency("matrix power and series power formula disagree");
    }
    return {std::move(product), std::move(g_iter)};
}

bool stabilizes(const TruncSeries& f, const TruncSeries& g, std::span<const RingElem> v) {
    if (v.empty()) {
        throw OrderMismatch("empty column vector");
    }
    const RiordanMat r = build(f, g, v.size() - 1);
    const auto w = apply_vector(r, v);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(w[i] == v[i])) {
            return false;
        }
    }
    return true;
}

TruncSeries stabilizer_cofactor(const TruncSeries& g, std::span<const RingElem> v) {
    if (!g.in_substitution_group()) {
        throw NotInSubstitutionGroup("g must satisfy g_0 = 0 and g_1 = 1");
    }
    if (v.size() != g.order() + 1) {
        throw OrderMismatch("vector length " + std::to_string(v.size()) + " does not match order " +
                            std::to_string(g.order()));
    }
    if (!v[0].is_one()) {
        throw Error("stabilizer cofactor needs v_0 = 1");
    }
    const TruncSeries h(g.ctx(), std::vector<RingElem>(v.begin(), v.end()));
    return mul(h, recip(compose(h, g)));
}

} // namespace iterroot
