#include <iterroot/subst_roots.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <thread>

#include <iterroot/riordan.hpp>

namespace iterroot {

namespace {

void require_member(const TruncSeries& g) {
    if (!g.in_substitution_group()) {
        throw NotInSubstitutionGroup("expected g_0 = 0 and g_1 = 1");
    }
}

void verify_root(const TruncSeries& omega, const TruncSeries& g, unsigned long n) {
    if (!(iterate(omega, n) == g)) {
        throw InternalInconsistency("computed root does not iterate back to g");
    }
}

RootResult assemble(SearchResult found, const TruncSeries& g, unsigned long n) {
    for (const auto& w : found.solutions) {
        verify_root(w, g, n);
    }
    if (!found.branched && found.solutions.size() == 1) {
        return RootUnique{std::move(found.solutions.front())};
    }
    if (found.solutions.empty() && found.complete && found.obstruction) {
        return RootNoSolution{found.obstruction->index, found.obstruction->rhs};
    }
    return RootBranches{std::move(found.solutions), found.complete};
}

RootResult run(const TruncSeries& g, unsigned long n, const SearchOptions& opts, bool matrix_path) {
    require_member(g);
    if (n == 0) {
        throw Error("root order must be at least 1");
    }
    RhsFn rhs = matrix_path ? RhsFn([&](const TruncSeries& w, std::size_t k) { return matrix_formula_rhs(g, w, k, n); })
                            : RhsFn([&](const TruncSeries& w, std::size_t k) { return substitution_rhs(g, w, k, n); });
    auto found = solve_triangular(TruncSeries::identity(g.ctx(), g.order()), 2, n, rhs, opts);
    return assemble(std::move(found), g, n);
}

} // namespace

bool same_outcome(const RootResult& a, const RootResult& b) {
    if (a.index() != b.index()) {
        return false;
    }
    if (auto* u = std::get_if<RootUnique>(&a)) {
        return u->omega == std::get<RootUnique>(b).omega;
    }
    if (auto* e = std::get_if<RootNoSolution>(&a)) {
        const auto& f = std::get<RootNoSolution>(b);
        return e->index == f.index && e->rhs == f.rhs;
    }
    const auto& x = std::get<RootBranches>(a);
    const auto& y = std::get<RootBranches>(b);
    return x.complete == y.complete && x.roots == y.roots;
}

namespace {

// The same computation on residues modulo a word-sized m. col[j][i] is the
// Lagrange matrix entry (i, j) = [x^i] w^j.
RingElem matrix_formula_rhs_words(const TruncSeries& g, const TruncSeries& omega, std::size_t k, unsigned long n,
                                  std::uint64_t mod) {
    std::vector<std::uint64_t> w(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
        w[i] = omega[i].value().get_num().get_ui();
    }
    std::vector<std::vector<std::uint64_t>> col(k + 1, std::vector<std::uint64_t>(k + 1, 0));
    col[1] = w;
    for (std::size_t j = 2; j <= k; ++j) {
        for (std::size_t a = j - 1; a <= k; ++a) {
            if (col[j - 1][a] == 0) continue;
            for (std::size_t b = 1; a + b <= k; ++b) {
                col[j][a + b] = (col[j][a + b] + col[j - 1][a] * w[b]) % mod;
            }
        }
    }
    const std::size_t dim = k - 2;
    std::vector<std::uint64_t> u(w.begin() + 2, w.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<std::uint64_t> acc(dim, 0), next(dim);
    for (unsigned long i = 0; i + 2 <= n; ++i) {
        const std::uint64_t weight = (n - 1 - i) % mod;
        for (std::size_t t = 0; t < dim; ++t) {
            acc[t] = (acc[t] + u[t] * weight) % mod;
        }
        if (i + 3 <= n) {
            for (std::size_t r = 0; r < dim; ++r) {
                std::uint64_t s = 0;
                for (std::size_t c = 0; c <= r; ++c) {
                    s = (s + col[c + 2][r + 2] * u[c]) % mod;
                }
                next[r] = s;
            }
            std::swap(u, next);
        }
    }
    std::uint64_t sub = 0;
    for (std::size_t t = 0; t < dim; ++t) {
        sub = (sub + col[t + 2][k] * acc[t]) % mod;
    }
    return g[k] - g.ctx().from_int(static_cast<long>(sub));
}

} // namespace

RingElem matrix_formula_rhs(const TruncSeries& g, const TruncSeries& omega, std::size_t k, unsigned long n) {
    const RingCtx& ctx = g.ctx();
    if (k == 2) {
        return g[2];
    }
    if (ctx.is_finite() && ctx.modulus() <= mpz_class(1UL << 31)) {
        return matrix_formula_rhs_words(g, omega, k, n, ctx.modulus().get_ui());
    }
    const TruncSeries w = truncate(omega, k);
    const RiordanMat full = build(TruncSeries::one(ctx, k), w, k);
    const LowerTriangular& e = full.entries();
    // M_k: deleting the first two rows and columns of R(1, w) leaves
    // R((w/x)^2, w), i.e. the entries (i+2, j+2) for i, j < k-2.
    const std::size_t dim = k - 2;

    std::vector<RingElem> u(w.coeffs().begin() + 2, w.coeffs().begin() + static_cast<std::ptrdiff_t>(k)); // c_k
    std::vector<RingElem> acc(dim, ctx.zero());
    std::vector<RingElem> next(dim, ctx.zero());
    for (unsigned long i = 0; i + 2 <= n; ++i) {
        const long weight = static_cast<long>(n - 1 - i);
        for (std::size_t t = 0; t < dim; ++t) {
            acc[t] += u[t].scaled(weight);
        }
        if (i + 3 <= n) {
            for (std::size_t r = 0; r < dim; ++r) {
                RingElem s = ctx.zero();
                for (std::size_t c = 0; c <= r; ++c) {
                    if (!u[c].is_zero() && !e(r + 2, c + 2).is_zero()) {
                        s += e(r + 2, c + 2) * u[c];
                    }
                }
                next[r] = std::move(s);
            }
            std::swap(u, next);
        }
    }
    RingElem rhs = g[k];
    for (std::size_t t = 0; t < dim; ++t) {
        rhs -= e(k, t + 2) * acc[t];
    }
    return rhs;
}

RingElem substitution_rhs(const TruncSeries& g, const TruncSeries& omega, std::size_t k, unsigned long n) {
    TruncSeries w = truncate(omega, k);
    w.set(k, g.ctx().zero());
    return g[k] - iterate(w, n)[k];
}

RootResult iter_root_matrix(const TruncSeries& g, unsigned long n, const SearchOptions& opts) {
    return run(g, n, opts, true);
}

RootResult iter_root_substitution(const TruncSeries& g, unsigned long n, const SearchOptions& opts) {
    return run(g, n, opts, false);
}

RootResult iter_root(const TruncSeries& g, unsigned long n, const SearchOptions& opts) {
    RootResult by_matrix = iter_root_matrix(g, n, opts);
    RootResult by_substitution = iter_root_substitution(g, n, opts);
    if (!same_outcome(by_matrix, by_substitution)) {
        throw InternalInconsistency("matrix-formula and substitution recursions disagree");
    }
    return by_matrix;
}

RootResult branch_roots(const TruncSeries& g, unsigned long n, std::size_t cap) {
    if (!g.ctx().is_finite()) {
        throw BranchingUnsupported("branch enumeration needs a finite ring, got " + g.ctx().name());
    }
    SearchOptions opts;
    opts.cap = cap;
    RootResult r = iter_root(g, n, opts);
    if (auto* u = std::get_if<RootUnique>(&r)) {
        return RootBranches{{std::move(u->omega)}, true};
    }
    if (std::holds_alternative<RootNoSolution>(r)) {
        return RootBranches{{}, true};
    }
    return r;
}

FeasibilityLedger zroot_feasibility(const TruncSeries& g, unsigned long n) {
    if (g.ctx().kind() != RingKind::Integers) {
        throw ContextMismatch("integer feasibility ledger needs a series over Z, got " + g.ctx().name());
    }
    require_member(g);
    FeasibilityLedger ledger;
    ledger.mod4_sufficient = true;
    for (std::size_t k = 2; k <= g.order(); ++k) {
        if (mpz_divisible_ui_p(g[k].value().get_num_mpz_t(), 4) == 0) {
            ledger.mod4_sufficient = false;
        }
    }
    TruncSeries omega = TruncSeries::identity(g.ctx(), g.order());
    for (std::size_t k = 2; k <= g.order(); ++k) {
        RingElem rhs = matrix_formula_rhs(g, omega, k, n);
        SolveOutcome s = solve_scalar(g.ctx(), n, rhs);
        if (auto* one = std::get_if<SolveUnique>(&s)) {
            omega.set(k, one->x);
            ledger.records.push_back({k, std::move(rhs), true, one->x});
        } else {
            ledger.records.push_back({k, std::move(rhs), false, std::nullopt});
            ledger.overall = false;
            break;
        }
    }
    return ledger;
}

ClassificationTable mod2_square_root_classes(std::size_t m, std::size_t bound) {
    if (m < 2) {
        throw Error("classification needs order >= 2");
    }
    if (m > bound) {
        throw BoundExceeded("order " + std::to_string(m) + " exceeds the enumeration bound " + std::to_string(bound));
    }
    const RingCtx z2 = RingCtx::integers_mod(2);
    const std::size_t free = m - 1; // omega_2..omega_m
    const std::uint64_t total = std::uint64_t{1} << free;

    // Candidate bits: bit (free-1-t) holds omega_{t+2}, so ascending masks
    // enumerate candidates in lexicographic order.
    auto bits_of = [&](std::uint64_t mask) {
        std::vector<int> bits(free);
        for (std::size_t t = 0; t < free; ++t) {
            bits[t] = static_cast<int>((mask >> (free - 1 - t)) & 1U);
        }
        return bits;
    };
    auto square = [&](const std::vector<int>& bits) {
        TruncSeries w = TruncSeries::identity(z2, m);
        for (std::size_t t = 0; t < free; ++t) {
            w.set(t + 2, z2.from_int(bits[t]));
        }
        const TruncSeries sq = iterate(w, 2);
        std::vector<int> g(free);
        for (std::size_t t = 0; t < free; ++t) {
            g[t] = static_cast<int>(sq[t + 2].value().get_num().get_si());
        }
        return g;
    };

    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), total / 64 + 1));
    std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>> partial(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t mask = w; mask < total; mask += workers) {
                    auto bits = bits_of(mask);
                    auto g = square(bits);
                    partial[w].emplace_back(std::move(g), std::move(bits));
                }
            });
        }
    }

    std::map<std::vector<int>, std::vector<std::vector<int>>> classes;
    for (auto& chunk : partial) {
        for (auto& [g, root] : chunk) {
            classes[std::move(g)].push_back(std::move(root));
        }
    }
    ClassificationTable table;
    table.order = m;
    for (auto& [g, roots] : classes) {
        std::sort(roots.begin(), roots.end());
        table.rows.push_back({g, std::move(roots)});
    }
    return table;
}

} // namespace iterroot
