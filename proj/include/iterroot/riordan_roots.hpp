#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <iterroot/riordan.hpp>
#include <iterroot/subst_roots.hpp>

namespace iterroot {

enum class RootStage {
    Omega, // solving omega^[n] = g
    Alpha, // solving alpha (alpha o omega) ... (alpha o omega^[n-1]) = f
};

struct RRootUnique {
    TruncSeries alpha;
    TruncSeries omega;
};

struct RRootNoSolution {
    RootStage stage;
    std::size_t index;
    RingElem rhs;
};

struct RRootBranches {
    std::vector<RiordanPair> roots;
    bool complete = true;
};

/// Outcome of solving R(alpha, omega)^n = R(f, g). Every pair reported has
/// been checked by raising its matrix to the n-th power.
using RiordanRootResult = std::variant<RRootUnique, RRootNoSolution, RRootBranches>;

/// omega comes from iter_root(g, n). alpha_0 = 1 and each later alpha_k enters
/// the degree-k coefficient of the product with multiplier n, so it is
/// recovered with solve_scalar after evaluating the product with alpha_k = 0.
RiordanRootResult riordan_root(const TruncSeries& f, const TruncSeries& g, unsigned long n,
                               const SearchOptions& opts = {});

/// Pair of R(f, g)^n, computed by repeated matrix products and by the series
/// formula (prod_{j<n} f o g^[j], g^[n]); the two must agree.
RiordanPair riordan_power(const TruncSeries& f, const TruncSeries& g, unsigned long n);

/// R(f, g) v == v at order v.size() - 1.
bool stabilizes(const TruncSeries& f, const TruncSeries& g, std::span<const RingElem> v);

/// The unique d with d_0 = 1 such that R(d, g) fixes v, namely
/// d = H / (H o g) where H has coefficients v. Requires v_0 = 1.
TruncSeries stabilizer_cofactor(const TruncSeries& g, std::span<const RingElem> v);

} // namespace iterroot
