#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <iterroot/series.hpp>
#include <iterroot/triangular_search.hpp>

namespace iterroot {

// ---------------------------------------------------------------- results

struct RootUnique {
    TruncSeries omega;
};

/// The smallest index k at which n * omega_k = rhs has no solution.
struct RootNoSolution {
    std::size_t index;
    RingElem rhs;
};

struct RootBranches {
    std::vector<TruncSeries> roots;
    bool complete = true;
};

/// Outcome of solving omega^[n] = g. Every series reported here has been
/// re-verified by composing it n times.
using RootResult = std::variant<RootUnique, RootNoSolution, RootBranches>;

bool same_outcome(const RootResult& a, const RootResult& b);

// ---------------------------------------------------------------- right-hand sides

/// g_k - r_k (M_k^{n-2} + 2 M_k^{n-3} + ... + (n-1) I) c_k, where r_k is row k
/// of R_k(1, omega) restricted to columns 2..k-1, c_k = (omega_2..omega_{k-1})
/// and M_k = R_{k-3}((omega/x)^2, omega) is R_{k-1}(1, omega) with its first
/// two rows and columns removed. Only omega_2..omega_{k-1} are read.
RingElem matrix_formula_rhs(const TruncSeries& g, const TruncSeries& omega, std::size_t k, unsigned long n);

/// g_k - [x^k] (omega with omega_k = 0)^[n].
RingElem substitution_rhs(const TruncSeries& g, const TruncSeries& omega, std::size_t k, unsigned long n);

// ---------------------------------------------------------------- solvers

/// Coefficient recursion driven by matrix_formula_rhs.
RootResult iter_root_matrix(const TruncSeries& g, unsigned long n, const SearchOptions& opts = {});

/// Coefficient recursion driven by substitution_rhs.
RootResult iter_root_substitution(const TruncSeries& g, unsigned long n, const SearchOptions& opts = {});

/// n-th iterative root of g in the substitution group. Runs both recursions
/// and throws InternalInconsistency if they disagree. Over finite rings a
/// non-unique step switches to a depth-first branch search.
RootResult iter_root(const TruncSeries& g, unsigned long n, const SearchOptions& opts = {});

/// All n-th roots of g over a finite ring, up to `cap` of them. Always
/// returns RootBranches (possibly empty).
RootResult branch_roots(const TruncSeries& g, unsigned long n, std::size_t cap = kDefaultBranchCap);

// ---------------------------------------------------------------- integer diagnostics

struct FeasibilityRecord {
    std::size_t index;
    RingElem rhs;
    bool solvable;
    std::optional<RingElem> chosen;
};

struct FeasibilityLedger {
    std::vector<FeasibilityRecord> records; // stops at the first unsolvable index
    bool overall = true;
    // g_k = 0 mod 4 for every 2 <= k <= m: sufficient for a square root.
    bool mod4_sufficient = false;
};

/// Runs the recursion over the integers and records, per index, the
/// right-hand side and whether n divides it.
FeasibilityLedger zroot_feasibility(const TruncSeries& g, unsigned long n = 2);

// ---------------------------------------------------------------- Z/2 classification

inline constexpr std::size_t kDefaultClassifyBound = 16;

struct ClassRow {
    std::vector<int> g;                  // (g_2, ..., g_m)
    std::vector<std::vector<int>> roots; // each (omega_2, ..., omega_m)
};

struct ClassificationTable {
    std::size_t order = 0;
    std::vector<ClassRow> rows; // sorted by g
};

/// Squares every omega in the substitution group over Z/2 truncated at m and
/// groups the candidates by their square.
ClassificationTable mod2_square_root_classes(std::size_t m, std::size_t bound = kDefaultClassifyBound);

} // namespace iterroot
