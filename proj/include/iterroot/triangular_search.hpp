#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <iterroot/series.hpp>

namespace iterroot {

inline constexpr std::size_t kDefaultBranchCap = 4096;

struct SearchOptions {
    // Explore every solution of a non-unique scalar step; otherwise only the
    // smallest one is followed.
    bool branching = true;
    // Maximum number of complete solutions collected.
    std::size_t cap = kDefaultBranchCap;
    std::size_t enum_bound = kDefaultEnumBound;
};

/// n * u_k = rhs had no solution in the ring.
struct Obstruction {
    std::size_t index;
    RingElem rhs;
};

struct SearchResult {
    std::vector<TruncSeries> solutions; // depth-first, ascending choices
    bool branched = false;              // some step had several solutions
    bool complete = true;               // every branch was explored
    std::optional<Obstruction> obstruction; // smallest obstructed index seen
};

/// Right-hand side of step k given the current unknowns, where the entry
/// at index k is still zero and later entries are unset (zero).
using RhsFn = std::function<RingElem(const TruncSeries& unknowns, std::size_t k)>;

/// Solves a triangular system with pivot n at every step: for
/// k = first..order, n * u_k = rhs(u, k), with rhs depending only on
/// u_0..u_{k-1}. Non-unique steps fork the search in ascending order.
SearchResult solve_triangular(TruncSeries start, std::size_t first, unsigned long n, const RhsFn& rhs,
                              const SearchOptions& opts);

} // namespace iterroot
