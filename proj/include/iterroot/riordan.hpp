#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <iterroot/series.hpp>
#include <iterroot/triangular.hpp>

namespace iterroot {

/// Generating pair (f, g) of a unit-diagonal Riordan matrix: f_0 = 1,
/// g_0 = 0, g_1 = 1.
struct RiordanPair {
    TruncSeries f;
    TruncSeries g;
};

/// The (m+1)x(m+1) principal block R_m(f, g): column j has generating
/// polynomial f * g^j. Entries and pair are kept together and are
/// consistent by construction.
class RiordanMat {
  public:
    /// Checks that `entries` is exactly R_m(f, g); throws NotRiordan at the
    /// first disagreeing entry.
    RiordanMat(LowerTriangular entries, TruncSeries f, TruncSeries g);

    const LowerTriangular& entries() const noexcept { return entries_; }
    const TruncSeries& f() const noexcept { return f_; }
    const TruncSeries& g() const noexcept { return g_; }
    std::size_t order() const noexcept { return entries_.dim() - 1; }
    const RingCtx& ctx() const noexcept { return entries_.ctx(); }

    RiordanPair pair() const { return {f_, g_}; }

    friend bool operator==(const RiordanMat& a, const RiordanMat& b) { return a.entries_ == b.entries_; }

  private:
    struct Trusted {};
    RiordanMat(Trusted, LowerTriangular entries, TruncSeries f, TruncSeries g);

    friend RiordanMat build(const TruncSeries& f, const TruncSeries& g, std::size_t m);

    LowerTriangular entries_;
    TruncSeries f_;
    TruncSeries g_;
};

/// Entry (i, j) is [x^i] f g^j. f and g must be known to order >= m.
RiordanMat build(const TruncSeries& f, const TruncSeries& g, std::size_t m);
inline RiordanMat build(const RiordanPair& p) { return build(p.f, p.g, p.f.order()); }

/// Matrix product, cross-checked against R(d,h) R(f,g) = R(d (f o h), g o h).
RiordanMat mat_mul(const RiordanMat& a, const RiordanMat& b);

/// A v; equals the coefficients of f (H o g) when v holds those of H.
std::vector<RingElem> apply_vector(const RiordanMat& a, std::span<const RingElem> v);

/// Recovers (f, g) from a unit-diagonal lower-triangular matrix, or throws
/// NotRiordan naming the first entry the rebuilt matrix disagrees with.
RiordanPair extract(const LowerTriangular& m);

/// Removes row 0 and column 0; the result is R_{m-1}(f g/x, g).
RiordanMat delete_row_col(const RiordanMat& a);

} // namespace iterroot
