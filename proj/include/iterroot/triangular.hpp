#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <iterroot/ring.hpp>

namespace iterroot {

/// Dense square lower-triangular matrix over a ring, stored as the packed
/// lower triangle (row i holds entries (i, 0..i)).
class LowerTriangular {
  public:
    LowerTriangular(const RingCtx& ctx, std::size_t dim);

    static LowerTriangular identity(const RingCtx& ctx, std::size_t dim);

    const RingCtx& ctx() const noexcept { return zero_.ctx(); }
    std::size_t dim() const noexcept { return dim_; }

    /// Zero above the diagonal.
    const RingElem& operator()(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, RingElem v);

    std::span<const RingElem> row(std::size_t i) const;

    friend bool operator==(const LowerTriangular& a, const LowerTriangular& b);

  private:
    static std::size_t index(std::size_t i, std::size_t j) { return i * (i + 1) / 2 + j; }

    std::size_t dim_;
    RingElem zero_;
    std::vector<RingElem> data_;
};

LowerTriangular operator*(const LowerTriangular& a, const LowerTriangular& b);

std::vector<RingElem> operator*(const LowerTriangular& a, std::span<const RingElem> v);

/// Drops the first `k` rows and columns.
LowerTriangular trailing_block(const LowerTriangular& a, std::size_t k);

/// First differing entry in row-major order, if any.
std::optional<std::pair<std::size_t, std::size_t>> first_mismatch(const LowerTriangular& a,
                                                                   const LowerTriangular& b);

} // namespace iterroot
