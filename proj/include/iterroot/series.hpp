#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <iterroot/ring.hpp>

namespace iterroot {

/// A formal power series c_0 + c_1 x + ... + c_m x^m known up to (and
/// including) x^m. The truncation order is part of the value: binary
/// operations require equal orders and equal rings.
class TruncSeries {
  public:
    TruncSeries(RingCtx ctx, std::vector<RingElem> coeffs);

    static TruncSeries zero(const RingCtx& ctx, std::size_t order);
    static TruncSeries one(const RingCtx& ctx, std::size_t order);
    /// The series x, identity of composition.
    static TruncSeries identity(const RingCtx& ctx, std::size_t order);
    static TruncSeries from_ints(const RingCtx& ctx, std::initializer_list<long> coeffs);
    static TruncSeries from_strings(const RingCtx& ctx, std::span<const std::string> coeffs);

    const RingCtx& ctx() const noexcept { return ctx_; }
    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const RingElem> coeffs() const noexcept { return coeffs_; }
    const RingElem& operator[](std::size_t k) const { return coeffs_.at(k); }

    void set(std::size_t k, RingElem value);

    /// g_0 = 0 and g_1 = 1 (the latter vacuous at order 0).
    bool in_substitution_group() const;

    std::vector<std::string> to_strings() const;

    friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  private:
    RingCtx ctx_;
    std::vector<RingElem> coeffs_;
};

/// Keeps x^0..x^m of `a`; m must not exceed a.order().
TruncSeries truncate(const TruncSeries& a, std::size_t m);

/// (a - a_0)/x known to order a.order() - 1.
TruncSeries shift_down(const TruncSeries& a);

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries scale(const TruncSeries& a, const RingElem& c);

TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
inline TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b); }

/// a(b(x)) truncated at the common order; requires b_0 = 0.
TruncSeries compose(const TruncSeries& a, const TruncSeries& b);

/// Multiplicative inverse; requires a unit constant term.
TruncSeries recip(const TruncSeries& a);

/// Compositional inverse of an element of the substitution group.
TruncSeries comp_inverse(const TruncSeries& g);

/// n-fold composition g o ... o g; iterate(g, 0) is x.
TruncSeries iterate(const TruncSeries& g, unsigned long n);

/// Re-expresses every coefficient in another ring (see RingCtx::from_rational).
TruncSeries convert(const TruncSeries& a, const RingCtx& ctx);

/// Smallest k >= 2 with g_k != 0, or infinity when g_2..g_m all vanish.
class Multiplicity {
  public:
    static Multiplicity infinite() { return Multiplicity(); }
    explicit Multiplicity(std::size_t k) : k_(k) {}

    bool is_infinite() const noexcept { return !k_.has_value(); }
    std::size_t value() const;
    std::string to_string() const;

    friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
    friend std::strong_ordering operator<=>(const Multiplicity& a, const Multiplicity& b);

  private:
    Multiplicity() = default;
    std::optional<std::size_t> k_;
};

Multiplicity multiplicity(const TruncSeries& g);

/// x/(1 - r x) = x + r x^2 + r^2 x^3 + ..., the geometric subgroup.
TruncSeries geometric(const RingElem& r, std::size_t m);

enum class Preset { Sin, Tan, Expm1, Geom1, XOver1mx2 };

Preset parse_preset(std::string_view name);
std::string preset_name(Preset p);

/// Exact Taylor coefficients over the rationals.
TruncSeries preset(Preset p, std::size_t m);

} // namespace iterroot
