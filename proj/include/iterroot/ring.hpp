#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include <iterroot/errors.hpp>

namespace iterroot {

enum class RingKind { Integers, Rationals, IntegersMod };

class RingElem;

// Default cap on the number of solutions materialised by solve_scalar over
// IntegersMod(m), and on full residue enumeration.
inline constexpr std::size_t kDefaultEnumBound = std::size_t{1} << 16;

/// A commutative ring with unity: the integers, the rationals, or the
/// integers modulo some m >= 2. Cheap to copy; two contexts compare equal iff
/// they denote the same ring.
class RingCtx {
  public:
    static RingCtx integers();
    static RingCtx rationals();
    static RingCtx integers_mod(const mpz_class& m);

    /// Parses "Z", "Q" or "Zmod:<m>".
    static RingCtx parse(std::string_view spec);

    RingKind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == RingKind::IntegersMod; }

    /// Only valid for IntegersMod.
    const mpz_class& modulus() const;

    /// The selection string accepted by parse().
    std::string name() const;

    RingElem zero() const;
    RingElem one() const;
    RingElem from_int(long v) const;
    RingElem from_integer(const mpz_class& v) const;

    /// Image of an exact fraction. Fails with NotAUnit when the fraction has
    /// no image (non-integral over Z, denominator not invertible mod m).
    RingElem from_rational(const mpq_class& v) const;

    /// Parses "a" or "p/q" (decimal, optional sign).
    RingElem parse_elem(std::string_view text) const;

    /// Every residue 0..m-1 of a finite ring.
    std::vector<RingElem> elements(std::size_t bound = kDefaultEnumBound) const;

    friend bool operator==(const RingCtx& a, const RingCtx& b);

  private:
    RingCtx(RingKind kind, std::shared_ptr<const mpz_class> modulus)
        : kind_(kind), modulus_(std::move(modulus)) {}

    RingKind kind_;
    std::shared_ptr<const mpz_class> modulus_;
};

/// 0 for Integers and Rationals, m for IntegersMod(m).
mpz_class characteristic(const RingCtx& ctx);

/// An exact element of a RingCtx. Rationals are kept in lowest terms with a
/// positive denominator, integers have denominator 1, residues lie in
/// [0, m-1]. Combining elements of different rings throws ContextMismatch.
class RingElem {
  public:
    const RingCtx& ctx() const noexcept { return ctx_; }
    const mpq_class& value() const noexcept { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_unit() const;
    RingElem inverse() const;

    std::string to_string() const;

    RingElem operator-() const;
    RingElem& operator+=(const RingElem& rhs);
    RingElem& operator-=(const RingElem& rhs);
    RingElem& operator*=(const RingElem& rhs);

    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
    friend RingElem operator*(RingElem a, const RingElem& b) { return a *= b; }
    friend bool operator==(const RingElem& a, const RingElem& b);

    /// Multiplication by an ordinary integer, i.e. repeated addition.
    RingElem scaled(long k) const;

  private:
    friend class RingCtx;
    RingElem(RingCtx ctx, mpq_class value);

    void reduce();
    void require_same(const RingElem& other) const;

    RingCtx ctx_;
    mpq_class value_;
};

enum class ArithOp { Add, Sub, Mul, Neg };

/// Exact ring arithmetic; `b` is ignored for Neg.
RingElem arith(ArithOp op, const RingElem& a, const RingElem& b);

struct SolveUnique {
    RingElem x;
};

struct SolveNone {};

struct SolveMany {
    std::vector<RingElem> solutions; // ascending residues
    bool complete = true;
};

/// Solution set of n*x = y.
using SolveOutcome = std::variant<SolveUnique, SolveNone, SolveMany>;

/// Solves n*x = y exactly. Over Q the answer is always y/n; over Z it exists
/// iff n | y; over Z/m it is governed by d = gcd(n, m): unique if d = 1,
/// otherwise d solutions or none depending on whether d | y. At most
/// `enum_bound` solutions are listed, with `complete` cleared beyond that.
SolveOutcome solve_scalar(const RingCtx& ctx, unsigned long n, const RingElem& y,
                          std::size_t enum_bound = kDefaultEnumBound);

} // namespace iterroot
