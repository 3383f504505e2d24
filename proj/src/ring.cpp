#include <iterroot/ring.hpp>

#include <algorithm>
#include <cctype>

namespace iterroot {

namespace {

bool is_decimal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

mpz_class parse_integer(std::string_view s) {
    if (!is_decimal(s)) {
        throw ParseError("not an integer: '" + std::string(s) + "'");
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    return mpz_class(std::string(s), 10);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

// ---------------------------------------------------------------- RingCtx

RingCtx RingCtx::integers() { return RingCtx(RingKind::Integers, nullptr); }

RingCtx RingCtx::rationals() { return RingCtx(RingKind::Rationals, nullptr); }

RingCtx RingCtx::integers_mod(const mpz_class& m) {
    if (m < 2) {
        throw ParseError("modulus must be at least 2, got " + m.get_str());
    }
    return RingCtx(RingKind::IntegersMod, std::make_shared<const mpz_class>(m));
}

RingCtx RingCtx::parse(std::string_view spec) {
    spec = trim(spec);
    if (spec == "Z") {
        return integers();
    }
    if (spec == "Q") {
        return rationals();
    }
    constexpr std::string_view prefix = "Zmod:";
    if (spec.substr(0, prefix.size()) == prefix) {
        auto digits = spec.substr(prefix.size());
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                           [](unsigned char c) { return std::isdigit(c); })) {
            throw ParseError("bad modulus in ring spec '" + std::string(spec) + "'");
        }
        return integers_mod(mpz_class(std::string(digits), 10));
    }
    throw ParseError("unknown ring '" + std::string(spec) + "' (expected Z, Q or Zmod:<m>)");
}

const mpz_class& RingCtx::modulus() const {
    if (kind_ != RingKind::IntegersMod) {
        throw Error("modulus() called on a ring of characteristic 0");
    }
    return *modulus_;
}

std::string RingCtx::name() const {
    switch (kind_) {
    case RingKind::Integers:
        return "Z";
    case RingKind::Rationals:
        return "Q";
    case RingKind::IntegersMod:
        return "Zmod:" + modulus_->get_str();
    }
    return {};
}

RingElem RingCtx::zero() const { return RingElem(*this, mpq_class(0)); }

RingElem RingCtx::one() const { return RingElem(*this, mpq_class(1)); }

RingElem RingCtx::from_int(long v) const { return RingElem(*this, mpq_class(v)); }

RingElem RingCtx::from_integer(const mpz_class& v) const { return RingElem(*this, mpq_class(v)); }

RingElem RingCtx::from_rational(const mpq_class& v) const {
    mpq_class q = v;
    q.canonicalize();
    switch (kind_) {
    case RingKind::Rationals:
        return RingElem(*this, q);
    case RingKind::Integers:
        if (q.get_den() != 1) {
            throw NotAUnit("fraction " + q.get_str() + " is not an integer");
        }
        return RingElem(*this, q);
    case RingKind::IntegersMod: {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), modulus_->get_mpz_t()) == 0) {
            throw NotAUnit("denominator of " + q.get_str() + " is not invertible mod " + modulus_->get_str());
        }
        return RingElem(*this, mpq_class(mpz_class(q.get_num() * inv)));
    }
    }
    throw Error("unreachable ring kind");
}

RingElem RingCtx::parse_elem(std::string_view text) const {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return from_integer(parse_integer(text));
    }
    mpz_class num = parse_integer(trim(text.substr(0, slash)));
    auto den_text = trim(text.substr(slash + 1));
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
        throw ParseError("denominator must be unsigned: '" + std::string(text) + "'");
    }
    mpz_class den = parse_integer(den_text);
    if (den == 0) {
        throw ParseError("zero denominator: '" + std::string(text) + "'");
    }
    return from_rational(mpq_class(num, den));
}

std::vector<RingElem> RingCtx::elements(std::size_t bound) const {
    if (!is_finite()) {
        throw BranchingUnsupported("cannot enumerate an infinite ring");
    }
    if (*modulus_ > bound) {
        throw BoundExceeded("ring Zmod:" + modulus_->get_str() + " exceeds enumeration bound " +
                            std::to_string(bound));
    }
    std::vector<RingElem> out;
    const auto m = modulus_->get_ui();
    out.reserve(m);
    for (unsigned long r = 0; r < m; ++r) {
        out.push_back(from_integer(mpz_class(r)));
    }
    return out;
}

bool operator==(const RingCtx& a, const RingCtx& b) {
    if (a.kind_ != b.kind_) {
        return false;
    }
    if (a.kind_ != RingKind::IntegersMod || a.modulus_ == b.modulus_) {
        return true;
    }
    return *a.modulus_ == *b.modulus_;
}

mpz_class characteristic(const RingCtx& ctx) {
    return ctx.kind() == RingKind::IntegersMod ? ctx.modulus() : mpz_class(0);
}

// ---------------------------------------------------------------- RingElem

RingElem::RingElem(RingCtx ctx, mpq_class value) : ctx_(std::move(ctx)), value_(std::move(value)) {
    value_.canonicalize();
    if (ctx_.kind() != RingKind::Rationals && value_.get_den() != 1) {
        throw Error("non-integral value in ring " + ctx_.name());
    }
    reduce();
}

void RingElem::reduce() {
    if (ctx_.kind() == RingKind::IntegersMod) {
        mpz_fdiv_r(value_.get_num_mpz_t(), value_.get_num_mpz_t(), ctx_.modulus().get_mpz_t());
    }
}

void RingElem::require_same(const RingElem& other) const {
    if (!(ctx_ == other.ctx_)) {
        throw ContextMismatch("cannot combine elements of " + ctx_.name() + " and " + other.ctx_.name());
    }
}

bool RingElem::is_unit() const {
    switch (ctx_.kind()) {
    case RingKind::Rationals:
        return !is_zero();
    case RingKind::Integers:
        return value_ == 1 || value_ == -1;
    case RingKind::IntegersMod: {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), value_.get_num_mpz_t(), ctx_.modulus().get_mpz_t());
        return g == 1;
    }
    }
    return false;
}

RingElem RingElem::inverse() const {
    if (!is_unit()) {
        throw NotAUnit(to_string() + " is not a unit of " + ctx_.name());
    }
    switch (ctx_.kind()) {
    case RingKind::Rationals:
        return RingElem(ctx_, mpq_class(1) / value_);
    case RingKind::Integers:
        return *this;
    case RingKind::IntegersMod: {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), value_.get_num_mpz_t(), ctx_.modulus().get_mpz_t());
        return RingElem(ctx_, mpq_class(inv));
    }
    }
    throw Error("unreachable ring kind");
}

std::string RingElem::to_string() const {
    return ctx_.kind() == RingKind::Rationals ? value_.get_str() : value_.get_num().get_str();
}

RingElem RingElem::operator-() const {
    RingElem r = *this;
    r.value_ = -r.value_;
    r.reduce();
    return r;
}

RingElem& RingElem::operator+=(const RingElem& rhs) {
    require_same(rhs);
    if (ctx_.kind() == RingKind::Rationals) {
        value_ += rhs.value_;
    } else {
        value_.get_num() += rhs.value_.get_num();
        reduce();
    }
    return *this;
}

RingElem& RingElem::operator-=(const RingElem& rhs) {
    require_same(rhs);
    if (ctx_.kind() == RingKind::Rationals) {
        value_ -= rhs.value_;
    } else {
        value_.get_num() -= rhs.value_.get_num();
        reduce();
    }
    return *this;
}

RingElem& RingElem::operator*=(const RingElem& rhs) {
    require_same(rhs);
    if (ctx_.kind() == RingKind::Rationals) {
        value_ *= rhs.value_;
    } else {
        value_.get_num() *= rhs.value_.get_num();
        reduce();
    }
    return *this;
}

RingElem RingElem::scaled(long k) const {
    RingElem r = *this;
    if (ctx_.kind() == RingKind::Rationals) {
        r.value_ *= k;
    } else {
        r.value_.get_num() *= k;
        r.reduce();
    }
    return r;
}

bool operator==(const RingElem& a, const RingElem& b) {
    a.require_same(b);
    return a.value_ == b.value_;
}

RingElem arith(ArithOp op, const RingElem& a, const RingElem& b) {
    switch (op) {
    case ArithOp::Add:
        return a + b;
    case ArithOp::Sub:
        return a - b;
    case ArithOp::Mul:
        return a * b;
    case ArithOp::Neg:
        return -a;
    }
    throw Error("unreachable arithmetic op");
}

// ---------------------------------------------------------------- solve_scalar

SolveOutcome solve_scalar(const RingCtx& ctx, unsigned long n, const RingElem& y, std::size_t enum_bound) {
    if (!(y.ctx() == ctx)) {
        throw ContextMismatch("right-hand side belongs to " + y.ctx().name() + ", expected " + ctx.name());
    }
    if (n == 0) {
        throw Error("solve_scalar requires n >= 1");
    }
    switch (ctx.kind()) {
    case RingKind::Rationals:
        return SolveUnique{ctx.from_rational(y.value() / mpq_class(n))};
    case RingKind::Integers: {
        const mpz_class& v = y.value().get_num();
        if (mpz_divisible_ui_p(v.get_mpz_t(), n) == 0) {
            return SolveNone{};
        }
        mpz_class q;
        mpz_divexact_ui(q.get_mpz_t(), v.get_mpz_t(), n);
        return SolveUnique{ctx.from_integer(q)};
    }
    case RingKind::IntegersMod: {
        const mpz_class& m = ctx.modulus();
        const mpz_class nz(n);
        mpz_class d;
        mpz_gcd(d.get_mpz_t(), nz.get_mpz_t(), m.get_mpz_t());
        const mpz_class& v = y.value().get_num();
        if (mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) == 0) {
            return SolveNone{};
        }
        // n/d is invertible mod m/d; x0 = (y/d)(n/d)^-1 mod m/d, then x0 + t*(m/d).
        const mpz_class step = m / d;
        mpz_class inv;
        const mpz_class nd = nz / d;
        if (step == 1) {
            inv = 0;
        } else {
            mpz_invert(inv.get_mpz_t(), nd.get_mpz_t(), step.get_mpz_t());
        }
        mpz_class x0 = (v / d) * inv;
        mpz_fdiv_r(x0.get_mpz_t(), x0.get_mpz_t(), step.get_mpz_t());
        if (d == 1) {
            return SolveUnique{ctx.from_integer(x0)};
        }
        SolveMany many;
        const bool fits = d <= enum_bound;
        const unsigned long count = fits ? d.get_ui() : enum_bound;
        many.complete = fits;
        many.solutions.reserve(count);
        for (unsigned long t = 0; t < count; ++t) {
            many.solutions.push_back(ctx.from_integer(x0 + step * t));
        }
        return many;
    }
    }
    throw Error("unreachable ring kind");
}

} // namespace iterroot
