#include <iterroot/series.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>

namespace iterroot {

namespace {

void require_compatible(const TruncSeries& a, const TruncSeries& b, const char* op) {
    if (!(a.ctx() == b.ctx())) {
        throw ContextMismatch(std::string(op) + ": series over " + a.ctx().name() + " and " + b.ctx().name());
    }
    if (a.order() != b.order()) {
        throw OrderMismatch(std::string(op) + ": orders " + std::to_string(a.order()) + " and " +
                            std::to_string(b.order()));
    }
}

std::vector<RingElem> zeros(const RingCtx& ctx, std::size_t order) {
    return std::vector<RingElem>(order + 1, ctx.zero());
}

mpz_class factorial(unsigned long k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
}

} // namespace

// ---------------------------------------------------------------- TruncSeries

TruncSeries::TruncSeries(RingCtx ctx, std::vector<RingElem> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw Error("a truncated series needs at least the constant coefficient");
    }
    for (const auto& c : coeffs_) {
        if (!(c.ctx() == ctx_)) {
            throw ContextMismatch("coefficient over " + c.ctx().name() + " in a series over " + ctx_.name());
        }
    }
}

TruncSeries TruncSeries::zero(const RingCtx& ctx, std::size_t order) { return TruncSeries(ctx, zeros(ctx, order)); }

TruncSeries TruncSeries::one(const RingCtx& ctx, std::size_t order) {
    auto c = zeros(ctx, order);
    c[0] = ctx.one();
    return TruncSeries(ctx, std::move(c));
}

TruncSeries TruncSeries::identity(const RingCtx& ctx, std::size_t order) {
    auto c = zeros(ctx, order);
    if (order >= 1) {
        c[1] = ctx.one();
    }
    return TruncSeries(ctx, std::move(c));
}

TruncSeries TruncSeries::from_ints(const RingCtx& ctx, std::initializer_list<long> coeffs) {
    std::vector<RingElem> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) {
        c.push_back(ctx.from_int(v));
    }
    return TruncSeries(ctx, std::move(c));
}

TruncSeries TruncSeries::from_strings(const RingCtx& ctx, std::span<const std::string> coeffs) {
    std::vector<RingElem> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) {
        c.push_back(ctx.parse_elem(s));
    }
    return TruncSeries(ctx, std::move(c));
}

void TruncSeries::set(std::size_t k, RingElem value) {
    if (!(value.ctx() == ctx_)) {
        throw ContextMismatch("coefficient over " + value.ctx().name() + " in a series over " + ctx_.name());
    }
    coeffs_.at(k) = std::move(value);
}

bool TruncSeries::in_substitution_group() const {
    return coeffs_[0].is_zero() && (order() == 0 || coeffs_[1].is_one());
}

std::vector<std::string> TruncSeries::to_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(c.to_string());
    }
    return out;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
    require_compatible(a, b, "equality");
    return std::equal(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin());
}

// ---------------------------------------------------------------- arithmetic

TruncSeries truncate(const TruncSeries& a, std::size_t m) {
    if (m > a.order()) {
        throw OrderMismatch("cannot truncate a series of order " + std::to_string(a.order()) + " to order " +
                            std::to_string(m));
    }
    auto c = a.coeffs();
    return TruncSeries(a.ctx(), std::vector<RingElem>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(m) + 1));
}

TruncSeries shift_down(const TruncSeries& a) {
    if (a.order() == 0) {
        throw OrderMismatch("shift_down of an order-0 series");
    }
    auto c = a.coeffs();
    return TruncSeries(a.ctx(), std::vector<RingElem>(c.begin() + 1, c.end()));
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    require_compatible(a, b, "add");
    std::vector<RingElem> c(a.coeffs().begin(), a.coeffs().end());
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] += b[k];
    }
    return TruncSeries(a.ctx(), std::move(c));
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    require_compatible(a, b, "sub");
    std::vector<RingElem> c(a.coeffs().begin(), a.coeffs().end());
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] -= b[k];
    }
    return TruncSeries(a.ctx(), std::move(c));
}

TruncSeries scale(const TruncSeries& a, const RingElem& s) {
    std::vector<RingElem> c(a.coeffs().begin(), a.coeffs().end());
    for (auto& v : c) {
        v *= s;
    }
    return TruncSeries(a.ctx(), std::move(c));
}

namespace {

// Residue rings whose products fit a machine word skip GMP entirely.
std::optional<std::uint64_t> word_modulus(const RingCtx& ctx) {
    if (!ctx.is_finite() || ctx.modulus() > mpz_class(1UL << 31)) {
        return std::nullopt;
    }
    return ctx.modulus().get_ui();
}

std::vector<std::uint64_t> residues(const TruncSeries& s) {
    std::vector<std::uint64_t> v;
    v.reserve(s.order() + 1);
    for (const auto& c : s.coeffs()) {
        v.push_back(c.value().get_num().get_ui());
    }
    return v;
}

TruncSeries from_residues(const RingCtx& ctx, const std::vector<std::uint64_t>& v) {
    std::vector<RingElem> out;
    out.reserve(v.size());
    for (auto x : v) {
        out.push_back(ctx.from_int(static_cast<long>(x)));
    }
    return TruncSeries(ctx, std::move(out));
}

} // namespace

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
    require_compatible(a, b, "mul");
    const std::size_t m = a.order();
    const RingCtx& ctx = a.ctx();
    if (auto mod = word_modulus(ctx)) {
        const auto x = residues(a), y = residues(b);
        std::vector<std::uint64_t> z(m + 1, 0);
        for (std::size_t i = 0; i <= m; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; i + j <= m; ++j) {
                z[i + j] = (z[i + j] + x[i] * y[j]) % *mod;
            }
        }
        return from_residues(ctx, z);
    }
    std::vector<RingElem> c;
    c.reserve(m + 1);
    // Each coefficient is accumulated in a raw GMP value and reduced once.
    if (ctx.kind() == RingKind::Rationals) {
        mpq_class acc, t;
        for (std::size_t k = 0; k <= m; ++k) {
            acc = 0;
            for (std::size_t i = 0; i <= k; ++i) {
                const mpq_class& x = a[i].value();
                const mpq_class& y = b[k - i].value();
                if (sgn(x) != 0 && sgn(y) != 0) {
                    mpq_mul(t.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
                    acc += t;
                }
            }
            c.push_back(ctx.from_rational(acc));
        }
    } else {
        mpz_class acc;
        for (std::size_t k = 0; k <= m; ++k) {
            acc = 0;
            for (std::size_t i = 0; i <= k; ++i) {
                mpz_addmul(acc.get_mpz_t(), a[i].value().get_num_mpz_t(), b[k - i].value().get_num_mpz_t());
            }
            c.push_back(ctx.from_integer(acc));
        }
    }
    return TruncSeries(ctx, std::move(c));
}

namespace {

// Horner on raw GMP values: a_0 + b(a_1 + b(a_2 + ...)). After folding in
// a_k the partial result is multiplied by b^k (b_0 = 0), so only its first
// m-k+1 coefficients matter.
template <class V, class Reduce>
std::vector<V> horner(const std::vector<V>& a, const std::vector<V>& b, Reduce reduce) {
    const std::size_t m = a.size() - 1;
    std::vector<V> r(m + 1), t(m + 1);
    V prod;
    r[0] = a[m];
    for (std::size_t k = m; k-- > 0;) {
        const std::size_t limit = m - k;
        for (std::size_t d = 0; d <= limit; ++d) {
            t[d] = 0;
            for (std::size_t i = 0; i < d; ++i) {
                if (sgn(r[i]) != 0 && sgn(b[d - i]) != 0) {
                    prod = r[i] * b[d - i];
                    t[d] += prod;
                }
            }
        }
        t[0] += a[k];
        for (std::size_t d = 0; d <= limit; ++d) {
            reduce(t[d]);
        }
        std::swap(r, t);
    }
    return r;
}

std::vector<std::uint64_t> horner_words(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                        std::uint64_t mod) {
    const std::size_t m = a.size() - 1;
    std::vector<std::uint64_t> r(m + 1, 0), t(m + 1);
    r[0] = a[m];
    for (std::size_t k = m; k-- > 0;) {
        const std::size_t limit = m - k;
        for (std::size_t d = 0; d <= limit; ++d) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < d; ++i) {
                acc = (acc + r[i] * b[d - i]) % mod;
            }
            t[d] = acc;
        }
        t[0] = (t[0] + a[k]) % mod;
        std::swap(r, t);
    }
    return r;
}

} // namespace

TruncSeries compose(const TruncSeries& a, const TruncSeries& b) {
    require_compatible(a, b, "compose");
    if (!b[0].is_zero()) {
        throw CompositionDomain("inner series of a composition must have zero constant term");
    }
    const RingCtx& ctx = a.ctx();
    if (auto mod = word_modulus(ctx)) {
        return from_residues(ctx, horner_words(residues(a), residues(b), *mod));
    }
    std::vector<RingElem> out;
    out.reserve(a.order() + 1);
    if (ctx.kind() == RingKind::Rationals) {
        std::vector<mpq_class> av, bv;
        for (std::size_t k = 0; k <= a.order(); ++k) {
            av.push_back(a[k].value());
            bv.push_back(b[k].value());
        }
        for (const auto& v : horner(av, bv, [](mpq_class&) {})) {
            out.push_back(ctx.from_rational(v));
        }
    } else {
        std::vector<mpz_class> av, bv;
        for (std::size_t k = 0; k <= a.order(); ++k) {
            av.push_back(a[k].value().get_num());
            bv.push_back(b[k].value().get_num());
        }
        const bool modular = ctx.is_finite();
        const mpz_class* mod = modular ? &ctx.modulus() : nullptr;
        auto reduce = [&](mpz_class& v) {
            if (modular) {
                mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod->get_mpz_t());
            }
        };
        for (const auto& v : horner(av, bv, reduce)) {
            out.push_back(ctx.from_integer(v));
        }
    }
    return TruncSeries(ctx, std::move(out));
}

TruncSeries recip(const TruncSeries& a) {
    if (!a[0].is_unit()) {
        throw NotAUnit("constant term " + a[0].to_string() + " is not a unit of " + a.ctx().name());
    }
    const std::size_t m = a.order();
    const RingElem inv0 = a[0].inverse();
    auto b = zeros(a.ctx(), m);
    b[0] = inv0;
    for (std::size_t k = 1; k <= m; ++k) {
        RingElem s = a.ctx().zero();
        for (std::size_t i = 1; i <= k; ++i) {
            if (!a[i].is_zero()) {
                s += a[i] * b[k - i];
            }
        }
        b[k] = -(s * inv0);
    }
    return TruncSeries(a.ctx(), std::move(b));
}

TruncSeries comp_inverse(const TruncSeries& g) {
    if (!g.in_substitution_group()) {
        throw NotInSubstitutionGroup("compositional inverse needs g_0 = 0 and g_1 = 1");
    }
    const std::size_t m = g.order();
    TruncSeries h = TruncSeries::identity(g.ctx(), m);
    // [x^k] g(h) = h_k + (terms in h_2..h_{k-1}), so h_k cancels the rest.
    for (std::size_t k = 2; k <= m; ++k) {
        const TruncSeries t = compose(truncate(g, k), truncate(h, k));
        h.set(k, -t[k]);
    }
    return h;
}

TruncSeries iterate(const TruncSeries& g, unsigned long n) {
    if (!g[0].is_zero()) {
        throw CompositionDomain("iterate needs a series with zero constant term");
    }
    TruncSeries r = TruncSeries::identity(g.ctx(), g.order());
    for (unsigned long i = 0; i < n; ++i) {
        r = compose(r, g);
    }
    return r;
}

TruncSeries convert(const TruncSeries& a, const RingCtx& ctx) {
    std::vector<RingElem> c;
    c.reserve(a.order() + 1);
    for (const auto& v : a.coeffs()) {
        c.push_back(ctx.from_rational(v.value()));
    }
    return TruncSeries(ctx, std::move(c));
}

// ---------------------------------------------------------------- multiplicity

std::size_t Multiplicity::value() const {
    if (!k_) {
        throw Error("infinite multiplicity has no finite value");
    }
    return *k_;
}

std::string Multiplicity::to_string() const { return k_ ? std::to_string(*k_) : "inf"; }

std::strong_ordering operator<=>(const Multiplicity& a, const Multiplicity& b) {
    if (a.is_infinite() || b.is_infinite()) {
        return a.is_infinite() == b.is_infinite()
                   ? std::strong_ordering::equal
                   : (a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less);
    }
    return *a.k_ <=> *b.k_;
}

Multiplicity multiplicity(const TruncSeries& g) {
    for (std::size_t k = 2; k <= g.order(); ++k) {
        if (!g[k].is_zero()) {
            return Multiplicity(k);
        }
    }
    return Multiplicity::infinite();
}

// ---------------------------------------------------------------- presets

TruncSeries geometric(const RingElem& r, std::size_t m) {
    const RingCtx& ctx = r.ctx();
    auto c = zeros(ctx, m);
    RingElem p = ctx.one();
    for (std::size_t k = 1; k <= m; ++k) {
        c[k] = p;
        p *= r;
    }
    return TruncSeries(ctx, std::move(c));
}

Preset parse_preset(std::string_view name) {
    if (name == "sin") return Preset::Sin;
    if (name == "tan") return Preset::Tan;
    if (name == "expm1") return Preset::Expm1;
    if (name == "geom1") return Preset::Geom1;
    if (name == "xover1mx2") return Preset::XOver1mx2;
    throw ParseError("unknown preset '" + std::string(name) + "' (sin, tan, expm1, geom1, xover1mx2)");
}

std::string preset_name(Preset p) {
    switch (p) {
    case Preset::Sin:
        return "sin";
    case Preset::Tan:
        return "tan";
    case Preset::Expm1:
        return "expm1";
    case Preset::Geom1:
        return "geom1";
    case Preset::XOver1mx2:
        return "xover1mx2";
    }
    return {};
}

namespace {

// sin when `odd`, cos otherwise.
TruncSeries trig(bool odd, std::size_t m) {
    const RingCtx q = RingCtx::rationals();
    auto c = zeros(q, m);
    for (std::size_t k = odd ? 1 : 0; k <= m; k += 2) {
        const long sign = ((k / 2) % 2 == 0) ? 1 : -1;
        c[k] = q.from_rational(mpq_class(mpz_class(sign), factorial(k)));
    }
    return TruncSeries(q, std::move(c));
}

} // namespace

TruncSeries preset(Preset p, std::size_t m) {
    const RingCtx q = RingCtx::rationals();
    switch (p) {
    case Preset::Sin:
        return trig(true, m);
    case Preset::Tan:
        return mul(trig(true, m), recip(trig(false, m)));
    case Preset::Expm1: {
        auto c = zeros(q, m);
        for (std::size_t k = 1; k <= m; ++k) {
            c[k] = q.from_rational(mpq_class(mpz_class(1), factorial(k)));
        }
        return TruncSeries(q, std::move(c));
    }
    case Preset::Geom1:
        return geometric(q.one(), m);
    case Preset::XOver1mx2: {
        auto c = zeros(q, m);
        for (std::size_t k = 1; k <= m; ++k) {
            c[k] = q.from_int(static_cast<long>(k));
        }
        return TruncSeries(q, std::move(c));
    }
    }
    throw Error("unreachable preset");
}

} // namespace iterroot
