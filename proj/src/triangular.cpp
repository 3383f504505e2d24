#include <iterroot/triangular.hpp>

#include <string>

namespace iterroot {

LowerTriangular::LowerTriangular(const RingCtx& ctx, std::size_t dim)
    : dim_(dim), zero_(ctx.zero()), data_(dim * (dim + 1) / 2, ctx.zero()) {}

LowerTriangular LowerTriangular::identity(const RingCtx& ctx, std::size_t dim) {
    LowerTriangular m(ctx, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.set(i, i, ctx.one());
    }
    return m;
}

const RingElem& LowerTriangular::operator()(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) {
        throw std::out_of_range("matrix index out of range");
    }
    return j > i ? zero_ : data_[index(i, j)];
}

void LowerTriangular::set(std::size_t i, std::size_t j, RingElem v) {
    if (i >= dim_ || j > i) {
        throw std::out_of_range("set() outside the lower triangle");
    }
    if (!(v.ctx() == ctx())) {
        throw ContextMismatch("entry over " + v.ctx().name() + " in a matrix over " + ctx().name());
    }
    data_[index(i, j)] = std::move(v);
}

std::span<const RingElem> LowerTriangular::row(std::size_t i) const {
    return std::span<const RingElem>(data_).subspan(index(i, 0), i + 1);
}

bool operator==(const LowerTriangular& a, const LowerTriangular& b) {
    return a.dim() == b.dim() && !first_mismatch(a, b).has_value();
}

LowerTriangular operator*(const LowerTriangular& a, const LowerTriangular& b) {
    if (a.dim() != b.dim()) {
        throw OrderMismatch("matrix product of sizes " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    if (!(a.ctx() == b.ctx())) {
        throw ContextMismatch("matrix product over " + a.ctx().name() + " and " + b.ctx().name());
    }
    LowerTriangular c(a.ctx(), a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            RingElem s = a.ctx().zero();
            for (std::size_t k = j; k <= i; ++k) {
                if (!a(i, k).is_zero() && !b(k, j).is_zero()) {
                    s += a(i, k) * b(k, j);
                }
            }
            c.set(i, j, std::move(s));
        }
    }
    return c;
}

std::vector<RingElem> operator*(const LowerTriangular& a, std::span<const RingElem> v) {
    if (v.size() != a.dim()) {
        throw OrderMismatch("vector of length " + std::to_string(v.size()) + " against a matrix of size " +
                            std::to_string(a.dim()));
    }
    std::vector<RingElem> w(a.dim(), a.ctx().zero());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (!a(i, j).is_zero()) {
                w[i] += a(i, j) * v[j];
            }
        }
    }
    return w;
}

LowerTriangular trailing_block(const LowerTriangular& a, std::size_t k) {
    if (k > a.dim()) {
        throw OrderMismatch("cannot drop more rows than the matrix has");
    }
    LowerTriangular b(a.ctx(), a.dim() - k);
    for (std::size_t i = 0; i < b.dim(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            b.set(i, j, a(i + k, j + k));
        }
    }
    return b;
}

std::optional<std::pair<std::size_t, std::size_t>> first_mismatch(const LowerTriangular& a,
                                                                   const LowerTriangular& b) {
    if (a.dim() != b.dim()) {
        throw OrderMismatch("comparing matrices of different sizes");
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (!(a(i, j) == b(i, j))) {
                return std::pair{i, j};
            }
        }
    }
    return std::nullopt;
}

} // namespace iterroot
