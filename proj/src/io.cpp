#include <iterroot/io.hpp>

#include <sstream>

namespace iterroot::io {

namespace {

std::string trimmed(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

RingCtx ring_of(const json& j, const std::optional<RingCtx>& ctx) {
    if (j.contains("ring")) {
        RingCtx r = RingCtx::parse(j.at("ring").get<std::string>());
        if (ctx && !(r == *ctx)) {
            throw ContextMismatch("document is over " + r.name() + ", expected " + ctx->name());
        }
        return r;
    }
    if (!ctx) {
        throw ParseError("missing \"ring\" field");
    }
    return *ctx;
}

void check_order(const json& j, std::size_t len) {
    if (j.contains("order") && j.at("order").get<std::size_t>() + 1 != len) {
        throw ParseError("\"order\" is " + std::to_string(j.at("order").get<std::size_t>()) + " but " +
                         std::to_string(len) + " coefficients were given");
    }
}

std::string digits(const std::vector<int>& v) {
    std::string s;
    for (int d : v) {
        s += static_cast<char>('0' + d);
    }
    return s;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
}

} // namespace

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        auto field = trimmed(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (field.empty()) {
            throw ParseError("empty field in coefficient list '" + std::string(text) + "'");
        }
        out.push_back(std::move(field));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

json coeffs_to_json(std::span<const RingElem> coeffs) {
    json a = json::array();
    for (const auto& c : coeffs) {
        a.push_back(c.to_string());
    }
    return a;
}

std::vector<RingElem> coeffs_from_json(const json& j, const RingCtx& ctx) {
    return guarded([&] {
        if (!j.is_array()) {
            throw ParseError("coefficient list must be a JSON array");
        }
        std::vector<RingElem> out;
        for (const auto& e : j) {
            out.push_back(e.is_string() ? ctx.parse_elem(e.get<std::string>()) : ctx.parse_elem(e.dump()));
        }
        return out;
    });
}

json series_to_json(const TruncSeries& s) {
    return json{{"ring", s.ctx().name()}, {"order", s.order()}, {"coeffs", coeffs_to_json(s.coeffs())}};
}

TruncSeries series_from_json(const json& j, const std::optional<RingCtx>& ctx) {
    return guarded([&] {
        const RingCtx r = ring_of(j, ctx);
        auto c = coeffs_from_json(j.at("coeffs"), r);
        check_order(j, c.size());
        return TruncSeries(r, std::move(c));
    });
}

json matrix_to_json(const LowerTriangular& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        rows.push_back(coeffs_to_json(m.row(i)));
    }
    return json{{"order", m.dim() - 1}, {"ring", m.ctx().name()}, {"rows", rows}};
}

LowerTriangular matrix_from_json(const json& j) {
    return guarded([&] {
        const RingCtx r = RingCtx::parse(j.at("ring").get<std::string>());
        const auto& rows = j.at("rows");
        const std::size_t dim = rows.size();
        if (dim == 0) {
            throw ParseError("matrix has no rows");
        }
        check_order(j, dim);
        LowerTriangular m(r, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            auto row = coeffs_from_json(rows[i], r);
            if (row.size() != i + 1 && row.size() != dim) {
                throw ParseError("row " + std::to_string(i) + " has " + std::to_string(row.size()) + " entries");
            }
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c <= i) {
                    m.set(i, c, row[c]);
                } else if (!row[c].is_zero()) {
                    throw ParseError("nonzero entry above the diagonal at row " + std::to_string(i));
                }
            }
        }
        return m;
    });
}

json pair_to_json(const RiordanPair& p) {
    return json{{"ring", p.f.ctx().name()},
                {"order", p.f.order()},
                {"f", coeffs_to_json(p.f.coeffs())},
                {"g", coeffs_to_json(p.g.coeffs())}};
}

RiordanPair pair_from_json(const json& j, const std::optional<RingCtx>& ctx) {
    return guarded([&] {
        const RingCtx r = ring_of(j, ctx);
        TruncSeries f(r, coeffs_from_json(j.at("f"), r));
        TruncSeries g(r, coeffs_from_json(j.at("g"), r));
        if (f.order() != g.order()) {
            throw ParseError("f and g have different lengths");
        }
        check_order(j, f.order() + 1);
        return RiordanPair{std::move(f), std::move(g)};
    });
}

json root_result_to_json(const RootResult& r) {
    if (auto* u = std::get_if<RootUnique>(&r)) {
        return json{{"status", "unique"}, {"omega", coeffs_to_json(u->omega.coeffs())}};
    }
    if (auto* e = std::get_if<RootNoSolution>(&r)) {
        return json{{"status", "no_solution"}, {"stage", "omega"}, {"index", e->index}, {"rhs", e->rhs.to_string()}};
    }
    const auto& b = std::get<RootBranches>(r);
    json roots = json::array();
    for (const auto& w : b.roots) {
        roots.push_back(coeffs_to_json(w.coeffs()));
    }
    return json{{"status", "branches"}, {"complete", b.complete}, {"count", b.roots.size()}, {"roots", roots}};
}

RootResult root_result_from_json(const json& j, const RingCtx& ctx) {
    return guarded([&]() -> RootResult {
        const auto status = j.at("status").get<std::string>();
        if (status == "unique") {
            return RootUnique{TruncSeries(ctx, coeffs_from_json(j.at("omega"), ctx))};
        }
        if (status == "no_solution") {
            return RootNoSolution{j.at("index").get<std::size_t>(), ctx.parse_elem(j.at("rhs").get<std::string>())};
        }
        if (status == "branches") {
            RootBranches b;
            b.complete = j.at("complete").get<bool>();
            for (const auto& w : j.at("roots")) {
                b.roots.emplace_back(ctx, coeffs_from_json(w, ctx));
            }
            return b;
        }
        throw ParseError("unknown status '" + status + "'");
    });
}

std::string stage_name(RootStage s) { return s == RootStage::Omega ? "omega" : "alpha"; }

json riordan_root_result_to_json(const RiordanRootResult& r) {
    if (auto* u = std::get_if<RRootUnique>(&r)) {
        return json{{"status", "unique"},
                    {"alpha", coeffs_to_json(u->alpha.coeffs())},
                    {"omega", coeffs_to_json(u->omega.coeffs())}};
    }
    if (auto* e = std::get_if<RRootNoSolution>(&r)) {
        return json{{"status", "no_solution"},
                    {"stage", stage_name(e->stage)},
                    {"index", e->index},
                    {"rhs", e->rhs.to_string()}};
    }
    const auto& b = std::get<RRootBranches>(r);
    json roots = json::array();
    for (const auto& p : b.roots) {
        roots.push_back(json{{"alpha", coeffs_to_json(p.f.coeffs())}, {"omega", coeffs_to_json(p.g.coeffs())}});
    }
    return json{{"status", "branches"}, {"complete", b.complete}, {"count", b.roots.size()}, {"roots", roots}};
}

RiordanRootResult riordan_root_result_from_json(const json& j, const RingCtx& ctx) {
    return guarded([&]() -> RiordanRootResult {
        const auto status = j.at("status").get<std::string>();
        if (status == "unique") {
            return RRootUnique{TruncSeries(ctx, coeffs_from_json(j.at("alpha"), ctx)),
                               TruncSeries(ctx, coeffs_from_json(j.at("omega"), ctx))};
        }
        if (status == "no_solution") {
            const auto stage = j.at("stage").get<std::string>();
            if (stage != "omega" && stage != "alpha") {
                throw ParseError("unknown stage '" + stage + "'");
            }
            return RRootNoSolution{stage == "omega" ? RootStage::Omega : RootStage::Alpha,
                                   j.at("index").get<std::size_t>(), ctx.parse_elem(j.at("rhs").get<std::string>())};
        }
        if (status == "branches") {
            RRootBranches b;
            b.complete = j.at("complete").get<bool>();
            for (const auto& p : j.at("roots")) {
                b.roots.push_back({TruncSeries(ctx, coeffs_from_json(p.at("alpha"), ctx)),
                                   TruncSeries(ctx, coeffs_from_json(p.at("omega"), ctx))});
            }
            return b;
        }
        throw ParseError("unknown status '" + status + "'");
    });
}

json classification_to_json(const ClassificationTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        rows.push_back(json{{"g", row.g}, {"root_count", row.roots.size()}, {"roots", row.roots}});
    }
    return json{{"ring", "Zmod:2"}, {"order", t.order}, {"classes", rows}};
}

std::string classification_to_csv(const ClassificationTable& t) {
    std::ostringstream out;
    out << "g,root_count,roots\n";
    for (const auto& row : t.rows) {
        out << digits(row.g) << ',' << row.roots.size() << ',';
        for (std::size_t i = 0; i < row.roots.size(); ++i) {
            out << (i ? " " : "") << digits(row.roots[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_bfile(std::span<const RingElem> coeffs, long offset) {
    std::ostringstream out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        out << (offset + static_cast<long>(k)) << ' ' << coeffs[k].to_string() << '\n';
    }
    return out.str();
}

} // namespace iterroot::io
