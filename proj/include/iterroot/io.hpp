#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <iterroot/riordan.hpp>
#include <iterroot/riordan_roots.hpp>
#include <iterroot/subst_roots.hpp>

namespace iterroot::io {

using json = nlohmann::json;

/// Splits "0,1,1/2" into its comma-separated fields (whitespace trimmed).
std::vector<std::string> split_list(std::string_view text);

json coeffs_to_json(std::span<const RingElem> coeffs);
std::vector<RingElem> coeffs_from_json(const json& j, const RingCtx& ctx);

/// {"ring": "Q", "order": m, "coeffs": ["0", "1", ...]}
json series_to_json(const TruncSeries& s);
/// "ring" may be omitted when `ctx` is given; "order" must match the list.
TruncSeries series_from_json(const json& j, const std::optional<RingCtx>& ctx = std::nullopt);

/// {"order": m, "ring": "...", "rows": [[a00], [a10, a11], ...]}. Full
/// square rows are accepted on input as long as the upper part is zero.
json matrix_to_json(const LowerTriangular& m);
LowerTriangular matrix_from_json(const json& j);

/// {"ring": "...", "order": m, "f": [...], "g": [...]}
json pair_to_json(const RiordanPair& p);
RiordanPair pair_from_json(const json& j, const std::optional<RingCtx>& ctx = std::nullopt);

/// {"status": "unique" | "no_solution" | "branches", ...}
json root_result_to_json(const RootResult& r);
RootResult root_result_from_json(const json& j, const RingCtx& ctx);

json riordan_root_result_to_json(const RiordanRootResult& r);
RiordanRootResult riordan_root_result_from_json(const json& j, const RingCtx& ctx);

std::string stage_name(RootStage s);

json classification_to_json(const ClassificationTable& t);
/// Header "g,root_count,roots". g and every root are written as digit
/// strings (g_2..g_m, omega_2..omega_m); roots are space separated.
std::string classification_to_csv(const ClassificationTable& t);

/// One "index value" line per coefficient, indices starting at `offset`.
std::string to_bfile(std::span<const RingElem> coeffs, long offset = 0);

} // namespace iterroot::io
