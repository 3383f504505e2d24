#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iterroot/errors.hpp>
#include <iterroot/io.hpp>

#include "oracles.hpp"

using namespace iterroot;
using io::json;

namespace {
const RingCtx Q = RingCtx::rationals();
const RingCtx Z5 = RingCtx::integers_mod(5);
} // namespace

TEST_CASE("coefficient lists") {
    CHECK(io::split_list("0, 1,1/2 ,-3") == std::vector<std::string>{"0", "1", "1/2", "-3"});
    CHECK(io::split_list("7") == std::vector<std::string>{"7"});
    CHECK_THROWS_AS(io::split_list("1,,2"), ParseError);
    CHECK_THROWS_AS(io::split_list(""), ParseError);
}

TEST_CASE("series round trip") {
    oracle::Gen gen(51);
    for (const auto& r : {Q, Z5, RingCtx::integers()}) {
        const auto s = gen.any(r, 6);
        const json j = io::series_to_json(s);
        CHECK(j.at("ring") == r.name());
        CHECK(j.at("order") == 6);
        CHECK(io::series_from_json(j) == s);
        CHECK(io::series_from_json(json::parse(j.dump())) == s);
    }
}

TEST_CASE("series documents") {
    const auto s = io::series_from_json(json::parse(R"({"coeffs": [0, 1, "1/2"]})"), Q);
    CHECK(s.to_strings() == std::vector<std::string>{"0", "1", "1/2"});
    CHECK_THROWS_AS(io::series_from_json(json::parse(R"({"coeffs": [0, 1]})")), ParseError);
    CHECK_THROWS_AS(io::series_from_json(json::parse(R"({"ring": "Q", "order": 3, "coeffs": [0, 1]})")), ParseError);
    CHECK_THROWS_AS(io::series_from_json(json::parse(R"({"ring": "Q"})")), ParseError);
    CHECK_THROWS_AS(io::series_from_json(json::parse(R"({"ring": "Z", "coeffs": [0, 1]})"), Q), ContextMismatch);
    CHECK_THROWS_AS(io::series_from_json(json::parse(R"({"ring": "Q", "coeffs": "0,1"})")), ParseError);
}

TEST_CASE("matrix round trip") {
    oracle::Gen gen(52);
    const auto m = build(gen.unit(Q, 5), gen.subst(Q, 5), 5).entries();
    CHECK(io::matrix_from_json(io::matrix_to_json(m)) == m);

    const auto square = json::parse(R"({"ring": "Z", "rows": [[1, 0, 0], [1, 1, 0], [1, 2, 1]]})");
    const auto p = io::matrix_from_json(square);
    CHECK(p(2, 1).to_string() == "2");
    const auto upper = json::parse(R"({"ring": "Z", "rows": [[1, 5], [1, 1]]})");
    CHECK_THROWS_AS(io::matrix_from_json(upper), ParseError);
    const auto ragged = json::parse(R"({"ring": "Z", "rows": [[1], [1, 1, 1, 1]]})");
    CHECK_THROWS_AS(io::matrix_from_json(ragged), ParseError);
}

TEST_CASE("pair round trip") {
    oracle::Gen gen(53);
    const RiordanPair p{gen.unit(Z5, 4), gen.subst(Z5, 4)};
    const auto back = io::pair_from_json(io::pair_to_json(p));
    CHECK(back.f == p.f);
    CHECK(back.g == p.g);
    CHECK_THROWS_AS(io::pair_from_json(json::parse(R"({"ring": "Q", "f": [1], "g": [0, 1]})")), ParseError);
}

TEST_CASE("root results round trip") {
    const auto w = TruncSeries::from_strings(Q, std::vector<std::string>{"0", "1", "1/2"});
    for (const RootResult& r : {RootResult{RootUnique{w}}, RootResult{RootNoSolution{3, Q.from_int(7)}},
                                RootResult{RootBranches{{w, w}, false}}}) {
        const json j = io::root_result_to_json(r);
        CHECK(same_outcome(io::root_result_from_json(j, Q), r));
    }
    CHECK(io::root_result_to_json(RootNoSolution{3, Q.one()}).at("stage") == "omega");
    CHECK(io::root_result_to_json(RootBranches{{w, w}, true}).at("count") == 2);
    CHECK_THROWS_AS(io::root_result_from_json(json::parse(R"({"status": "maybe"})"), Q), ParseError);
}

TEST_CASE("Riordan root results round trip") {
    const auto a = TruncSeries::from_strings(Q, std::vector<std::string>{"1", "1/2"});
    const auto w = TruncSeries::from_strings(Q, std::vector<std::string>{"0", "1"});
    const json u = io::riordan_root_result_to_json(RRootUnique{a, w});
    const auto back = io::riordan_root_result_from_json(u, Q);
    REQUIRE(std::holds_alternative<RRootUnique>(back));
    CHECK(std::get<RRootUnique>(back).alpha == a);

    const json e = io::riordan_root_result_to_json(RRootNoSolution{RootStage::Alpha, 1, Q.one()});
    CHECK(e.at("stage") == "alpha");
    const auto eb = io::riordan_root_result_from_json(e, Q);
    REQUIRE(std::holds_alternative<RRootNoSolution>(eb));
    CHECK(std::get<RRootNoSolution>(eb).stage == RootStage::Alpha);

    const json b = io::riordan_root_result_to_json(RRootBranches{{{a, w}}, true});
    CHECK(std::get<RRootBranches>(io::riordan_root_result_from_json(b, Q)).roots.size() == 1);
}

TEST_CASE("classification output") {
    ClassificationTable t;
    t.order = 3;
    t.rows.push_back({{0, 0}, {{0, 0}, {0, 1}}});
    CHECK(io::classification_to_csv(t) == "g,root_count,roots\n00,2,00 01\n");
    const json j = io::classification_to_json(t);
    CHECK(j.at("ring") == "Zmod:2");
    CHECK(j.at("classes")[0].at("root_count") == 2);
}

TEST_CASE("b-files") {
    const auto w = TruncSeries::from_strings(Q, std::vector<std::string>{"0", "1", "-1/12"});
    CHECK(io::to_bfile(w.coeffs()) == "0 0\n1 1\n2 -1/12\n");
    CHECK(io::to_bfile(w.coeffs(), 1) == "1 0\n2 1\n3 -1/12\n");
}
