// Acceptance suite: one PASS/FAIL line per criterion, each with its own
// instance count and time budget. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <iterroot/io.hpp>
#include <iterroot/riordan_roots.hpp>
#include <iterroot/subst_roots.hpp>

#include "oracles.hpp"

using namespace iterroot;

namespace {

const RingCtx Q = RingCtx::rationals();
const RingCtx Z = RingCtx::integers();

struct Verdict {
    bool ok = true;
    std::string note;

    void fail(const std::string& why) {
        if (ok) note = why;
        ok = false;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Verdict()> body;
};

TruncSeries series(const RingCtx& r, std::initializer_list<const char*> c) {
    std::vector<std::string> v(c.begin(), c.end());
    return TruncSeries::from_strings(r, v);
}

std::set<std::vector<std::string>> root_strings(const RootResult& r) {
    std::set<std::vector<std::string>> out;
    if (auto* u = std::get_if<RootUnique>(&r)) out.insert(u->omega.to_strings());
    if (auto* b = std::get_if<RootBranches>(&r))
        for (const auto& w : b->roots) out.insert(w.to_strings());
    return out;
}

// ---------------------------------------------------------------- 1

Verdict golden_a059992() {
    Verdict v;
    const auto g = series(Q, {"0", "1", "4", "8", "12", "24", "36", "48", "60", "72", "120"});
    const auto r = iter_root(g, 2);
    const auto* u = std::get_if<RootUnique>(&r);
    if (!u) {
        v.fail("root is not unique");
        return v;
    }
    const std::vector<std::string> expect{"1", "2", "0", "2", "0", "-14", "96", "-426", "1044"};
    for (std::size_t k = 1; k <= 9; ++k) {
        v.expect(u->omega[k].to_string() == expect[k - 1], "coefficient " + std::to_string(k) + " differs");
        v.expect(u->omega[k].value().get_den() == 1, "coefficient " + std::to_string(k) + " is not an integer");
    }
    return v;
}

// ---------------------------------------------------------------- 2

Verdict sin_half_iterate() {
    Verdict v;
    const auto s = preset(Preset::Sin, 15);
    const auto r = iter_root(s, 2);
    const auto* u = std::get_if<RootUnique>(&r);
    if (!u) {
        v.fail("root is not unique");
        return v;
    }
    v.expect(oracle::q_iterate(oracle::to_q(u->omega), 2) == oracle::to_q(s), "omega o omega != sin");
    for (std::size_t k = 0; k <= 15; k += 2) v.expect(u->omega[k].is_zero(), "even coefficient is nonzero");
    return v;
}

// ---------------------------------------------------------------- 3

Verdict path_agreement() {
    Verdict v;
    oracle::Gen gen(2024);
    int disagreements = 0, instances = 0, obstructions = 0, branchings = 0;
    auto check = [&](const TruncSeries& g, unsigned long n) {
        ++instances;
        const auto a = iter_root_matrix(g, n);
        const auto b = iter_root_substitution(g, n);
        if (!same_outcome(a, b)) ++disagreements;
        if (std::holds_alternative<RootNoSolution>(a)) ++obstructions;
        if (std::holds_alternative<RootBranches>(a)) ++branchings;
    };
    for (int i = 0; i < 500; ++i) check(gen.subst(Q, 12), static_cast<unsigned long>(gen.int_in(2, 5)));
    for (int i = 0; i < 500; ++i) {
        const auto n = static_cast<unsigned long>(gen.int_in(2, 5));
        auto g = gen.subst(Z, 12);
        // every third target is an n-th power so both outcomes are exercised
        if (i % 3 == 0) g = iterate(g, n);
        check(g, n);
    }
    for (long m : {2, 3, 4, 6}) {
        const auto r = RingCtx::integers_mod(m);
        for (int i = 0; i < 125; ++i) {
            const auto n = static_cast<unsigned long>(gen.int_in(2, 5));
            auto g = gen.subst(r, 12);
            if (i % 2 == 0) g = iterate(g, n);
            check(g, n);
        }
    }
    v.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
    v.note = std::to_string(instances) + " instances, " + std::to_string(obstructions) + " obstructed, " +
             std::to_string(branchings) + " branched" + (v.ok ? "" : "; " + v.note);
    return v;
}

// ---------------------------------------------------------------- 4

Verdict char0_completeness() {
    Verdict v;
    oracle::Gen gen(4);
    for (int i = 0; i < 200; ++i) {
        const auto g = gen.subst(Q, 10);
        const auto n = static_cast<unsigned long>(gen.int_in(2, 5));
        const auto r = iter_root(g, n);
        const auto* u = std::get_if<RootUnique>(&r);
        if (!u) {
            v.fail("instance " + std::to_string(i) + " is not unique");
            continue;
        }
        v.expect(oracle::q_iterate(oracle::to_q(u->omega), static_cast<unsigned>(n)) == oracle::to_q(g),
                 "instance " + std::to_string(i) + " does not re-verify");
    }
    return v;
}

// ---------------------------------------------------------------- 5

Verdict char_p() {
    Verdict v;
    const auto z2 = RingCtx::integers_mod(2);
    const auto roots = root_strings(iter_root(TruncSeries::identity(z2, 5), 2));
    v.expect(roots.size() >= 2, "identity has fewer than 2 square roots over Z/2");
    v.expect(roots.count(geometric(z2.one(), 5).to_strings()) == 1, "x/(1-x) is not among the roots");
    v.expect(iterate(geometric(z2.one(), 5), 2) == TruncSeries::identity(z2, 5), "x/(1-x) does not square to x");

    const auto z3 = RingCtx::integers_mod(3);
    const auto r = iter_root(series(z3, {"0", "1", "1", "0", "0"}), 3);
    const auto* e = std::get_if<RootNoSolution>(&r);
    v.expect(e && e->index == 2, "x + x^2 over Z/3 is not obstructed at index 2");
    return v;
}

// ---------------------------------------------------------------- 6

Verdict mod2_classification() {
    Verdict v;
    const auto table = mod2_square_root_classes(7);

    // brute force: square every omega = x + w_2 x^2 + ... + w_7 x^7
    std::map<std::vector<int>, std::vector<std::vector<int>>> brute;
    for (int code = 0; code < 64; ++code) {
        oracle::IVec w{0, 1};
        std::vector<int> tail;
        for (int k = 5; k >= 0; --k) {
            w.push_back((code >> k) & 1);
            tail.push_back((code >> k) & 1);
        }
        const auto g = oracle::i_compose(w, w, 2);
        brute[std::vector<int>(g.begin() + 2, g.end())].push_back(tail);
    }
    v.expect(table.rows.size() == brute.size(), "class count differs from brute force");
    for (const auto& row : table.rows) {
        auto it = brute.find(row.g);
        if (it == brute.end()) {
            v.fail("class not produced by brute force");
            continue;
        }
        auto a = row.roots, b = it->second;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        v.expect(a == b, "root list differs from brute force");
        v.expect(row.g[0] == 0 && row.g[1] == 0, "a class has g_2 or g_3 nonzero");
    }

    std::ifstream golden(ITERROOT_GOLDEN_DIR "/z2_squares_order7.csv");
    std::stringstream text;
    text << golden.rdbuf();
    v.expect(golden.good() || golden.eof(), "golden table missing");
    v.expect(text.str() == io::classification_to_csv(table), "table differs from the shipped golden table");
    return v;
}

// ---------------------------------------------------------------- 7

Verdict pascal_root() {
    Verdict v;
    const auto g = geometric(Q.one(), 8);
    const auto f = g + TruncSeries::one(Q, 8);
    const auto r = riordan_root(f, g, 2);
    const auto* u = std::get_if<RRootUnique>(&r);
    if (!u) {
        v.fail("Pascal root over Q is not unique");
        return v;
    }
    const auto half = geometric(Q.parse_elem("1/2"), 8);
    v.expect(u->omega == half, "omega != x/(1-x/2)");
    v.expect(u->alpha == shift_down(geometric(Q.parse_elem("1/2"), 9)), "alpha != 1/(1-x/2)");
    const auto root = build(u->alpha, u->omega, 8);
    const auto sq = mat_mul(root, root);
    for (unsigned i = 0; i <= 8; ++i)
        for (unsigned j = 0; j <= i; ++j)
            v.expect(sq.entries()(i, j).value() == oracle::binom(i, j), "square differs from binomials");

    const auto gz = geometric(Z.one(), 8);
    const auto rz = riordan_root(gz + TruncSeries::one(Z, 8), gz, 2);
    v.expect(std::holds_alternative<RRootNoSolution>(rz), "Pascal root over Z exists");
    return v;
}

// ---------------------------------------------------------------- 8

Verdict stabilizer_laws() {
    Verdict v;
    oracle::Gen gen(8);
    for (int i = 0; i < 100; ++i) {
        const auto g = gen.subst(Q, 10);
        const auto vec = gen.unit(Q, 10);
        const auto d = stabilizer_cofactor(g, vec.coeffs());
        v.expect(stabilizes(d, g, vec.coeffs()), "cofactor does not stabilize");
        // independent check: R(d, g) v = v by dense product
        v.expect(oracle::q_matvec(oracle::q_riordan(oracle::to_q(d), oracle::to_q(g)), oracle::to_q(vec)) ==
                     oracle::to_q(vec),
                 "dense product disagrees");
        for (unsigned long n = 1; n <= 5; ++n) {
            const auto p = riordan_power(d, g, n);
            v.expect(stabilizes(p.f, p.g, vec.coeffs()), "power " + std::to_string(n) + " leaves the stabilizer");
        }
        for (unsigned long n = 2; n <= 3; ++n) {
            const auto r = riordan_root(d, g, n);
            const auto* u = std::get_if<RRootUnique>(&r);
            if (!u) {
                v.fail("root " + std::to_string(n) + " is not unique");
                continue;
            }
            v.expect(stabilizes(u->alpha, u->omega, vec.coeffs()), "root " + std::to_string(n) +
                                                                         " leaves the stabilizer");
        }
    }
    return v;
}

// ---------------------------------------------------------------- 9

oracle::QMat reduce(oracle::QMat m, long p) {
    for (auto& row : m)
        for (auto& e : row) {
            mpz_class r = e.get_num() % p;
            if (r < 0) r += p;
            e = r;
        }
    return m;
}

Verdict group_laws() {
    Verdict v;
    oracle::Gen gen(9);
    for (const auto& r : {Q, RingCtx::integers_mod(5)}) {
        const bool modular = r.kind() == RingKind::IntegersMod;
        for (int i = 0; i < 200; ++i) {
            const auto d = gen.unit(r, 10), h = gen.subst(r, 10), f = gen.unit(r, 10), g = gen.subst(r, 10);
            const auto prod = mat_mul(build(d, h, 10), build(f, g, 10));
            v.expect(prod == build(mul(d, compose(f, h)), compose(g, h), 10), "Operation Law fails");
            auto dense = oracle::q_matmul(oracle::q_riordan(oracle::to_q(d), oracle::to_q(h)),
                                          oracle::q_riordan(oracle::to_q(f), oracle::to_q(g)));
            if (modular) dense = reduce(dense, 5);
            v.expect(oracle::to_q(prod.entries()) == dense, "product differs from dense oracle");

            const auto big_h = gen.any(r, 10);
            const auto lhs = apply_vector(build(f, g, 10), big_h.coeffs());
            v.expect(TruncSeries(r, lhs) == mul(f, compose(big_h, g)), "1FTRM fails");
        }
    }
    return v;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "A059992 golden table", 1.0, golden_a059992},
        {2, "sin half-iterate", 1.0, sin_half_iterate},
        {3, "matrix-formula vs substitution path agreement", 30.0, path_agreement},
        {4, "char-0 completeness and uniqueness", 10.0, char0_completeness},
        {5, "char-p obstruction and non-uniqueness", 1.0, char_p},
        {6, "Z/2 square classification", 1.0, mod2_classification},
        {7, "Riordan root of Pascal", 1.0, pascal_root},
        {8, "stabilizer laws", 10.0, stabilizer_laws},
        {9, "Operation Law and 1FTRM", 10.0, group_laws},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.body();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= c.budget_s) v.fail("over budget");
        failures += v.ok ? 0 : 1;
        std::printf("%s  %d  %-48s %7.3f s (limit %g s)%s%s\n", v.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    c.budget_s, v.note.empty() ? "" : "  ", v.note.c_str());
    }
    std::fflush(stdout);
    return failures;
}
