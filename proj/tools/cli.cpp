#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <iterroot/io.hpp>
#include <iterroot/riordan_roots.hpp>
#include <iterroot/subst_roots.hpp>

namespace iterroot::cli {

namespace {

using io::json;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct JobSpec {
    std::string command;
    std::optional<std::string> ring;
    std::optional<std::size_t> order;
    std::optional<unsigned long> n;
    std::optional<std::string> coeffs;
    std::optional<std::string> preset;
    std::optional<std::string> input;
    std::optional<std::string> f;
    std::optional<std::string> g;
    std::optional<std::string> alpha;
    std::optional<std::string> omega;
    std::optional<std::string> output;
    std::string format = "text";
    std::optional<std::size_t> cap;
    bool no_branch = false;
    long offset = 0;
    std::size_t bound = kDefaultClassifyBound;
};

struct Streams {
    std::ostream& out;
    std::ostream& err;
    std::istream& in;
};

void require(bool present, const std::string& field) {
    if (!present) {
        throw UsageError("missing required field: " + field);
    }
}

void require_format(const JobSpec& spec, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (spec.format == a) {
            return;
        }
    }
    throw UsageError("format '" + spec.format + "' is not supported by '" + spec.command + "'");
}

std::size_t branch_cap(const JobSpec& spec) {
    if (spec.cap) {
        return *spec.cap;
    }
    if (const char* env = std::getenv(kBranchCapEnv)) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw UsageError(std::string(kBranchCapEnv) + " is not a number: '" + env + "'");
        }
    }
    return kDefaultBranchCap;
}

SearchOptions search_options(const JobSpec& spec) {
    SearchOptions opts;
    opts.cap = branch_cap(spec);
    opts.branching = !spec.no_branch;
    return opts;
}

json load_json(const std::string& path, std::istream& in) {
    try {
        if (path == "-") {
            return json::parse(in);
        }
        std::ifstream file(path);
        if (!file) {
            throw UsageError("cannot open '" + path + "'");
        }
        return json::parse(file);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

TruncSeries with_order(TruncSeries s, const std::optional<std::size_t>& order) {
    if (!order) {
        return s;
    }
    if (*order > s.order()) {
        throw UsageError("order " + std::to_string(*order) + " needs " + std::to_string(*order + 1) +
                         " coefficients, got " + std::to_string(s.order() + 1));
    }
    return truncate(s, *order);
}

TruncSeries series_from_list(const RingCtx& ctx, const std::string& list, const std::optional<std::size_t>& order) {
    const auto fields = io::split_list(list);
    return with_order(TruncSeries::from_strings(ctx, fields), order);
}

// The series to take a root of: --coeffs, --preset, or a series document.
std::pair<TruncSeries, std::string> target_series(const JobSpec& spec, std::istream& in) {
    const int sources = int(spec.coeffs.has_value()) + int(spec.preset.has_value()) + int(spec.input.has_value());
    require(sources > 0, "coeffs (or preset, or input)");
    if (sources > 1) {
        throw UsageError("give exactly one of --coeffs, --preset, --input");
    }
    if (spec.input) {
        const json doc = load_json(*spec.input, in);
        std::optional<RingCtx> ctx;
        if (spec.ring) {
            ctx = RingCtx::parse(*spec.ring);
        }
        return {with_order(io::series_from_json(doc, ctx), spec.order), "g"};
    }
    require(spec.ring.has_value(), "ring");
    const RingCtx ctx = RingCtx::parse(*spec.ring);
    if (spec.coeffs) {
        return {series_from_list(ctx, *spec.coeffs, spec.order), "g"};
    }
    require(spec.order.has_value(), "order");
    const Preset p = parse_preset(*spec.preset);
    return {convert(preset(p, *spec.order), ctx), preset_name(p)};
}

void print_coeff_table(std::ostream& out, const std::string& label, const TruncSeries& s) {
    out << "k " << label << "_k\n";
    for (std::size_t k = 0; k <= s.order(); ++k) {
        out << k << ' ' << s[k].to_string() << '\n';
    }
}

std::string join(std::span<const RingElem> c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        s += (i ? "," : "") + c[i].to_string();
    }
    return s;
}

int exit_code(const RootResult& r) {
    if (std::holds_alternative<RootUnique>(r)) return kExitOk;
    if (std::holds_alternative<RootNoSolution>(r)) return kExitNoSolution;
    return kExitBranches;
}

int exit_code(const RiordanRootResult& r) {
    if (std::holds_alternative<RRootUnique>(r)) return kExitOk;
    if (std::holds_alternative<RRootNoSolution>(r)) return kExitNoSolution;
    return kExitBranches;
}

// ---------------------------------------------------------------- root / emit

int cmd_root(const JobSpec& spec, Streams& s) {
    require_format(spec, {"text", "json", "csv", "bfile"});
    require(spec.n.has_value(), "n");
    auto [g, name] = target_series(spec, s.in);
    const unsigned long n = *spec.n;
    const RootResult r = iter_root(g, n, search_options(spec));
    const std::string check = "iterate(ω," + std::to_string(n) + ") = " + name;

    if (spec.format == "json") {
        json doc{{"command", "root"},
                 {"ring", g.ctx().name()},
                 {"order", g.order()},
                 {"n", n},
                 {"g", io::coeffs_to_json(g.coeffs())},
                 {"result", io::root_result_to_json(r)}};
        s.out << doc.dump(2) << '\n';
        return exit_code(r);
    }
    if (spec.format == "bfile") {
        if (auto* u = std::get_if<RootUnique>(&r)) {
            s.out << io::to_bfile(u->omega.coeffs(), spec.offset);
        } else {
            s.err << "no unique root; nothing to emit\n";
        }
        return exit_code(r);
    }
    if (spec.format == "csv") {
        s.out << "branch,k,value\n";
        std::vector<TruncSeries> roots;
        if (auto* u = std::get_if<RootUnique>(&r)) {
            roots.push_back(u->omega);
        } else if (auto* b = std::get_if<RootBranches>(&r)) {
            roots = b->roots;
        }
        for (std::size_t i = 0; i < roots.size(); ++i) {
            for (std::size_t k = 0; k <= roots[i].order(); ++k) {
                s.out << i << ',' << k << ',' << roots[i][k].to_string() << '\n';
            }
        }
        if (auto* e = std::get_if<RootNoSolution>(&r)) {
            s.err << "no solution at index " << e->index << '\n';
        }
        return exit_code(r);
    }

    s.out << "ring: " << g.ctx().name() << "\norder: " << g.order() << "\nn: " << n << '\n';
    if (auto* u = std::get_if<RootUnique>(&r)) {
        s.out << "status: unique\n";
        print_coeff_table(s.out, "omega", u->omega);
        s.out << check << ": OK\n";
    } else if (auto* e = std::get_if<RootNoSolution>(&r)) {
        s.out << "status: no_solution\n"
              << "obstruction: index " << e->index << ", " << n << "*omega_" << e->index << " = " << e->rhs.to_string()
              << " has no solution in " << g.ctx().name() << '\n';
    } else {
        const auto& b = std::get<RootBranches>(r);
        s.out << "status: branches (" << b.roots.size() << " roots, " << (b.complete ? "complete" : "incomplete")
              << ")\n";
        for (std::size_t i = 0; i < b.roots.size(); ++i) {
            s.out << "root " << i << ": " << join(b.roots[i].coeffs()) << '\n';
        }
        s.out << check << ": OK for all " << b.roots.size() << " roots\n";
    }
    return exit_code(r);
}

int cmd_emit(JobSpec spec, Streams& s) {
    spec.format = "bfile";
    if (!spec.output) {
        return cmd_root(spec, s);
    }
    std::ofstream file(*spec.output);
    if (!file) {
        throw UsageError("cannot write '" + *spec.output + "'");
    }
    Streams to_file{file, s.err, s.in};
    return cmd_root(spec, to_file);
}

// ---------------------------------------------------------------- rroot

RiordanPair target_pair(const JobSpec& spec, std::istream& in) {
    if (spec.input) {
        const json doc = load_json(*spec.input, in);
        std::optional<RingCtx> ctx;
        if (spec.ring) {
            ctx = RingCtx::parse(*spec.ring);
        }
        RiordanPair p = io::pair_from_json(doc, ctx);
        return {with_order(p.f, spec.order), with_order(p.g, spec.order)};
    }
    require(spec.ring.has_value(), "ring");
    require(spec.f.has_value(), "f");
    require(spec.g.has_value(), "g");
    const RingCtx ctx = RingCtx::parse(*spec.ring);
    return {series_from_list(ctx, *spec.f, spec.order), series_from_list(ctx, *spec.g, spec.order)};
}

int cmd_rroot(const JobSpec& spec, Streams& s) {
    require_format(spec, {"text", "json"});
    require(spec.n.has_value(), "n");
    const RiordanPair p = target_pair(spec, s.in);
    if (p.f.order() != p.g.order()) {
        throw UsageError("f and g must have the same number of coefficients");
    }
    const unsigned long n = *spec.n;
    const RiordanRootResult r = riordan_root(p.f, p.g, n, search_options(spec));

    if (spec.format == "json") {
        json doc{{"command", "rroot"},
                 {"ring", p.f.ctx().name()},
                 {"order", p.f.order()},
                 {"n", n},
                 {"f", io::coeffs_to_json(p.f.coeffs())},
                 {"g", io::coeffs_to_json(p.g.coeffs())},
                 {"result", io::riordan_root_result_to_json(r)}};
        s.out << doc.dump(2) << '\n';
        return exit_code(r);
    }
    s.out << "ring: " << p.f.ctx().name() << "\norder: " << p.f.order() << "\nn: " << n << '\n';
    if (auto* u = std::get_if<RRootUnique>(&r)) {
        s.out << "status: unique\n"
              << "alpha: " << join(u->alpha.coeffs()) << '\n'
              << "omega: " << join(u->omega.coeffs()) << '\n'
              << "R(alpha,omega)^" << n << " = R(f,g): OK\n";
    } else if (auto* e = std::get_if<RRootNoSolution>(&r)) {
        s.out << "status: no_solution\n"
              << "obstruction: " << io::stage_name(e->stage) << " stage, index " << e->index << ", rhs "
              << e->rhs.to_string() << '\n';
    } else {
        const auto& b = std::get<RRootBranches>(r);
        s.out << "status: branches (" << b.roots.size() << " roots, " << (b.complete ? "complete" : "incomplete")
              << ")\n";
        for (std::size_t i = 0; i < b.roots.size(); ++i) {
            s.out << "root " << i << ": alpha " << join(b.roots[i].f.coeffs()) << "; omega "
                  << join(b.roots[i].g.coeffs()) << '\n';
        }
    }
    return exit_code(r);
}

// ---------------------------------------------------------------- verify

// Compares R(alpha, omega)^n with R(f, g); returns false after reporting the
// first mismatching entry.
bool check_power(const TruncSeries& alpha, const TruncSeries& omega, const TruncSeries& f, const TruncSeries& g,
                 unsigned long n, const std::string& label, Streams& s) {
    if (alpha.order() != f.order() || omega.order() != g.order() || f.order() != g.order()) {
        throw UsageError("candidate and target have different orders");
    }
    const RiordanPair power = riordan_power(alpha, omega, n);
    const std::size_t m = f.order();
    const RiordanMat got = build(power.f, power.g, m);
    const RiordanMat want = build(f, g, m);
    if (auto bad = first_mismatch(got.entries(), want.entries())) {
        const auto [i, j] = *bad;
        s.out << label << ": mismatch at entry (" << i << "," << j << "): expected " << want.entries()(i, j).to_string()
              << ", got " << got.entries()(i, j).to_string() << '\n';
        return false;
    }
    s.out << label << ": R(alpha,omega)^" << n << " = R(f,g) at order " << m << ": OK\n";
    return true;
}

int verify_report(const json& doc, Streams& s) {
    const std::string command = doc.value("command", "");
    const RingCtx ctx = RingCtx::parse(doc.at("ring").get<std::string>());
    const auto n = doc.at("n").get<unsigned long>();
    const TruncSeries g(ctx, io::coeffs_from_json(doc.at("g"), ctx));
    const TruncSeries one = TruncSeries::one(ctx, g.order());
    bool ok = true;

    if (command == "root") {
        const RootResult claimed = io::root_result_from_json(doc.at("result"), ctx);
        if (auto* u = std::get_if<RootUnique>(&claimed)) {
            ok = check_power(one, u->omega, one, g, n, "root", s);
        } else if (auto* b = std::get_if<RootBranches>(&claimed)) {
            for (std::size_t i = 0; i < b->roots.size(); ++i) {
                ok = check_power(one, b->roots[i], one, g, n, "root " + std::to_string(i), s) && ok;
            }
        } else {
            const RootResult again = iter_root(g, n);
            ok = same_outcome(claimed, again);
            s.out << "obstruction " << (ok ? "confirmed" : "not reproduced") << '\n';
        }
    } else if (command == "rroot") {
        const TruncSeries f(ctx, io::coeffs_from_json(doc.at("f"), ctx));
        const RiordanRootResult claimed = io::riordan_root_result_from_json(doc.at("result"), ctx);
        if (auto* u = std::get_if<RRootUnique>(&claimed)) {
            ok = check_power(u->alpha, u->omega, f, g, n, "root", s);
        } else if (auto* b = std::get_if<RRootBranches>(&claimed)) {
            for (std::size_t i = 0; i < b->roots.size(); ++i) {
                ok = check_power(b->roots[i].f, b->roots[i].g, f, g, n, "root " + std::to_string(i), s) && ok;
            }
        } else {
            const auto& e = std::get<RRootNoSolution>(claimed);
            const RiordanRootResult again = riordan_root(f, g, n);
            const auto* e2 = std::get_if<RRootNoSolution>(&again);
            ok = e2 && e2->stage == e.stage && e2->index == e.index && e2->rhs == e.rhs;
            s.out << "obstruction " << (ok ? "confirmed" : "not reproduced") << '\n';
        }
    } else {
        throw UsageError("report has unknown command '" + command + "'");
    }
    return ok ? kExitOk : kExitNoSolution;
}

int cmd_verify(const JobSpec& spec, Streams& s) {
    require_format(spec, {"text"});
    if (spec.input) {
        return verify_report(load_json(*spec.input, s.in), s);
    }
    require(spec.ring.has_value(), "ring");
    require(spec.n.has_value(), "n");
    require(spec.g.has_value(), "g");
    require(spec.omega.has_value(), "omega");
    if (spec.f.has_value() != spec.alpha.has_value()) {
        throw UsageError("--f and --alpha must be given together");
    }
    const RingCtx ctx = RingCtx::parse(*spec.ring);
    const TruncSeries g = series_from_list(ctx, *spec.g, spec.order);
    const TruncSeries omega = series_from_list(ctx, *spec.omega, spec.order);
    const TruncSeries f = spec.f ? series_from_list(ctx, *spec.f, spec.order) : TruncSeries::one(ctx, g.order());
    const TruncSeries alpha =
        spec.alpha ? series_from_list(ctx, *spec.alpha, spec.order) : TruncSeries::one(ctx, omega.order());
    return check_power(alpha, omega, f, g, *spec.n, "candidate", s) ? kExitOk : kExitNoSolution;
}

// ---------------------------------------------------------------- feasibility / enumerate

int cmd_feasibility(const JobSpec& spec, Streams& s) {
    require_format(spec, {"text", "json"});
    const RingCtx z = RingCtx::parse(spec.ring.value_or("Z"));
    if (z.kind() != RingKind::Integers) {
        throw UsageError("feasibility works over Z only");
    }
    TruncSeries g = [&] {
        if (spec.input) {
            return with_order(io::series_from_json(load_json(*spec.input, s.in), z), spec.order);
        }
        require(spec.coeffs.has_value(), "coeffs");
        return series_from_list(z, *spec.coeffs, spec.order);
    }();
    const unsigned long n = spec.n.value_or(2);
    const FeasibilityLedger ledger = zroot_feasibility(g, n);

    if (spec.format == "json") {
        json records = json::array();
        for (const auto& r : ledger.records) {
            json rec{{"index", r.index}, {"rhs", r.rhs.to_string()}, {"solvable", r.solvable}};
            rec["omega"] = r.chosen ? json(r.chosen->to_string()) : json(nullptr);
            records.push_back(rec);
        }
        s.out << json{{"command", "feasibility"},
                      {"ring", "Z"},
                      {"order", g.order()},
                      {"n", n},
                      {"records", records},
                      {"overall", ledger.overall},
                      {"mod4_sufficient", ledger.mod4_sufficient}}
                     .dump(2)
              << '\n';
    } else {
        s.out << "k rhs_k solvable omega_k\n";
        for (const auto& r : ledger.records) {
            s.out << r.index << ' ' << r.rhs.to_string() << ' ' << (r.solvable ? "yes" : "no") << ' '
                  << (r.chosen ? r.chosen->to_string() : "-") << '\n';
        }
        s.out << "overall: " << (ledger.overall ? "feasible" : "infeasible") << " to order " << g.order() << '\n'
              << "all g_k = 0 mod 4: " << (ledger.mod4_sufficient ? "yes" : "no") << '\n';
    }
    return ledger.overall ? kExitOk : kExitNoSolution;
}

int cmd_enumerate(const JobSpec& spec, Streams& s) {
    require_format(spec, {"csv", "json", "text"});
    const RingCtx r = RingCtx::parse(spec.ring.value_or("Zmod:2"));
    if (!(r == RingCtx::integers_mod(2))) {
        throw UsageError("enumerate supports Zmod:2 only");
    }
    require(spec.order.has_value(), "order");
    const ClassificationTable t = mod2_square_root_classes(*spec.order, spec.bound);
    if (spec.format == "json") {
        s.out << io::classification_to_json(t).dump(2) << '\n';
    } else {
        s.out << io::classification_to_csv(t);
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"Iterative roots in the substitution group and in the unit-diagonal Riordan group"};
    app.require_subcommand(1);
    JobSpec spec;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--ring", spec.ring, "Z, Q or Zmod:<m>");
        sub->add_option("--order", spec.order, "truncation order m");
        sub->add_option("--input", spec.input, "JSON document ('-' for stdin)");
        sub->add_option("--format", spec.format, "output format");
    };
    auto add_search = [&](CLI::App* sub) {
        sub->add_option("--n", spec.n, "root order");
        sub->add_option("--cap", spec.cap, std::string("branch cap (default from ") + kBranchCapEnv + " or 4096)");
        sub->add_flag("--no-branch", spec.no_branch, "follow only the smallest solution of non-unique steps");
    };

    auto* root = app.add_subcommand("root", "n-th iterative root of a series");
    add_common(root);
    add_search(root);
    root->add_option("--coeffs", spec.coeffs, "coefficients from x^0, comma separated");
    root->add_option("--preset", spec.preset, "sin, tan, expm1, geom1, xover1mx2");
    root->add_option("--offset", spec.offset, "first b-file index");

    auto* rroot = app.add_subcommand("rroot", "n-th root of a Riordan matrix R(f,g)");
    add_common(rroot);
    add_search(rroot);
    rroot->add_option("--f", spec.f, "coefficients of f");
    rroot->add_option("--g", spec.g, "coefficients of g");

    auto* verify = app.add_subcommand("verify", "check a claimed root by raising it to the n-th power");
    add_common(verify);
    verify->add_option("--n", spec.n, "root order");
    verify->add_option("--f", spec.f, "coefficients of f (Riordan mode)");
    verify->add_option("--g", spec.g, "coefficients of g");
    verify->add_option("--alpha", spec.alpha, "candidate alpha (Riordan mode)");
    verify->add_option("--omega", spec.omega, "candidate omega");

    auto* feas = app.add_subcommand("feasibility", "integer square-root feasibility ledger");
    add_common(feas);
    feas->add_option("--n", spec.n, "root order (default 2)");
    feas->add_option("--coeffs", spec.coeffs, "coefficients from x^0");

    auto* enumerate = app.add_subcommand("enumerate", "classify all squares in the substitution group over Z/2");
    add_common(enumerate);
    enumerate->add_option("--bound", spec.bound, "largest order accepted");

    auto* emit = app.add_subcommand("emit", "write the root's coefficients as a b-file");
    add_common(emit);
    add_search(emit);
    emit->add_option("--coeffs", spec.coeffs, "coefficients from x^0, comma separated");
    emit->add_option("--preset", spec.preset, "sin, tan, expm1, geom1, xover1mx2");
    emit->add_option("--offset", spec.offset, "first b-file index");
    emit->add_option("--output", spec.output, "output file (default stdout)");

    std::vector<const char*> argv{"iterroot"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    spec.command = app.get_subcommands().front()->get_name();
    if (spec.command == "enumerate" && spec.format == "text") {
        spec.format = "csv";
    }

    Streams s{out, err, in};
    try {
        if (spec.command == "root") return cmd_root(spec, s);
        if (spec.command == "rroot") return cmd_rroot(spec, s);
        if (spec.command == "verify") return cmd_verify(spec, s);
        if (spec.command == "feasibility") return cmd_feasibility(spec, s);
        if (spec.command == "enumerate") return cmd_enumerate(spec, s);
        if (spec.command == "emit") return cmd_emit(spec, s);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InternalInconsistency& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "error: malformed document: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "error: unknown command\n";
    return kExitUsage;
}

} // namespace iterroot::cli
