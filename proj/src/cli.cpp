#include "ncairy/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "ncairy/config.hpp"
#include "ncairy/errors.hpp"
#include "ncairy/fredholm.hpp"
#include "ncairy/table.hpp"
#include "ncairy/tw.hpp"
#include "ncairy/verify.hpp"

namespace ncairy {

namespace {

// Relative bound on |nystrom - painleve| for `det --route both`.
constexpr double kRouteAgreement = 1e-6;

struct Flags {
    std::string config;
    int r = 1;
    std::vector<std::string> shifts, coupling, coupling_im;
    std::string kind = "airy2";
    std::string sign = "-1";
    std::string route = "both";
    double from = 0.0, to = 0.0, step = 0.0;
    int nodes = 40;
    double cutoff = 0.0;
    double s0 = 2.0;
    double tol = 1e-10;
    std::string format = "csv";
    std::uint64_t seed = 7;
    std::string out;
    std::string only;

    std::multimap<std::string, CLI::Option*> opts;
    bool given(const std::string& name) const {
        auto [lo, hi] = opts.equal_range(name);
        for (auto it = lo; it != hi; ++it)
            if (it->second->count() > 0) return true;
        return false;
    }
};

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += p + " ";
    return s;
}

void add_common(CLI::App* sub, Flags& f) {
    auto reg = [&](const std::string& name, CLI::Option* o) { f.opts.emplace(name, o); };
    reg("config", sub->add_option("--config", f.config, "Config file of key = value lines"));
    reg("r", sub->add_option("--r", f.r, "Matrix size r"));
    reg("shifts", sub->add_option("--shifts", f.shifts, "Shifts s_1..s_r (comma or blank separated)"));
    reg("coupling", sub->add_option("--coupling", f.coupling, "Real parts of C, row-major"));
    reg("coupling-im", sub->add_option("--coupling-im", f.coupling_im, "Imaginary parts of C, row-major"));
    reg("nodes", sub->add_option("--nodes", f.nodes, "Initial Gauss-Legendre nodes"));
    reg("cutoff", sub->add_option("--cutoff", f.cutoff, "Half-line truncation (0 = automatic)"));
    reg("s0", sub->add_option("--s0", f.s0, "Start of the Picard tail"));
    reg("tol", sub->add_option("--tol", f.tol, "Nystrom refinement tolerance"));
    reg("format", sub->add_option("--format", f.format, "Output format: csv or json"));
    reg("seed", sub->add_option("--seed", f.seed, "Seed for randomized checks"));
    reg("out", sub->add_option("--out", f.out, "Write the table to this file"));
}

void add_range(CLI::App* sub, Flags& f) {
    f.opts.emplace("from", sub->add_option("--from", f.from, "Range start"));
    f.opts.emplace("to", sub->add_option("--to", f.to, "Range end"));
    f.opts.emplace("step", sub->add_option("--step", f.step, "Range spacing"));
}

RunConfig build_config(const Flags& f) {
    RunConfig cfg;
    std::string path = f.config;
    if (path.empty())
        if (const char* env = std::getenv("NCAIRY_CONFIG")) path = env;
    if (!path.empty()) cfg = load_config_file(path, cfg);
    if (f.given("r")) cfg.r = f.r;
    if (f.given("shifts")) cfg.shifts = parse_number_list(join(f.shifts));
    if (f.given("coupling")) cfg.coupling_re = parse_number_list(join(f.coupling));
    if (f.given("coupling-im")) cfg.coupling_im = parse_number_list(join(f.coupling_im));
    if (f.given("nodes")) cfg.quad_nodes = f.nodes;
    if (f.given("cutoff")) cfg.quad_cutoff = f.cutoff;
    if (f.given("s0")) cfg.hm_s0 = f.s0;
    if (f.given("tol")) cfg.tol = f.tol;
    if (f.given("format")) cfg.output_format = parse_format(f.format);
    if (f.given("seed")) cfg.seed = f.seed;
    cfg.validate();
    return cfg;
}

Route parse_route(const std::string& s) {
    if (s == "nystrom") return Route::nystrom;
    if (s == "painleve") return Route::painleve;
    if (s == "both") return Route::both;
    throw DomainError("unknown route '" + s + "' (nystrom, painleve or both)");
}

int parse_sign(const std::string& s) {
    if (s == "+1" || s == "1" || s == "+") return 1;
    if (s == "-1" || s == "-") return -1;
    throw DomainError("sign must be +1 or -1");
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw IOError("cannot open '" + path + "' for writing");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

struct Range {
    double from, to, step;
};

Range range_of(const Flags& f, Range defaults) {
    Range r{f.given("from") ? f.from : defaults.from, f.given("to") ? f.to : defaults.to,
            f.given("step") ? f.step : defaults.step};
    if (!(r.step > 0.0)) throw DomainError("--step must be positive");
    if (!(r.to >= r.from)) throw DomainError("--to must not be below --from");
    return r;
}

std::vector<double> range_points(const Range& r) {
    std::size_t n = static_cast<std::size_t>(std::floor((r.to - r.from) / r.step + 1e-9)) + 1;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = r.from + r.step * static_cast<double>(i);
    return xs;
}

int cmd_det(const Flags& f, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    GapQuery q;
    q.s = cfg.shift_vector();
    q.c = cfg.coupling();
    q.route = parse_route(f.route);
    q.tol = cfg.tol;
    q.nodes = cfg.quad_nodes;
    q.cutoff = cfg.quad_cutoff;
    q.hm = cfg.hm_options();
    int sign = parse_sign(f.sign);
    GapResult res;
    if (f.kind == "airy2") {
        res = det_airy_sq(q);
    } else if (f.kind == "airy") {
        res = det_airy(q, sign);
    } else if (f.kind == "contour") {
        if (q.route != Route::nystrom) {
            GapQuery pq = q;
            pq.route = Route::painleve;
            res = det_airy(pq, sign);
        }
        if (q.route != Route::painleve) {
            NystromOptions o;
            o.tol = q.tol;
            res.nystrom = nystrom_det_contour(q.s, q.c, static_cast<double>(sign), q.nodes, 0.0, o);
        }
    } else {
        throw DomainError("unknown kind '" + f.kind + "' (airy, airy2 or contour)");
    }

    Table t;
    std::vector<cplx> row;
    if (res.nystrom) {
        t.columns.push_back({"nystrom", true});
        t.columns.push_back({"est_error", false});
        t.columns.push_back({"nodes", false});
        row.push_back(res.nystrom->value);
        row.push_back(res.nystrom->est_error);
        row.push_back(static_cast<double>(res.nystrom->nodes_used));
    }
    if (res.painleve) {
        t.columns.push_back({"painleve", true});
        row.push_back(*res.painleve);
    }
    if (res.nystrom && res.painleve) {
        t.columns.push_back({"difference", false});
        row.push_back(res.difference());
    }
    t.add_row(std::move(row));
    Output o(f.out, out);
    write_table(o.get(), t, cfg.output_format);
    if (res.nystrom && res.painleve && res.difference() > kRouteAgreement * std::abs(res.nystrom->value)) {
        err << "routes disagree: |difference| = " << format_number(res.difference()) << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_hm_solve(const Flags& f, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Range r = range_of(f, {-1.5, cfg.hm_s0, 0.1});
    std::shared_ptr<const HMGrid> grid;
    int code = kExitOk;
    try {
        grid = hm_solve(cfg.coupling(), cfg.shift_vector().offsets(), r.from, cfg.hm_options());
    } catch (const PoleEncountered& e) {
        grid = e.grid();
        err << "pole near S = " << format_number(e.pole_at()) << "; grid stops above it\n";
        code = kExitCheckFailed;
    }
    double to = std::min(r.to, grid->s_tail());
    Output o(f.out, out);
    write_table(o.get(), grid_table(*grid, r.from, to, r.step), cfg.output_format);
    return code;
}

int cmd_scalar(const Flags& f, const RunConfig& cfg, std::ostream& out, std::ostream& err, bool goe) {
    Range r = range_of(f, {-4.0, 4.0, 0.5});
    if (r.from < -8.0) throw DomainError("--from must be at least -8");
    ScalarChain chain(r.from, cfg.hm_options());
    Table t;
    t.columns = {{"x", false}, {goe ? "F1" : "F2", false}};
    int code = kExitOk;
    double prev = -1.0;
    for (double x : range_points(r)) {
        double v = goe ? chain.f1(x) : chain.f2(x);
        if (v < prev) {
            err << "distribution decreases at x = " << format_number(x) << '\n';
            code = kExitCheckFailed;
        }
        prev = v;
        t.add_row({x, v});
    }
    Output o(f.out, out);
    write_table(o.get(), t, cfg.output_format);
    return code;
}

int cmd_scan(const Flags& f, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Range r = range_of(f, {-4.0, 2.0, 0.25});
    int n = f.given("step") ? static_cast<int>(std::llround((r.to - r.from) / r.step)) + 1 : 25;
    ScanResult res = existence_scan(cfg.coupling(), r.from, r.to, n);
    Table t;
    t.columns = {{"s", false}, {"det", false}};
    for (const auto& [s, d] : res.samples) t.add_row({s, d});
    Output o(f.out, out);
    write_table(o.get(), t, cfg.output_format);
    if (res.crossing) err << "zero crossing at s = " << format_number(*res.crossing) << '\n';
    else err << "no zero crossing\n";
    return kExitOk;
}

int cmd_verify(const Flags& f, const RunConfig& cfg, std::ostream& out) {
    Output o(f.out, out);
    std::vector<CheckResult> res = run_verify(cfg.seed, o.get(), f.only);
    std::size_t passed = 0;
    for (const auto& r : res) passed += r.pass ? 1 : 0;
    o.get() << passed << "/" << res.size() << " checks passed\n";
    return passed == res.size() && !res.empty() ? kExitOk : kExitCheckFailed;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fredholm determinants of matrix Airy kernels and noncommutative Painleve II/XXXIV solutions",
                 "ncairy"};
    app.require_subcommand(1);
    Flags f;

    CLI::App* det = app.add_subcommand("det", "One determinant by the chosen routes");
    add_common(det, f);
    det->add_option("--kind", f.kind, "airy: det(Id + sign Ai), airy2: det(Id - Ai^2), contour: contour form")
        ->check(CLI::IsMember({"airy", "airy2", "contour"}));
    det->add_option("--sign", f.sign, "Sign for --kind airy/contour: +1 or -1");
    det->add_option("--route", f.route, "nystrom, painleve or both")
        ->check(CLI::IsMember({"nystrom", "painleve", "both"}));

    CLI::App* hm = app.add_subcommand("hm-solve", "Hastings-McLeod grid samples");
    add_common(hm, f);
    add_range(hm, f);

    CLI::App* f1 = app.add_subcommand("f1", "Table of F1 over an x range");
    add_common(f1, f);
    add_range(f1, f);

    CLI::App* f2 = app.add_subcommand("f2", "Table of F2 over an x range");
    add_common(f2, f);
    add_range(f2, f);

    CLI::App* scan = app.add_subcommand("scan", "det(Id - Ai^2) along s = (s, ..., s)");
    add_common(scan, f);
    add_range(scan, f);

    CLI::App* verify = app.add_subcommand("verify", "Run the property suite");
    add_common(verify, f);
    verify->add_option("--only", f.only, "Run checks whose name starts with this prefix");

    std::vector<std::string> argv_store{"ncairy"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        RunConfig cfg = build_config(f);
        if (det->parsed()) return cmd_det(f, cfg, out, err);
        if (hm->parsed()) return cmd_hm_solve(f, cfg, out, err);
        if (f1->parsed()) return cmd_scalar(f, cfg, out, err, true);
        if (f2->parsed()) return cmd_scalar(f, cfg, out, err, false);
        if (scan->parsed()) return cmd_scan(f, cfg, out, err);
        if (verify->parsed()) return cmd_verify(f, cfg, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const OutOfRange& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const IOError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitBadInput;
}

int run_command(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_command(args, std::cout, std::cerr);
}

} // namespace ncairy
