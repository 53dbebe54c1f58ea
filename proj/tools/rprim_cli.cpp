// Command-line front end: structure / bound / verify / scan / gamma-selftest
// / katz. Data goes to stdout as JSON lines (CSV behind --csv where it makes
// sense), summaries to stderr. Exit codes: 0 = success and property holds,
// 1 = computation succeeded but the property fails, 2 = usage or
// precondition error.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rprim/json_io.hpp"
#include "rprim/rprim.hpp"

namespace {

using namespace rprim;

u64 field_size_cap() {
    u64 cap = kMaxFieldSize;
    if (const char* env = std::getenv("RPRIM_MAX_FIELD")) {
        char* end = nullptr;
        u64 v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v < cap) cap = v;  // may lower, never raise
    }
    return cap;
}

PrimePower decompose_prime_power(u64 q) {
    auto pps = prime_powers_in(q, q);
    if (pps.empty()) throw std::invalid_argument("q must be a prime power");
    return pps[0];
}

FieldContext make_context(u64 q, int n) {
    PrimePower pp = decompose_prime_power(q);
    return FieldContext(pp.p, pp.k, n, field_size_cap());
}

int cmd_structure(u64 q, int n, u64 r) {
    RStructure st = compute_structure(q, n, r);
    std::cout << to_json(st).dump() << "\n";
    return 0;
}

int cmd_bound(int n, u64 r, u64 q_max, bool csv) {
    auto table = min_q_satisfying_bound(n, r, q_max);
    if (csv) {
        std::cout << "q,holds\n";
        for (const auto& v : table) std::cout << v.q << "," << (v.holds ? 1 : 0) << "\n";
    } else {
        for (const auto& v : table) {
            nlohmann::ordered_json j;
            j["q"] = v.q;
            j["holds"] = v.holds;
            std::cout << j.dump() << "\n";
        }
    }
    return 0;
}

int cmd_verify(u64 q, int n, u64 r, PropertyMode mode, const VerifyOptions& opts) {
    FieldContext ctx = make_context(q, n);
    PropertyReport rep = verify_property(ctx, r, mode, opts);
    std::cout << to_json(rep).dump() << "\n";
    std::cerr << "verify q=" << q << " n=" << n << " r=" << r << " mode=" << to_string(mode)
              << " -> " << (rep.pass ? "pass" : "FAIL") << " (" << rep.lines_checked
              << " lines, " << rep.elapsed_s << " s)\n";
    return rep.pass ? 0 : 1;
}

int cmd_scan(int n, u64 r, u64 q_lo, u64 q_hi, PropertyMode mode, const VerifyOptions& opts,
             bool csv) {
    ScanResult res = scan(n, r, q_lo, q_hi, mode, opts, field_size_cap());
    if (csv) {
        std::cout << "q,p,k,n,r,mode,pass,lines_checked,min_count,exceptions_total,elapsed_s\n";
        for (const PropertyReport& rep : res.reports)
            std::cout << rep.q << "," << rep.p << "," << rep.k << "," << rep.n << "," << rep.r
                      << "," << to_string(rep.mode) << "," << (rep.pass ? 1 : 0) << ","
                      << rep.lines_checked << "," << rep.min_count << "," << rep.exceptions_total
                      << "," << rep.elapsed_s << "\n";
    } else {
        for (const PropertyReport& rep : res.reports) std::cout << to_json(rep).dump() << "\n";
    }
    std::size_t failures = 0;
    for (const PropertyReport& rep : res.reports)
        if (!rep.pass) ++failures;
    std::cerr << "scan n=" << n << " r=" << r << " mode=" << to_string(mode) << " q in ["
              << q_lo << "," << q_hi << "]: " << res.reports.size() << " fields, " << failures
              << " failing";
    if (res.largest_failing_q)
        std::cerr << ", largest failing q in scanned range = " << *res.largest_failing_q;
    std::cerr << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_gamma_selftest(u64 q, int n, u64 r) {
    FieldContext ctx = make_context(q, n);
    CharSystem cs(ctx);
    RStructure st = compute_structure(ctx.q(), n, r);
    GammaExpansion ex = build_gamma_expansion(cs, st);
    double max_dev = 0, max_form_gap = 0;
    std::complex<double> total = 0;
    for (u64 a = 0; a < ctx.group_order(); ++a) {
        FieldElement x = ctx.exp(a);
        std::complex<double> expanded = gamma_expanded(cs, ex, x);
        std::complex<double> product = gamma_product_form(cs, st, x);
        double direct = ctx.is_r_primitive(x, r) ? 1.0 : 0.0;
        max_dev = std::max(max_dev, std::abs(expanded - direct));
        max_form_gap = std::max(max_form_gap, std::abs(expanded - product));
        total += expanded;
    }
    u64 expected_count = euler_phi(ctx.group_order() / r);
    double sum_err = std::abs(total - std::complex<double>((double)expected_count, 0));
    bool pass = max_dev < kIndicatorTol && max_form_gap < kIndicatorTol && sum_err < 1e-6;

    nlohmann::ordered_json j;
    j["q"] = ctx.q();
    j["n"] = n;
    j["r"] = r;
    j["max_deviation"] = max_dev;
    j["max_form_gap"] = max_form_gap;
    j["sum_error"] = sum_err;
    j["expected_count"] = expected_count;
    j["pass"] = pass;
    std::cout << j.dump() << "\n";
    return pass ? 0 : 1;
}

int cmd_katz(u64 q, int n) {
    FieldContext ctx = make_context(q, n);
    CharSystem cs(ctx);
    KatzResult res = katz_max_ratio(cs);
    std::cout << to_json(res).dump() << "\n";
    return res.ratio <= 1.0 + kIndicatorTol ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"r-primitive element translate/line property toolkit"};
    app.require_subcommand(1);

    u64 q = 0, r = 1, q_lo = 2, q_hi = 2, q_max = 100;
    int n = 2;
    std::string mode_str = "line";
    VerifyOptions opts;
    bool csv = false;

    auto* structure = app.add_subcommand("structure", "decomposition of (q^n-1, r)");
    structure->add_option("--q", q)->required();
    structure->add_option("--n", n)->required();
    structure->add_option("--r", r)->required();

    auto* bound = app.add_subcommand("bound", "sufficiency-bound verdicts over a q range");
    bound->add_option("--n", n)->required();
    bound->add_option("--r", r)->required();
    bound->add_option("--q-max", q_max)->required();
    bound->add_flag("--csv", csv);

    auto* verify = app.add_subcommand("verify", "verify the translate/line property for one field");
    verify->add_option("--q", q)->required();
    verify->add_option("--n", n)->required();
    verify->add_option("--r", r)->required();
    verify->add_option("--mode", mode_str)->check(CLI::IsMember({"translate", "line"}));
    verify->add_flag("--full-counts", opts.full_counts);
    verify->add_option("--max-exceptions", opts.max_exceptions);
    verify->add_option("--threads", opts.threads);

    auto* scan_cmd = app.add_subcommand("scan", "verify over all prime powers in a range");
    scan_cmd->add_option("--n", n)->required();
    scan_cmd->add_option("--r", r)->required();
    scan_cmd->add_option("--q-lo", q_lo)->required();
    scan_cmd->add_option("--q-hi", q_hi)->required();
    scan_cmd->add_option("--mode", mode_str)->check(CLI::IsMember({"translate", "line"}));
    scan_cmd->add_flag("--full-counts", opts.full_counts);
    scan_cmd->add_option("--max-exceptions", opts.max_exceptions);
    scan_cmd->add_option("--threads", opts.threads);
    scan_cmd->add_flag("--csv", csv);

    auto* selftest = app.add_subcommand("gamma-selftest",
                                        "character expansion vs direct order test");
    selftest->add_option("--q", q)->required();
    selftest->add_option("--n", n)->required();
    selftest->add_option("--r", r)->required();

    auto* katz = app.add_subcommand("katz", "exhaustive Katz-bound sweep");
    katz->add_option("--q", q)->required();
    katz->add_option("--n", n)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (structure->parsed()) return cmd_structure(q, n, r);
        if (bound->parsed()) return cmd_bound(n, r, q_max, csv);
        if (verify->parsed()) return cmd_verify(q, n, r, mode_from_string(mode_str), opts);
        if (scan_cmd->parsed())
            return cmd_scan(n, r, q_lo, q_hi, mode_from_string(mode_str), opts, csv);
        if (selftest->parsed()) return cmd_gamma_selftest(q, n, r);
        if (katz->parsed()) return cmd_katz(q, n);
    } catch (const std::exception& e) {
        std::cerr << "error: precondition: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
