// padicgg: command-line front end for the p-adic hypergeometric toolkit.
//
//   padicgg gamma 1/3 --p 7 --K 4
//   padicgg gg --p 7 --r 1 --params "1/4,3/4;1/3,2/3" --t 3
//   padicgg count weier --p 7 --a 1 --b 1
//   padicgg verify mc --pmin 5 --pmax 13 --format json --out report.json

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padicgg/report.hpp"

using namespace padicgg;

namespace {

std::vector<Theorem> theorems_for(const std::string& which) {
    if (which == "mt1") return {Theorem::MT1};
    if (which == "cor2") return {Theorem::COR2_1, Theorem::COR2_2};
    if (which == "bs1") return {Theorem::BS1_1, Theorem::BS1_2};
    if (which == "mc") return {Theorem::MC};
    if (which == "hessian") return {Theorem::HESSIAN};
    if (which == "lemma31") return {Theorem::LEMMA31};
    if (which == "lemma5") return {Theorem::LEMMA5};
    if (which == "eq29") return {Theorem::EQ29};
    if (which == "gauss") return {Theorem::GAUSS_GK, Theorem::GAUSS_THETA, Theorem::GAUSS_DH};
    if (which == "ortho") return {Theorem::ORTHO};
    if (which == "all") return {std::begin(all_theorems), std::end(all_theorems)};
    throw error(errc::usage, "unknown check '" + which + "'");
}

int run_gamma(const std::string& x, std::uint32_t p, int K) {
    const PrecisionContext ctx(p, K);
    const GammaCache cache(ctx);
    const ZpElement g = gamma_p(Rational::parse(x), cache);
    std::cout << "Gamma_" << p << "(" << x << ") = " << g.residue() << " mod " << p << "^" << K << "  (symmetric "
              << g.symmetric() << ")\n";
    return 0;
}

int run_gg(std::uint32_t p, std::uint32_t r, int K, const std::string& params, const std::string& t_text) {
    const FqField F = FqField::build(p, r);
    if (K <= 0) K = default_precision(p, r);
    GParams g = GParams::parse(params);
    GEvaluator ev(F, K, g.n());
    const FqElement t = F.parse(t_text);
    const PadicNumber value = g_eval(ev, {g, t});
    const PadicNumber scaled = value.times(static_cast<std::int64_t>(F.q()));
    std::cout << "G    = " << render(value, K) << "\n";
    std::cout << "q*G  = " << render(scaled, K + static_cast<int>(r)) << "\n";
    try {
        const auto bound = static_cast<std::int64_t>(F.q()) * 4;
        std::cout << "q*G as integer in [-" << bound << ", " << bound << "]: " << recover_integer(scaled, bound) << "\n";
    } catch (const error& e) {
        std::cout << "q*G as integer: " << e.what() << "\n";
    }
    return 0;
}

int run_count(const std::string& kind, std::uint32_t p, std::uint32_t r, const std::string& a, const std::string& b,
              const std::string& d) {
    const FqField F = FqField::build(p, r);
    if (kind == "weier") {
        const WeierstrassCurve E(F, F.parse(a), F.parse(b));
        const CurveCount c = count_weierstrass(E, F);
        std::cout << "affine " << c.affine << "\nprojective " << c.projective << "\ntrace " << c.trace << "\nj "
                  << F.to_string(j_invariant(E, F)) << "\n";
        return 0;
    }
    const HessianCurve C(F, F.parse(d));
    std::cout << "affine " << count_hessian(C, F) << "\n";
    return 0;
}

int run_verify(const RangeSpec& spec, const std::string& format, const std::string& out_path) {
    suite_fields(spec); // reject empty ranges before opening the output
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw error(errc::usage, "cannot open '" + out_path + "' for writing");
    }
    std::ostream& out = out_path.empty() ? std::cout : file;
    std::unique_ptr<ReportWriter> writer;
    if (format == "json")
        writer = std::make_unique<JsonReportWriter>(out);
    else if (format == "csv")
        writer = std::make_unique<CsvReportWriter>(out);
    else
        writer = std::make_unique<TableReportWriter>(out);
    writer->begin(spec, utc_timestamp());
    const SuiteSummary summary = run_suite(spec, [&](const VerifyRecord& rec) { writer->record(rec); });
    writer->finish(summary);
    if (!out_path.empty())
        std::cerr << "total " << summary.total << ", passed " << summary.passed << ", failed " << summary.failed << ", skipped "
                  << summary.skipped << "\n";
    return summary.failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic hypergeometric functions: evaluation and identity verification"};
    app.require_subcommand(1);

    std::string gamma_x;
    std::uint32_t p = 7, r = 1;
    int K = 0;
    auto* gamma_cmd = app.add_subcommand("gamma", "Morita Gamma_p at a rational argument");
    gamma_cmd->add_option("x", gamma_x, "argument, e.g. 1/3")->required();
    gamma_cmd->add_option("--p", p, "odd prime")->required();
    gamma_cmd->add_option("--K", K, "precision p^K")->default_val(5);

    std::string params, t_text;
    auto* gg_cmd = app.add_subcommand("gg", "evaluate nGn[a; b | t]_q");
    gg_cmd->add_option("--p", p, "odd prime")->required();
    gg_cmd->add_option("--r", r, "extension degree")->default_val(1);
    gg_cmd->add_option("--K", K, "output precision (default rule when 0)")->default_val(0);
    gg_cmd->add_option("--params", params, "a1,..,an;b1,..,bn")->required();
    gg_cmd->add_option("--t", t_text, "argument in F_q: integer or c0,c1,..")->required();

    std::string count_kind, a_text = "0", b_text = "0", d_text = "0";
    auto* count_cmd = app.add_subcommand("count", "point counts over F_q");
    count_cmd->add_option("kind", count_kind, "weier | hessian")->required()->check(CLI::IsMember({"weier", "hessian"}));
    count_cmd->add_option("--p", p, "odd prime")->required();
    count_cmd->add_option("--r", r, "extension degree")->default_val(1);
    count_cmd->add_option("--a", a_text, "Weierstrass a");
    count_cmd->add_option("--b", b_text, "Weierstrass b");
    count_cmd->add_option("--d", d_text, "Hessian parameter");

    RangeSpec spec;
    std::string which, format = "table", out_path;
    std::uint64_t sample = 0;
    auto* verify_cmd = app.add_subcommand("verify", "run identity checks over a range of fields");
    verify_cmd->add_option("check", which, "mt1|cor2|bs1|mc|hessian|lemma31|lemma5|eq29|gauss|ortho|all")
        ->required()
        ->check(CLI::IsMember({"mt1", "cor2", "bs1", "mc", "hessian", "lemma31", "lemma5", "eq29", "gauss", "ortho", "all"}));
    verify_cmd->add_option("--pmin", spec.p_min, "smallest prime")->default_val(7);
    verify_cmd->add_option("--pmax", spec.p_max, "largest prime")->default_val(50);
    verify_cmd->add_option("--r", spec.r_values, "extension degrees, e.g. 1,2")->delimiter(',')->default_str("1,2");
    verify_cmd->add_option("--K", spec.K, "precision override (default rule when 0)")->default_val(0);
    verify_cmd->add_option("--qmax", spec.q_max, "skip fields with q above this")->default_val(2500);
    verify_cmd->add_option("--format", format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
    verify_cmd->add_option("--out", out_path, "write the report here instead of stdout");
    verify_cmd->add_option("--seed", spec.seed, "sampling seed")->default_val(1);
    auto* sample_opt = verify_cmd->add_option("--sample", sample, "instances per (check, field, branch); 0 = exhaustive");
    verify_cmd->add_flag("--allow-p5", spec.allow_p5, "run the Hessian count formula at p = 5");
    verify_cmd->add_flag("--timing", spec.timing, "record elapsed_ms (makes reports nondeterministic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gamma_cmd) return run_gamma(gamma_x, p, K);
        if (*gg_cmd) return run_gg(p, r, K, params, t_text);
        if (*count_cmd) return run_count(count_kind, p, r, a_text, b_text, d_text);
        if (*verify_cmd) {
            if (spec.r_values.empty()) spec.r_values = {1, 2};
            spec.theorems = theorems_for(which);
            if (*sample_opt) spec.sample = sample;
            return run_verify(spec, format, out_path);
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
