#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "growth/classify.hpp"
#include "growth/embedding.hpp"
#include "growth/errors.hpp"
#include "growth/format.hpp"
#include "growth/interpolate.hpp"
#include "growth/parallel.hpp"
#include "growth/spec.hpp"
#include "growth/witness.hpp"

namespace {

constexpr const char* kGrammar =
    "function spec grammar:\n"
    "  spec    := atom | interp | \"inv(\" spec \")\"\n"
    "  atom    := \"pow:\" num | \"powlog:\" num \":\" num | \"expm1\" | \"dexp\"\n"
    "  interp  := (\"geo\" | \"invgeo\") \"(\" spec \",\" spec \",\" num \")\"\n"
    "  num     := decimal literal, optional sign and exponent\n"
    "examples: pow:2   powlog:2:1   invgeo(pow:2,pow:4,0.5)   inv(expm1)\n"
    "defaults: --alpha 0, --beta 2, --t-min 1e-6, --t-max 1e12, --grid 2048,\n"
    "          --quad 512, --theta per command, --t-domain per command";

// Exit codes: 0 success, 1 hypothesis-not-met or property violation,
// 2 usage error, 3 numeric failure.
enum ExitCode { kOk = 0, kPropertyFail = 1, kUsage = 2, kNumeric = 3 };

struct CommonOpts {
    double t_min = 1e-6;
    double t_max = 1e12;
    int grid = 2048;
    std::string t_domain = "from-one";

    growth::GridConfig cfg() const {
        growth::GridConfig c;
        c.x_min = std::log(t_min);
        c.x_max = std::log(t_max);
        c.n_points = grid;
        return c;
    }
    growth::TDomain domain() const {
        if (t_domain == "all-positive") return growth::TDomain::all_positive;
        if (t_domain == "from-one") return growth::TDomain::from_one;
        throw growth::DomainError("unknown t-domain: " + t_domain);
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, const std::string& domain_default) {
    o.t_domain = domain_default;
    cmd->add_option("--t-min", o.t_min, "lower end of the t sampling window")
        ->capture_default_str();
    cmd->add_option("--t-max", o.t_max, "upper end of the t sampling window")
        ->capture_default_str();
    cmd->add_option("--grid", o.grid, "number of log-uniform samples")->capture_default_str();
    cmd->add_option("--t-domain", o.t_domain, "criterion domain: all-positive or from-one")
        ->check(CLI::IsMember({"all-positive", "from-one"}))
        ->capture_default_str();
}

void note_boundary_weights(double alpha, double beta) {
    if (alpha == -1.0)
        std::cout << "note = alpha at the Hardy-limit boundary (-1)\n";
    if (beta == -1.0)
        std::cout << "note = beta at the boundary (-1); accepted with this diagnostic\n";
}

bool parse_alpha_range(const std::string& text, double& lo, double& hi, int& n) {
    std::istringstream ss(text);
    char c1 = 0, c2 = 0;
    if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':') return false;
    std::string rest;
    return !(ss >> rest);
}

std::vector<growth::TestFunction> make_family(const std::vector<double>& cs) {
    std::vector<growth::TestFunction> fam;
    for (double c : cs) fam.push_back({c, 1.0});
    return fam;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw growth::Error("cannot open output file: " + path);
    out << content;
}

int run_verify_all();

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"growth-function calculus: classification, embedding criteria, phase"
                 " boundaries, geodesic interpolation and disk-quadrature witnesses"};
    app.footer(kGrammar);
    app.require_subcommand(1);

    std::string spec_a, spec_b, spec_c, spec_d;
    double alpha = 0.0, beta = 2.0;
    std::vector<double> alphas, betas, thetas, cs;
    std::string alpha_range, out_path, svg_path;
    int quad_n = 512;
    CommonOpts common;

    int exit_status = kOk;

    auto* classify_cmd = app.add_subcommand("classify", "full class report for one function");
    classify_cmd->footer(kGrammar);
    classify_cmd->add_option("spec", spec_a, "function spec")->required();
    CommonOpts classify_opts;
    add_common(classify_cmd, classify_opts, "all-positive");
    classify_cmd->callback([&] {
        const auto rep = growth::classify(growth::parse_spec(spec_a), classify_opts.cfg());
        std::cout << rep.to_text();
    });

    auto* indices_cmd =
        app.add_subcommand("indices", "Matuszewska-Orlicz index estimates for one function");
    indices_cmd->footer(kGrammar);
    indices_cmd->add_option("spec", spec_a, "function spec")->required();
    CommonOpts indices_opts;
    add_common(indices_cmd, indices_opts, "all-positive");
    indices_cmd->callback([&] {
        const auto idx = growth::matuszewska_indices(growth::parse_spec(spec_a),
                                                     indices_opts.cfg());
        growth::KeyValueBlock kv;
        kv.add("a_index", idx.a);
        kv.add("b_index", idx.b);
        kv.add("arg_a", idx.arg_a);
        kv.add("arg_b", idx.arg_b);
        kv.add("slope_left", idx.slope_left);
        kv.add("slope_right", idx.slope_right);
        kv.add("used_x_min", idx.used_x_min);
        kv.add("used_x_max", idx.used_x_max);
        kv.add("window_clipped", idx.window_clipped);
        std::cout << kv.str();
    });

    auto* cmin_cmd = app.add_subcommand("cmin", "minimal embedding constant for a pair");
    cmin_cmd->footer(kGrammar);
    cmin_cmd->add_option("phi", spec_a, "source function spec")->required();
    cmin_cmd->add_option("psi", spec_b, "target function spec")->required();
    cmin_cmd->add_option("--alpha", alpha, "source weight exponent")->capture_default_str();
    cmin_cmd->add_option("--beta", beta, "target weight exponent")->capture_default_str();
    CommonOpts cmin_opts;
    add_common(cmin_cmd, cmin_opts, "from-one");
    cmin_cmd->callback([&] {
        growth::EmbeddingParams p;
        p.alpha = alpha;
        p.beta = beta;
        p.t_domain = cmin_opts.domain();
        p.validate();
        note_boundary_weights(alpha, beta);
        const auto r = growth::cmin(growth::parse_spec(spec_a), growth::parse_spec(spec_b), p,
                                    cmin_opts.cfg());
        std::cout << "t_domain = " << growth::to_cstring(p.t_domain) << "\n";
        std::cout << "cmin = " << growth::format_real(r.value) << "\n" << r.to_text();
    });

    auto* member_cmd =
        app.add_subcommand("member", "membership of a pair in the admissible sets");
    member_cmd->footer(kGrammar);
    member_cmd->add_option("phi", spec_a, "source function spec")->required();
    member_cmd->add_option("psi", spec_b, "target function spec")->required();
    member_cmd->add_option("--alpha", alpha, "source weight exponent")->capture_default_str();
    member_cmd->add_option("--beta", beta, "target weight exponent")->capture_default_str();
    CommonOpts member_opts;
    add_common(member_cmd, member_opts, "all-positive");
    member_cmd->callback([&] {
        growth::EmbeddingParams p;
        p.alpha = alpha;
        p.beta = beta;
        p.t_domain = member_opts.domain();
        p.validate();
        note_boundary_weights(alpha, beta);
        const auto phi = growth::parse_spec(spec_a);
        const auto psi = growth::parse_spec(spec_b);
        std::cout << "t_domain = " << growth::to_cstring(p.t_domain) << "\n";
        const auto f = growth::member_F(phi, psi, p, member_opts.cfg());
        std::cout << "member_F = " << growth::format_bool(f.member) << "\n";
        std::cout << "cmin = " << growth::format_real(f.certificate.value) << "\n";
        const auto e = growth::member_E(phi, psi, p, member_opts.cfg());
        std::cout << "member_E = " << growth::format_bool(e.member) << "\n";
        std::cout << "C = " << growth::format_real(e.C) << "\n";
        std::cout << "K = " << growth::format_real(e.K) << "\n";
    });

    auto* beta_cmd = app.add_subcommand("beta-star", "minimal admissible beta for an alpha");
    beta_cmd->footer(kGrammar);
    beta_cmd->add_option("phi", spec_a, "source function spec")->required();
    beta_cmd->add_option("psi", spec_b, "target function spec")->required();
    beta_cmd->add_option("--alpha", alpha, "weight exponent")->capture_default_str();
    CommonOpts beta_opts;
    add_common(beta_cmd, beta_opts, "from-one");
    beta_cmd->callback([&] {
        note_boundary_weights(alpha, 0.0);
        const auto r = growth::beta_star(growth::parse_spec(spec_a), growth::parse_spec(spec_b),
                                         alpha, beta_opts.cfg(), beta_opts.domain());
        std::cout << "t_domain = " << beta_opts.t_domain << "\n" << r.to_text();
    });

    auto run_boundary = [&](bool with_svg) {
        double lo = 0.0, hi = 2.0;
        int n = 9;
        if (!alpha_range.empty() && !parse_alpha_range(alpha_range, lo, hi, n))
            throw CLI::ValidationError("--alpha-range", "expected lo:hi:n");
        const auto curve =
            growth::boundary_sweep(growth::parse_spec(spec_a), growth::parse_spec(spec_b), lo, hi,
                                   n, common.cfg(), common.domain());
        std::cout << curve.to_text();
        std::ostringstream csv;
        growth::write_boundary_csv(csv, curve);
        if (out_path.empty())
            std::cout << csv.str();
        else
            write_file(out_path, csv.str());
        if (with_svg) {
            std::ostringstream svg;
            growth::write_boundary_svg(svg, curve);
            write_file(svg_path.empty() ? "diagram.svg" : svg_path, svg.str());
        }
        if (!curve.violations.empty()) exit_status = kPropertyFail;
    };

    auto* boundary_cmd = app.add_subcommand("boundary", "sweep beta*(alpha) and emit CSV");
    boundary_cmd->footer(kGrammar);
    boundary_cmd->add_option("phi", spec_a, "source function spec")->required();
    boundary_cmd->add_option("psi", spec_b, "target function spec")->required();
    boundary_cmd->add_option("--alpha-range", alpha_range, "alpha sweep as lo:hi:n")
        ->default_str("0:2:9");
    boundary_cmd->add_option("--out", out_path, "CSV output path (stdout when absent)");
    add_common(boundary_cmd, common, "from-one");
    boundary_cmd->callback([&] { run_boundary(false); });

    auto* diagram_cmd = app.add_subcommand("diagram", "boundary sweep plus SVG phase diagram");
    diagram_cmd->footer(kGrammar);
    diagram_cmd->add_option("phi", spec_a, "source function spec")->required();
    diagram_cmd->add_option("psi", spec_b, "target function spec")->required();
    diagram_cmd->add_option("--alpha-range", alpha_range, "alpha sweep as lo:hi:n")
        ->default_str("0:2:9");
    diagram_cmd->add_option("--out", out_path, "CSV output path (stdout when absent)");
    diagram_cmd->add_option("--svg", svg_path, "SVG output path (diagram.svg when absent)");
    CommonOpts diagram_opts;
    add_common(diagram_cmd, diagram_opts, "from-one");
    diagram_cmd->callback([&] {
        common = diagram_opts;
        run_boundary(true);
    });

    auto* interp_cmd = app.add_subcommand(
        "interp-check",
        "2 specs: type propagation + ratio monotonicity; 4 specs: interpolated-pair ratios");
    interp_cmd->footer(kGrammar);
    std::vector<std::string> interp_specs;
    interp_cmd->add_option("spec", interp_specs, "two or four function specs")
        ->expected(2, 4)
        ->required();
    interp_cmd->add_option("--theta", thetas, "interpolation weights (repeatable)");
    CommonOpts interp_opts;
    add_common(interp_cmd, interp_opts, "all-positive");
    interp_cmd->callback([&] {
        const auto cfg = interp_opts.cfg();
        std::vector<double> th = thetas.empty() ? std::vector<double>{0.25, 0.5, 0.75} : thetas;
        if (interp_specs.size() == 2) {
            const auto left = growth::parse_spec(interp_specs[0]);
            const auto right = growth::parse_spec(interp_specs[1]);
            bool ok = true;
            for (double t : th) {
                const auto rep = growth::check_type_propagation(left, right, t, cfg);
                std::cout << "== type propagation, theta = " << growth::format_real(t)
                          << " ==\n"
                          << rep.to_text();
                ok = ok && rep.passed;
            }
            const auto rm = growth::ratio_monotonicity(left, right, cfg);
            std::cout << "== ratio monotonicity ==\n" << rm.to_text();
            ok = ok && rm.passed;
            if (!ok) exit_status = kPropertyFail;
        } else if (interp_specs.size() == 4) {
            const auto rep = growth::interp_ratio_preservation(
                growth::parse_spec(interp_specs[0]), growth::parse_spec(interp_specs[1]),
                growth::parse_spec(interp_specs[2]), growth::parse_spec(interp_specs[3]), th, cfg);
            std::cout << rep.to_text();
            if (!rep.passed) exit_status = kPropertyFail;
        } else {
            throw CLI::ValidationError("interp-check", "expects exactly 2 or 4 specs");
        }
    });

    auto* ve_cmd = app.add_subcommand(
        "verify-e", "convexity of the admissible weight set between two (alpha,beta) pairs");
    ve_cmd->footer(kGrammar);
    ve_cmd->add_option("phi", spec_a, "source function spec")->required();
    ve_cmd->add_option("psi", spec_b, "target function spec")->required();
    ve_cmd->add_option("--alpha", alphas, "two alpha values (default 0 2)")->expected(0, 2);
    ve_cmd->add_option("--beta", betas, "two beta values (default 2 6)")->expected(0, 2);
    ve_cmd->add_option("--theta", thetas, "interpolation weights (default 0.1..0.9)");
    CommonOpts ve_opts;
    add_common(ve_cmd, ve_opts, "all-positive");
    ve_cmd->callback([&] {
        std::vector<double> as = alphas.empty() ? std::vector<double>{0, 2} : alphas;
        std::vector<double> bs = betas.empty() ? std::vector<double>{2, 6} : betas;
        if (as.size() != 2 || bs.size() != 2)
            throw CLI::ValidationError("verify-e", "needs two --alpha and two --beta values");
        std::vector<double> th = thetas;
        if (th.empty())
            for (int i = 1; i <= 9; ++i) th.push_back(0.1 * i);
        const auto rep = growth::verify_E_convexity(
            growth::parse_spec(spec_a), growth::parse_spec(spec_b), {as[0], bs[0]},
            {as[1], bs[1]}, th, ve_opts.cfg(), ve_opts.domain());
        std::cout << "t_domain = " << ve_opts.t_domain << "\n" << rep.to_text();
        if (!rep.passed) exit_status = kPropertyFail;
    });

    auto* vf_cmd = app.add_subcommand(
        "verify-f", "log-convexity of the admissible pair set along inverse geodesics");
    vf_cmd->footer(kGrammar);
    vf_cmd->add_option("phi0", spec_a, "first pair, source")->required();
    vf_cmd->add_option("psi0", spec_b, "first pair, target")->required();
    vf_cmd->add_option("phi1", spec_c, "second pair, source")->required();
    vf_cmd->add_option("psi1", spec_d, "second pair, target")->required();
    vf_cmd->add_option("--alpha", alpha, "source weight exponent")->capture_default_str();
    vf_cmd->add_option("--beta", beta, "target weight exponent")->capture_default_str();
    vf_cmd->add_option("--theta", thetas, "interpolation weights (default 0.25 0.5 0.75)");
    CommonOpts vf_opts;
    add_common(vf_cmd, vf_opts, "from-one");
    vf_cmd->callback([&] {
        growth::EmbeddingParams p;
        p.alpha = alpha;
        p.beta = beta;
        p.t_domain = vf_opts.domain();
        p.validate();
        std::vector<double> th = thetas.empty() ? std::vector<double>{0.25, 0.5, 0.75} : thetas;
        const auto rep = growth::verify_F_logconvexity(
            growth::parse_spec(spec_a), growth::parse_spec(spec_b), growth::parse_spec(spec_c),
            growth::parse_spec(spec_d), p, th, vf_opts.cfg());
        std::cout << "t_domain = " << vf_opts.t_domain << "\n" << rep.to_text();
        if (!rep.passed) exit_status = kPropertyFail;
    });

    auto* lux_cmd = app.add_subcommand("lux", "Luxembourg quasi-norms of the disk test family");
    lux_cmd->footer(kGrammar);
    lux_cmd->add_option("phi", spec_a, "function spec")->required();
    lux_cmd->add_option("--alpha", alpha, "weight exponent (> -1)")->default_val(0.0);
    lux_cmd->add_option("--c", cs, "singularity strengths (repeatable; default 0 0.5)");
    lux_cmd->add_option("--quad", quad_n, "quadrature nodes per direction")->capture_default_str();
    lux_cmd->callback([&] {
        growth::QuadConfig q;
        q.n_radial = quad_n;
        q.n_angular = quad_n;
        const auto phi = growth::parse_spec(spec_a);
        const std::vector<double> use = cs.empty() ? std::vector<double>{0.0, 0.5} : cs;
        for (double c : use) {
            const auto r = growth::lux_norm({c, 1.0}, phi, alpha, q);
            std::cout << "c = " << growth::format_real(c) << "\n" << r.to_text();
        }
    });

    auto* witness_cmd = app.add_subcommand(
        "witness", "norm-ratio evidence for an embedding over the disk test family");
    witness_cmd->footer(kGrammar);
    witness_cmd->add_option("phi", spec_a, "source function spec")->required();
    witness_cmd->add_option("psi", spec_b, "target function spec")->required();
    witness_cmd->add_option("--alpha", alpha, "source weight exponent (> -1)")->default_val(0.0);
    witness_cmd->add_option("--beta", beta, "target weight exponent (> -1)")
        ->capture_default_str();
    witness_cmd->add_option("--c", cs, "singularity strengths (default 0 0.1 .. 0.9)");
    witness_cmd->add_option("--quad", quad_n, "quadrature nodes per direction")
        ->capture_default_str();
    witness_cmd->add_option("--out", out_path, "CSV output path (stdout when absent)");
    witness_cmd->callback([&] {
        growth::QuadConfig q;
        q.n_radial = quad_n;
        q.n_angular = quad_n;
        std::vector<double> use = cs;
        if (use.empty())
            for (int i = 0; i <= 9; ++i) use.push_back(0.1 * i);
        const auto fam = make_family(use);
        const auto rep = growth::witness_embedding(growth::parse_spec(spec_a),
                                                   growth::parse_spec(spec_b), alpha, beta, fam, q);
        std::cout << rep.to_text();
        std::ostringstream csv;
        growth::write_witness_csv(csv, rep);
        if (out_path.empty())
            std::cout << csv.str();
        else
            write_file(out_path, csv.str());
    });

    auto* all_cmd = app.add_subcommand(
        "verify-all", "run the built-in property matrix and print PASS/FAIL per property");
    all_cmd->footer(kGrammar);
    all_cmd->callback([&] { exit_status = run_verify_all(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const growth::ParseError& e) {
        std::cerr << "spec error: " << e.what() << "\n" << kGrammar << "\n";
        return kUsage;
    } catch (const growth::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kUsage;
    } catch (const growth::Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    }
    return exit_status;
}

namespace {

int run_verify_all() {
    using namespace growth;
    int failures = 0;
    auto report = [&failures](const char* name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    const GridConfig cfg;
    const auto p1 = pow_spec(1), p2 = pow_spec(2), p3 = pow_spec(3), p4 = pow_spec(4),
               p6 = pow_spec(6), phalf = pow_spec(0.5);
    const auto pl21 = powlog_spec(2, 1), em1 = expm1_spec(), de = dexp_spec();

    { // power-pair criterion
        EmbeddingParams p;
        p.alpha = 0;
        p.beta = 2;
        p.t_domain = TDomain::from_one;
        const auto r = cmin(p2, p4, p, cfg);
        p.beta = 2 - 1e-2;
        const auto r2 = cmin(p2, p4, p, cfg);
        report("power_pair_criterion", std::fabs(r.value - 1.0) <= 1e-9 && !r2.finite,
               "cmin = " + format_real(r.value));
    }
    { // boundary line
        const auto curve = boundary_sweep(p2, p4, 0.0, 2.0, 9, cfg);
        double err = 0.0;
        for (const auto& s : curve.samples) err = std::max(err, std::fabs(s.beta - (2 * s.alpha + 2)));
        report("boundary_line", err <= 1e-3 && curve.violations.empty(),
               "max error " + format_real(err));
    }
    {
        std::vector<double> th;
        for (int i = 1; i <= 9; ++i) th.push_back(0.1 * i);
        const auto rep = verify_E_convexity(p2, p4, {0, 2}, {2, 6}, th, cfg);
        report("weight_set_convexity", rep.passed && rep.hypothesis_met);
    }
    {
        EmbeddingParams p;
        p.alpha = 0;
        p.beta = 2;
        p.t_domain = TDomain::from_one;
        const std::vector<std::pair<SpecPtr, SpecPtr>> pairs = {{p2, p4}, {p3, p6}, {em1, p1}};
        bool ok = true;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = 0; j < pairs.size(); ++j) {
                if (i == j) continue;
                ok = ok && verify_F_logconvexity(pairs[i].first, pairs[i].second, pairs[j].first,
                                                 pairs[j].second, p, {0.25, 0.5, 0.75}, cfg)
                               .passed;
            }
        report("pair_set_logconvexity", ok);
    }
    {
        const auto a = check_type_propagation(p2, p4, 0.5, cfg);
        const auto b = check_type_propagation(pl21, p4, 0.5, cfg);
        const auto c = check_type_propagation(phalf, p1, 0.5, cfg);
        report("type_propagation",
               a.passed && b.passed && c.passed && std::fabs(a.q_interp - 3.0) <= 1e-9);
    }
    {
        bool ok = true;
        for (const auto& s : {phalf, p3, em1, pl21, de}) ok = ok && duality_check(s, cfg).passed;
        report("dlog_duality", ok);
    }
    {
        const auto [cm_pow, cp_pow] = dlog_constants(p3, cfg);
        const auto [cm_e, cp_e] = dlog_constants(em1, cfg);
        const auto [cm_pl, cp_pl] = dlog_constants(pl21, cfg);
        const auto [cm_d, cp_d] = dlog_constants(de, cfg);
        const bool ok = std::fabs(cm_pow - 1) <= 1e-9 && std::fabs(cp_pow - 1) <= 1e-9 &&
                        cm_e <= 1 + 1e-6 && cp_pl <= 1 + 1e-6 && std::isfinite(cm_d);
        report("catalog_dlog_classes", ok);
    }
    {
        bool ok = true;
        for (double p : {0.5, 1.0, 2.0, 7.0}) {
            const auto idx = matuszewska_indices(pow_spec(p), cfg);
            ok = ok && std::fabs(idx.a - p) <= 1e-9 && std::fabs(idx.b - p) <= 1e-9;
        }
        GridConfig wide = cfg;
        wide.x_min = -40.0;
        wide.x_max = 1e4;
        const auto ipl = matuszewska_indices(pl21, wide);
        ok = ok && std::fabs(ipl.a - 2) <= 1e-3 && std::fabs(ipl.b - 3) <= 1e-3;
        for (const auto& s : {p2, pl21, em1}) {
            const auto fwd = matuszewska_indices(s, cfg);
            const auto inv = matuszewska_indices(inverse_spec(s), map_window_through(s, cfg));
            ok = ok && std::fabs(inv.a * fwd.b - 1.0) <= 1e-6;
        }
        report("matuszewska_indices", ok);
    }
    {
        bool ok = ratio_monotonicity(p2, p4, cfg).passed && ratio_monotonicity(p1, em1, cfg).passed &&
                  !ratio_monotonicity(p4, p2, cfg).hypothesis_met;
        ok = ok && interp_ratio_preservation(p2, p4, p3, p6, {0.25, 0.5, 0.75}, cfg).passed;
        ok = ok && interp_ratio_preservation(p1, em1, p2, p4, {0.25, 0.5, 0.75}, cfg).passed;
        report("ratio_monotonicity", ok);
    }
    {
        QuadConfig q;
        q.n_radial = 256;
        q.n_angular = 256;
        const auto r = lux_norm({0.0, 1.0}, em1, 0.0, q);
        bool ok = std::fabs(r.lambda * std::log(2.0) - 1.0) <= 1e-8;
        for (double a : {0.0, 1.0, 2.5})
            ok = ok && std::fabs(weighted_integral({0.0, 2.0}, p1, a, 2.0, q) - 1.0) <= 1e-10;
        report("luxembourg_norms", ok, "const expm1 norm " + format_real(r.lambda));
    }
    {
        QuadConfig q;
        q.n_radial = 256;
        q.n_angular = 256;
        QuadConfig q2;
        q2.n_radial = 512;
        q2.n_angular = 512;
        std::vector<TestFunction> fam;
        for (int i = 0; i <= 9; ++i) fam.push_back({0.1 * i, 1.0});
        const auto w1 = witness_embedding(p2, p4, 0, 2, fam, q);
        const auto w2 = witness_embedding(p2, p4, 0, 2, fam, q2);
        const bool ok = w1.excluded_count == 0 && std::isfinite(w1.max_ratio) &&
                        std::fabs(w2.max_ratio / w1.max_ratio - 1.0) < 1e-3;
        report("embedding_witness", ok, "max ratio " + format_real(w1.max_ratio));
    }
    {
        std::string serial_out, omp_out;
        {
            par::ModeGuard g(par::Mode::serial);
            serial_out = classify(pl21, cfg).to_text();
        }
        {
            par::ModeGuard g(par::Mode::openmp);
            omp_out = classify(pl21, cfg).to_text();
        }
        report("determinism", serial_out == omp_out);
    }

    std::cout << (failures == 0 ? "ALL PASS" : "FAILURES: " + std::to_string(failures)) << "\n";
    return failures == 0 ? kOk : kPropertyFail;
}

} // namespace
