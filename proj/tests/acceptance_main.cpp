// Acceptance suite: runs every shipped correctness criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion. Exit code is the
// number of failures. Pass --cli <path-to-growthtool> to include the
// process-level byte-determinism checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "growth/classify.hpp"
#include "growth/embedding.hpp"
#include "growth/errors.hpp"
#include "growth/format.hpp"
#include "growth/interpolate.hpp"
#include "growth/parallel.hpp"
#include "growth/spec.hpp"
#include "growth/witness.hpp"

using namespace growth;

namespace {

std::string g_cli_path;
int g_failures = 0;

void criterion(int number, const char* name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %2d  %-28s  [%5.1f s]%s%s\n", ok ? "PASS" : "FAIL", number, name,
                secs, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

EmbeddingParams params(double a, double b, TDomain d) {
    EmbeddingParams p;
    p.alpha = a;
    p.beta = b;
    p.t_domain = d;
    return p;
}

QuadConfig quad(int n) {
    QuadConfig q;
    q.n_radial = n;
    q.n_angular = n;
    return q;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool run_cli(const std::string& args, const std::string& out_file, int threads) {
    const std::string cmd = "OMP_NUM_THREADS=" + std::to_string(threads) + " " + g_cli_path + " " +
                            args + " > " + out_file + " 2>&1";
    return std::system(cmd.c_str()) == 0;
}

// ---------------------------------------------------------------------------

bool c1_power_pair(std::string& detail) {
    const GridConfig cfg;
    const auto on = cmin(pow_spec(2), pow_spec(4), params(0, 2, TDomain::from_one), cfg);
    const auto off = cmin(pow_spec(2), pow_spec(4), params(0, 2 - 1e-2, TDomain::from_one), cfg);
    detail = "cmin = " + format_real(on.value);
    return on.finite && std::fabs(on.value - 1.0) <= 1e-9 && !off.finite;
}

bool c2_boundary(std::string& detail) {
    const GridConfig cfg;
    const auto curve = boundary_sweep(pow_spec(2), pow_spec(4), 0.0, 2.0, 21, cfg);
    double err = 0.0;
    for (const auto& s : curve.samples) {
        if (s.failed) return false;
        err = std::max(err, std::fabs(s.beta - (2.0 * s.alpha + 2.0)));
    }
    detail = "max |beta* - (2a+2)| = " + format_real(err) + ", violations " +
             std::to_string(curve.violations.size());
    return err <= 1e-3 && curve.violations.empty();
}

bool c3_weight_set_convexity(std::string& detail) {
    const GridConfig cfg;
    std::vector<double> thetas;
    for (int i = 1; i <= 9; ++i) thetas.push_back(0.1 * i);
    const auto rep = verify_E_convexity(pow_spec(2), pow_spec(4), {0, 2}, {2, 6}, thetas, cfg,
                                        TDomain::all_positive);
    double worst = 0.0;
    for (const auto& e : rep.entries) worst = std::max(worst, e.achieved_C);
    detail = "worst C_theta = " + format_real(worst);
    return rep.hypothesis_met && rep.passed && worst <= 1.0 + 1e-6;
}

bool c4_pair_set_logconvexity(std::string& detail) {
    const GridConfig cfg;
    const auto p = params(0, 2, TDomain::from_one);
    const std::vector<std::pair<SpecPtr, SpecPtr>> pairs = {
        {pow_spec(2), pow_spec(4)}, {pow_spec(3), pow_spec(6)}, {expm1_spec(), pow_spec(1)}};
    int runs = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            if (i == j) continue;
            const auto rep =
                verify_F_logconvexity(pairs[i].first, pairs[i].second, pairs[j].first,
                                      pairs[j].second, p, {0.25, 0.5, 0.75}, cfg);
            if (!rep.endpoints_member || !rep.passed) {
                detail = "pair combination " + std::to_string(i) + "x" + std::to_string(j);
                return false;
            }
            ++runs;
        }
    detail = std::to_string(runs) + " pair combinations x 3 thetas";
    return true;
}

bool c5_type_propagation(std::string& detail) {
    const GridConfig cfg;
    const auto power = check_type_propagation(pow_spec(2), pow_spec(4), 0.5, cfg);
    if (!(power.passed && std::fabs(power.q_interp - 3.0) <= 1e-9 &&
          std::fabs(power.p_interp - 3.0) <= 1e-9))
        return false;
    const auto lower = check_type_propagation(pow_spec(0.5), pow_spec(1), 0.5, cfg);
    if (!(lower.passed && std::fabs(lower.p_interp - 0.75) <= 1e-9)) return false;
    const auto mix = check_type_propagation(powlog_spec(2, 1), pow_spec(4), 0.5, cfg);
    detail = "powlog/pow rel err " + format_real(mix.rel_err_upper);
    return mix.applicable_upper && mix.passed && mix.rel_err_upper <= 1e-3 &&
           mix.rel_err_lower <= 1e-3;
}

bool c6_duality(std::string& detail) {
    const GridConfig cfg;
    double worst = 0.0;
    for (const char* s : {"pow:0.5", "pow:3", "expm1", "powlog:2:1", "dexp"}) {
        const auto rep = duality_check(parse_spec(s), cfg);
        if (!rep.passed) {
            detail = std::string("failed for ") + s;
            return false;
        }
        if (std::isfinite(rep.discrepancy)) worst = std::max(worst, rep.discrepancy);
    }
    detail = "worst discrepancy " + format_real(worst);
    return worst <= 0.05;
}

bool c7_examples(std::string& detail) {
    const GridConfig cfg;
    const auto [cm_pow, cp_pow] = dlog_constants(pow_spec(2), cfg);
    if (!(std::fabs(cm_pow - 1.0) <= 1e-9 && std::fabs(cp_pow - 1.0) <= 1e-9)) {
        detail = "pow";
        return false;
    }
    const auto [cm_e, cp_e] = dlog_constants(expm1_spec(), cfg);
    if (!(cm_e <= 1.0 + 1e-6)) {
        detail = "expm1 C- = " + format_real(cm_e);
        return false;
    }
    const auto [cm_pl, cp_pl] = dlog_constants(powlog_spec(2, 1), cfg);
    if (!(cp_pl <= 1.0 + 1e-6)) {
        detail = "powlog C+ = " + format_real(cp_pl);
        return false;
    }
    const auto [cm_d, cp_d] = dlog_constants(dexp_spec(), cfg);
    detail = "dexp C- = " + format_real(cm_d);
    return std::isfinite(cm_d);
}

bool c8_indices(std::string& detail) {
    const GridConfig cfg;
    for (double p : {0.5, 1.0, 2.0, 7.0}) {
        const auto idx = matuszewska_indices(pow_spec(p), cfg);
        if (!(std::fabs(idx.a - p) <= 1e-9 && std::fabs(idx.b - p) <= 1e-9)) {
            detail = "pow " + format_real(p);
            return false;
        }
    }
    GridConfig wide = cfg;
    wide.x_min = -40.0;
    wide.x_max = 1e4;
    const auto pl = matuszewska_indices(powlog_spec(2, 1), wide);
    if (!(std::fabs(pl.a - 2.0) <= 1e-3 && std::fabs(pl.b - 3.0) <= 1e-3)) {
        detail = "powlog (" + format_real(pl.a) + ", " + format_real(pl.b) + ")";
        return false;
    }
    double worst = 0.0;
    int checked = 0;
    for (const auto& s :
         {pow_spec(0.5), pow_spec(2), powlog_spec(2, 1), expm1_spec(), dexp_spec()}) {
        const auto fwd = matuszewska_indices(s, cfg);
        const auto inv = matuszewska_indices(inverse_spec(s), map_window_through(s, cfg));
        if (std::isfinite(fwd.b) && std::isfinite(inv.a)) {
            worst = std::max(worst, std::fabs(inv.a * fwd.b - 1.0));
            ++checked;
        }
        if (std::isfinite(fwd.a) && std::isfinite(inv.b)) {
            worst = std::max(worst, std::fabs(inv.b * fwd.a - 1.0));
            ++checked;
        }
    }
    detail = "worst inverse-relation error " + format_real(worst) + " over " +
             std::to_string(checked) + " products";
    return checked >= 8 && worst <= 1e-6;
}

bool c9_ratios(std::string& detail) {
    const GridConfig cfg;
    // Catalog pairs satisfying the index hypothesis a_Psi >= b_Phi.
    const std::vector<SpecPtr> catalog = {pow_spec(0.5), pow_spec(1),  pow_spec(2), pow_spec(4),
                                          powlog_spec(2, 1), expm1_spec(), dexp_spec()};
    std::vector<std::pair<SpecPtr, SpecPtr>> qualifying;
    for (const auto& phi : catalog)
        for (const auto& psi : catalog) {
            const auto iphi = matuszewska_indices(phi, cfg);
            const auto ipsi = matuszewska_indices(psi, cfg);
            if (std::isfinite(iphi.b) && iphi.b < 50 && ipsi.a >= iphi.b - cfg.slope_tol)
                qualifying.emplace_back(phi, psi);
        }
    for (const auto& [phi, psi] : qualifying) {
        const auto rep = ratio_monotonicity(phi, psi, cfg);
        if (!(rep.hypothesis_met && rep.passed)) {
            detail = "ratio failed for " + to_string(phi) + " / " + to_string(psi);
            return false;
        }
    }
    // Interpolated preservation over consecutive qualifying pairs (full
    // quadratic blow-up adds nothing new and is slow).
    int interp_runs = 0;
    for (std::size_t i = 0; i + 1 < qualifying.size(); ++i) {
        const auto& [phi0, psi0] = qualifying[i];
        const auto& [phi1, psi1] = qualifying[i + 1];
        const auto rep =
            interp_ratio_preservation(phi0, psi0, phi1, psi1, {0.25, 0.5, 0.75}, cfg);
        if (!(rep.hypothesis_met && rep.passed)) {
            detail = "interp failed for pair " + std::to_string(i);
            return false;
        }
        ++interp_runs;
    }
    detail = std::to_string(qualifying.size()) + " pairs, " + std::to_string(interp_runs) +
             " interpolated combinations";
    return qualifying.size() >= 10;
}

bool c10_lux(std::string& detail) {
    const auto q = quad(512);
    // Constant-function norms: k / Phi^{-1}(1).
    const auto em = lux_norm({0.0, 1.0}, expm1_spec(), 0.0, q);
    if (std::fabs(em.lambda - 1.0 / std::log(2.0)) > 1e-8 * 1.45) {
        detail = "expm1 const norm " + format_real(em.lambda);
        return false;
    }
    const auto pw = lux_norm({0.0, 3.0}, pow_spec(3), 1.0, q);
    if (std::fabs(pw.lambda - 3.0) > 1e-8 * 3.0) {
        detail = "pow const norm " + format_real(pw.lambda);
        return false;
    }
    // Probability normalization.
    for (double a : {0.0, 1.0, 2.5})
        if (std::fabs(weighted_integral({0.0, 2.0}, pow_spec(1), a, 2.0, q) - 1.0) > 1e-10) {
            detail = "normalization at alpha " + format_real(a);
            return false;
        }
    // Doubling stability on the convergent cases.
    double worst = 0.0;
    for (double c : {0.0, 0.2, 0.3}) {
        const auto lo = lux_norm({c, 1.0}, pow_spec(2), 0.0, q);
        const auto hi = lux_norm({c, 1.0}, pow_spec(2), 0.0, quad(1024));
        worst = std::max(worst, std::fabs(hi.lambda / lo.lambda - 1.0));
    }
    detail = "worst doubling drift " + format_real(worst);
    return worst < 1e-4;
}

bool c11_witness(std::string& detail) {
    std::vector<TestFunction> family;
    for (int i = 0; i <= 9; ++i) family.push_back({0.1 * i, 1.0});
    const auto phi_t = invgeo_spec(pow_spec(2), pow_spec(3), 0.5);
    const auto psi_t = invgeo_spec(pow_spec(4), pow_spec(6), 0.5);

    // Index hypotheses for the interpolated pair, via classification.
    const GridConfig cfg;
    const auto i_phi = matuszewska_indices(phi_t, cfg);
    const auto i_psi = matuszewska_indices(psi_t, cfg);
    if (!(i_psi.a >= i_phi.b - cfg.slope_tol)) {
        detail = "hypothesis a_Psi >= b_Phi failed";
        return false;
    }

    double worst_drift = 0.0;
    for (const auto& [phi, psi] :
         {std::pair<SpecPtr, SpecPtr>{pow_spec(2), pow_spec(4)}, {phi_t, psi_t}}) {
        const auto base = witness_embedding(phi, psi, 0.0, 2.0, family, quad(512));
        if (base.excluded_count != 0 || !std::isfinite(base.max_ratio)) {
            detail = "non-finite ratios for " + to_string(phi);
            return false;
        }
        const auto dbl = witness_embedding(phi, psi, 0.0, 2.0, family, quad(1024));
        worst_drift = std::max(worst_drift, std::fabs(dbl.max_ratio / base.max_ratio - 1.0));
    }
    detail = "family-max drift " + format_real(worst_drift);
    return worst_drift < 1e-3;
}

bool c12_determinism(std::string& detail) {
    const GridConfig cfg;
    // Library level: serial against OpenMP execution of every numeric stage.
    auto snapshot = [&]() {
        std::string out;
        out += classify(powlog_spec(2, 1), cfg).to_text();
        out += cmin(pow_spec(2), pow_spec(4), params(0, 2, TDomain::from_one), cfg).to_text();
        out += beta_star(pow_spec(2), pow_spec(4), 1.0, cfg).to_text();
        std::ostringstream csv;
        write_boundary_csv(csv, boundary_sweep(pow_spec(2), pow_spec(4), 0.0, 2.0, 5, cfg));
        out += csv.str();
        std::vector<TestFunction> family = {{0.0, 1.0}, {0.5, 1.0}};
        std::ostringstream wcsv;
        write_witness_csv(wcsv, witness_embedding(pow_spec(2), pow_spec(4), 0, 2, family, quad(128)));
        out += wcsv.str();
        return out;
    };
    std::string serial1, serial2, parallel;
    {
        par::ModeGuard g(par::Mode::serial);
        serial1 = snapshot();
        serial2 = snapshot();
    }
    {
        par::ModeGuard g(par::Mode::openmp);
        parallel = snapshot();
    }
    if (serial1 != serial2) {
        detail = "repeated serial runs differ";
        return false;
    }
    if (serial1 != parallel) {
        detail = "serial vs OpenMP differ";
        return false;
    }

    if (g_cli_path.empty()) {
        detail = "library-level only (no --cli path given)";
        return true;
    }
    // Process level: byte-identical stdout and files across runs and thread
    // counts.
    const std::string base =
        (std::filesystem::temp_directory_path() / "growth_acceptance_cli").string();
    const std::string boundary_args =
        "boundary pow:2 pow:4 --alpha-range 0:2:5 --out " + base + "_curve";
    struct Run {
        const char* out;
        int threads;
    } runs[] = {{"_a", 1}, {"_b", 1}, {"_c", 2}};
    std::vector<std::string> stdouts, files;
    std::vector<std::string> produced;
    for (const auto& r : runs) {
        const bool ok = run_cli("classify powlog:2:1", base + r.out + "_cls", r.threads) &&
                        run_cli(boundary_args + r.out + ".csv", base + r.out + "_bnd", r.threads);
        produced.insert(produced.end(), {base + r.out + "_cls", base + r.out + "_bnd",
                                         base + "_curve" + r.out + ".csv"});
        if (!ok) {
            detail = "CLI invocation failed";
            break;
        }
        stdouts.push_back(read_file(base + r.out + "_cls") + read_file(base + r.out + "_bnd"));
        files.push_back(read_file(base + "_curve" + r.out + ".csv"));
        if (files.back().empty()) {
            detail = "CLI produced no CSV";
            break;
        }
    }
    bool ok = detail.empty() && stdouts.size() == 3;
    if (ok && (stdouts[0] != stdouts[1] || stdouts[0] != stdouts[2])) {
        detail = "CLI stdout differs across runs/threads";
        ok = false;
    }
    if (ok && (files[0] != files[1] || files[0] != files[2])) {
        detail = "CLI CSV differs across runs/threads";
        ok = false;
    }
    for (const auto& path : produced) std::remove(path.c_str());
    if (ok) detail = "library + CLI byte-identical";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2)
        if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];

    criterion(1, "power-pair criterion", c1_power_pair);
    criterion(2, "boundary exactness", c2_boundary);
    criterion(3, "weight-set convexity", c3_weight_set_convexity);
    criterion(4, "pair-set log-convexity", c4_pair_set_logconvexity);
    criterion(5, "type propagation", c5_type_propagation);
    criterion(6, "dlog duality", c6_duality);
    criterion(7, "catalog dlog classes", c7_examples);
    criterion(8, "matuszewska indices", c8_indices);
    criterion(9, "ratio monotonicity", c9_ratios);
    criterion(10, "luxembourg norms", c10_lux);
    criterion(11, "embedding witness", c11_witness);
    criterion(12, "determinism", c12_determinism);

    if (g_failures == 0)
        std::printf("ALL 12 CRITERIA PASS\n");
    else
        std::printf("%d CRITERIA FAILED\n", g_failures);
    return g_failures;
}
