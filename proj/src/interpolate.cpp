#include "growth/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "growth/classify.hpp"
#include "growth/errors.hpp"
#include "growth/format.hpp"
#include "growth/parallel.hpp"

namespace growth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MonotoneScan {
    bool ok = false;
    double worst_slope = kInf; // most negative per-step slope of the series
    double worst_x = 0.0;
};

// Scans f over a uniform n-point grid of [lo, hi] and checks that adjacent
// differences never drop below -slope_tol * dx.
template <class F>
MonotoneScan scan_nondecreasing(const F& f, double lo, double hi, int n, double slope_tol) {
    const std::vector<double> xs = uniform_grid(lo, hi, n);
    std::vector<double> vals(xs.size());
    par::for_index(static_cast<std::ptrdiff_t>(xs.size()), [&](std::ptrdiff_t i) {
        vals[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    });
    MonotoneScan out;
    out.ok = true;
    out.worst_slope = kInf;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double dx = xs[i] - xs[i - 1];
        const double slope = (vals[i] - vals[i - 1]) / dx;
        if (slope < out.worst_slope) {
            out.worst_slope = slope;
            out.worst_x = xs[i];
        }
        if (slope < -slope_tol) out.ok = false;
    }
    return out;
}

Interval intersect(const Interval& a, const Interval& b, const char* what) {
    Interval out{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (!(out.lo < out.hi)) throw DomainError(std::string("empty common window for ") + what);
    return out;
}

Interval clip(const Interval& dom, double lo, double hi, const char* what) {
    return intersect(dom, Interval{lo, hi}, what);
}

} // namespace

void InterpFamily::validate() const {
    if (!left || !right) throw DomainError("interpolation family requires two endpoint specs");
    if (!std::is_sorted(thetas.begin(), thetas.end()))
        throw DomainError("interpolation weights must be sorted");
    for (double th : thetas)
        if (!(th >= 0.0 && th <= 1.0))
            throw DomainError("interpolation weight outside [0,1]: " + format_real(th));
}

SpecPtr interpolate(const InterpFamily& family, double theta) {
    family.validate();
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("interpolation weight outside [0,1]: " + format_real(theta));
    if (theta == 0.0) return family.left;
    if (theta == 1.0) return family.right;
    return family.mode == InterpMode::value_geodesic
               ? geo_spec(family.left, family.right, theta)
               : invgeo_spec(family.left, family.right, theta);
}

TypePropagationReport check_type_propagation(const SpecPtr& left, const SpecPtr& right,
                                             double theta, const GridConfig& cfg) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("interpolation weight outside [0,1]: " + format_real(theta));

    TypePropagationReport rep;
    rep.theta = theta;

    const auto [up0, lo0] = type_exponents(left, cfg);
    const auto [up1, lo1] = type_exponents(right, cfg);
    rep.q0 = up0.exponent;
    rep.q1 = up1.exponent;
    rep.p0 = lo0.exponent;
    rep.p1 = lo1.exponent;
    rep.applicable_upper = !std::isinf(up0.exponent) && !std::isinf(up1.exponent);
    rep.applicable_lower = true;

    const SpecPtr mid = theta == 0.0 ? left : (theta == 1.0 ? right : geo_spec(left, right, theta));
    const auto [upt, lot] = type_exponents(mid, cfg);
    rep.q_interp = upt.exponent;
    rep.p_interp = lot.exponent;
    rep.q_expected = (1.0 - theta) * rep.q0 + theta * rep.q1;
    rep.p_expected = (1.0 - theta) * rep.p0 + theta * rep.p1;
    rep.upper_C_interp = upt.constant;
    rep.lower_C_interp = lot.constant;

    bool ok = true;
    if (rep.applicable_upper) {
        rep.rel_err_upper = std::fabs(rep.q_interp - rep.q_expected) /
                            std::max(1.0, std::fabs(rep.q_expected));
        rep.upper_C_bound = std::pow(up0.constant, 1.0 - theta) * std::pow(up1.constant, theta);
        ok = ok && rep.rel_err_upper <= 1e-3;
        if (std::isfinite(rep.upper_C_bound))
            ok = ok && rep.upper_C_interp <= rep.upper_C_bound * (1.0 + 1e-6);
    }
    rep.rel_err_lower = std::fabs(rep.p_interp - rep.p_expected) /
                        std::max(1.0, std::fabs(rep.p_expected));
    rep.lower_C_bound = std::pow(lo0.constant, 1.0 - theta) * std::pow(lo1.constant, theta);
    ok = ok && rep.rel_err_lower <= 1e-3;
    if (std::isfinite(rep.lower_C_bound))
        ok = ok && rep.lower_C_interp <= rep.lower_C_bound * (1.0 + 1e-6);
    rep.passed = ok;
    return rep;
}

RatioMonotonicityReport ratio_monotonicity(const SpecPtr& phi, const SpecPtr& psi,
                                           const GridConfig& cfg) {
    RatioMonotonicityReport rep;
    const IndexReport iphi = matuszewska_indices(phi, cfg);
    const IndexReport ipsi = matuszewska_indices(psi, cfg);
    rep.a_psi = ipsi.a;
    rep.b_phi = iphi.b;
    rep.hypothesis_met = !std::isinf(iphi.b) && ipsi.a >= iphi.b - cfg.slope_tol;
    if (!rep.hypothesis_met) {
        rep.passed = false;
        return rep;
    }

    const LogView vphi = make_view(phi, cfg);
    const LogView vpsi = make_view(psi, cfg);

    const Interval xwin = clip(intersect(vphi.x_domain(), vpsi.x_domain(), "forward ratio"),
                               cfg.x_min, cfg.x_max, "forward ratio");
    const auto fwd = scan_nondecreasing(
        [&](double x) { return vpsi.eval_(x) - vphi.eval_(x); }, xwin.lo, xwin.hi,
        cfg.n_points, cfg.slope_tol);
    rep.forward_ok = fwd.ok;
    rep.worst_forward_slope = fwd.worst_slope;
    rep.worst_forward_x = fwd.worst_x;

    const Interval ywin = clip(intersect(vphi.y_domain(), vpsi.y_domain(), "inverse ratio"),
                               cfg.x_min, cfg.x_max, "inverse ratio");
    const auto inv = scan_nondecreasing(
        [&](double y) { return vphi.inv_(y) - vpsi.inv_(y); }, ywin.lo, ywin.hi,
        cfg.n_points, cfg.slope_tol);
    rep.inverse_ok = inv.ok;
    rep.worst_inverse_slope = inv.worst_slope;
    rep.worst_inverse_y = inv.worst_x;

    rep.passed = rep.forward_ok && rep.inverse_ok;
    return rep;
}

InterpRatioReport interp_ratio_preservation(const SpecPtr& phi0, const SpecPtr& psi0,
                                            const SpecPtr& phi1, const SpecPtr& psi1,
                                            const std::vector<double>& thetas,
                                            const GridConfig& cfg) {
    InterpRatioReport rep;
    const IndexReport if0 = matuszewska_indices(phi0, cfg);
    const IndexReport is0 = matuszewska_indices(psi0, cfg);
    const IndexReport if1 = matuszewska_indices(phi1, cfg);
    const IndexReport is1 = matuszewska_indices(psi1, cfg);
    rep.a_psi0 = is0.a;
    rep.b_phi0 = if0.b;
    rep.a_psi1 = is1.a;
    rep.b_phi1 = if1.b;
    rep.hypothesis_met = !std::isinf(if0.b) && !std::isinf(if1.b) &&
                         is0.a >= if0.b - cfg.slope_tol && is1.a >= if1.b - cfg.slope_tol;
    if (!rep.hypothesis_met) {
        rep.passed = false;
        return rep;
    }

    bool all_ok = true;
    for (double th : thetas) {
        if (!(th >= 0.0 && th <= 1.0))
            throw DomainError("interpolation weight outside [0,1]: " + format_real(th));
        const SpecPtr pth = th == 0.0 ? phi0 : (th == 1.0 ? phi1 : invgeo_spec(phi0, phi1, th));
        const SpecPtr sth = th == 0.0 ? psi0 : (th == 1.0 ? psi1 : invgeo_spec(psi0, psi1, th));
        const LogView vp = make_view(pth, cfg);
        const LogView vs = make_view(sth, cfg);

        InterpRatioEntry entry;
        entry.theta = th;

        const Interval ywin = clip(intersect(vp.y_domain(), vs.y_domain(), "inverse ratio"),
                                   cfg.x_min, cfg.x_max, "inverse ratio");
        const auto inv = scan_nondecreasing(
            [&](double y) { return vp.inv_(y) - vs.inv_(y); }, ywin.lo, ywin.hi,
            cfg.n_points, cfg.slope_tol);
        entry.inverse_ok = inv.ok;
        entry.worst_inverse_slope = inv.worst_slope;
        // Statement orientation = the reciprocal ratio; nondecreasing iff the
        // proof orientation is nonincreasing. Reported, never asserted.
        const auto stmt = scan_nondecreasing(
            [&](double y) { return vs.inv_(y) - vp.inv_(y); }, ywin.lo, ywin.hi,
            cfg.n_points, cfg.slope_tol);
        entry.statement_orientation_nondecreasing = stmt.ok;

        const Interval xwin = clip(intersect(vp.x_domain(), vs.x_domain(), "forward ratio"),
                                   cfg.x_min, cfg.x_max, "forward ratio");
        const auto fwd = scan_nondecreasing(
            [&](double x) { return vs.eval_(x) - vp.eval_(x); }, xwin.lo, xwin.hi,
            cfg.n_points, cfg.slope_tol);
        entry.forward_ok = fwd.ok;
        entry.worst_forward_slope = fwd.worst_slope;

        all_ok = all_ok && entry.inverse_ok && entry.forward_ok;
        rep.entries.push_back(entry);
    }
    rep.passed = all_ok;
    return rep;
}

std::string TypePropagationReport::to_text() const {
    KeyValueBlock kv;
    kv.add("theta", theta);
    kv.add("applicable_upper", applicable_upper);
    kv.add("q0", q0);
    kv.add("q1", q1);
    kv.add("q_interp", q_interp);
    kv.add("q_expected", q_expected);
    kv.add("rel_err_upper", rel_err_upper);
    kv.add("upper_C_interp", upper_C_interp);
    kv.add("upper_C_bound", upper_C_bound);
    kv.add("p0", p0);
    kv.add("p1", p1);
    kv.add("p_interp", p_interp);
    kv.add("p_expected", p_expected);
    kv.add("rel_err_lower", rel_err_lower);
    kv.add("lower_C_interp", lower_C_interp);
    kv.add("lower_C_bound", lower_C_bound);
    kv.add("passed", passed);
    return kv.str();
}

std::string RatioMonotonicityReport::to_text() const {
    KeyValueBlock kv;
    kv.add("hypothesis_met", hypothesis_met);
    kv.add("a_psi", a_psi);
    kv.add("b_phi", b_phi);
    if (hypothesis_met) {
        kv.add("forward_ok", forward_ok);
        kv.add("worst_forward_slope", worst_forward_slope);
        kv.add("worst_forward_x", worst_forward_x);
        kv.add("inverse_ok", inverse_ok);
        kv.add("worst_inverse_slope", worst_inverse_slope);
        kv.add("worst_inverse_y", worst_inverse_y);
    }
    kv.add("passed", passed);
    return kv.str();
}

std::string InterpRatioReport::to_text() const {
    KeyValueBlock kv;
    kv.add("hypothesis_met", hypothesis_met);
    kv.add("a_psi0", a_psi0);
    kv.add("b_phi0", b_phi0);
    kv.add("a_psi1", a_psi1);
    kv.add("b_phi1", b_phi1);
    for (const auto& e : entries) {
        const std::string tag = "theta_" + format_real(e.theta);
        kv.add(tag + "_inverse_ok", e.inverse_ok);
        kv.add(tag + "_forward_ok", e.forward_ok);
        kv.add(tag + "_statement_orientation_nondecreasing",
               e.statement_orientation_nondecreasing);
        kv.add(tag + "_worst_inverse_slope", e.worst_inverse_slope);
        kv.add(tag + "_worst_forward_slope", e.worst_forward_slope);
    }
    kv.add("passed", passed);
    return kv.str();
}

} // namespace growth
