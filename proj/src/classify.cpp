#include "growth/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "growth/errors.hpp"
#include "growth/format.hpp"
#include "growth/parallel.hpp"
#include "growth/search.hpp"

namespace growth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDecade = 2.302585092994046; // log 10

struct Window {
    double lo, hi;
    bool clipped;
};

Window clip_window(const LogView& view, const GridConfig& cfg) {
    const double lo = std::max(cfg.x_min, view.x_domain().lo);
    const double hi = std::min(cfg.x_max, view.x_domain().hi);
    if (!(lo < hi))
        throw DomainError("sampling window is empty after clipping to the representable domain");
    return {lo, hi, lo != cfg.x_min || hi != cfg.x_max};
}

// Index range of the outermost decade (or the outermost 5 samples, whichever
// is wider) on each side of a uniform grid.
std::pair<std::size_t, std::size_t> right_band(const std::vector<double>& xs) {
    const double cut = xs.back() - kDecade;
    std::size_t first = xs.size() - 1;
    while (first > 0 && xs[first - 1] >= cut) --first;
    first = std::min(first, xs.size() >= 5 ? xs.size() - 5 : std::size_t{0});
    return {first, xs.size()};
}

std::pair<std::size_t, std::size_t> left_band(const std::vector<double>& xs) {
    const double cut = xs.front() + kDecade;
    std::size_t last = 1;
    while (last < xs.size() && xs[last] <= cut) ++last;
    last = std::max(last, std::min(xs.size(), std::size_t{5}));
    return {0, last};
}

// Local endpoint slope from the outermost handful of samples; a decade-wide
// fit would smear the edge behaviour of slowly settling elasticities.
std::pair<std::size_t, std::size_t> right_edge(const std::vector<double>& xs) {
    return {xs.size() >= 5 ? xs.size() - 5 : std::size_t{0}, xs.size()};
}

std::pair<std::size_t, std::size_t> left_edge(const std::vector<double>& xs) {
    return {0, std::min(xs.size(), std::size_t{5})};
}

// Slope fit skipping non-finite samples (dexp's elasticity overflows doubles
// right at its window edge).
double finite_ls_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                       std::size_t first, std::size_t last) {
    std::vector<double> fx, fy;
    for (std::size_t i = first; i < last; ++i) {
        if (!std::isfinite(ys[i])) continue;
        fx.push_back(xs[i]);
        fy.push_back(ys[i]);
    }
    return ls_slope(fx, fy, 0, fx.size());
}

} // namespace

IndexReport matuszewska_indices(const SpecPtr& spec, const GridConfig& cfg) {
    const LogView view = make_view(spec, cfg);
    const Window win = clip_window(view, cfg);
    const std::vector<double> xs = uniform_grid(win.lo, win.hi, cfg.n_points);
    const std::size_t n = xs.size();

    std::vector<double> elas(n);
    par::for_index(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
        elas[static_cast<std::size_t>(i)] = log_derivative(view, xs[static_cast<std::size_t>(i)], cfg);
    });

    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (elas[i] < elas[imin]) imin = i;
        if (elas[i] > elas[imax]) imax = i;
    }

    auto refine = [&](std::size_t i, bool maximize) {
        const double lo = xs[i == 0 ? 0 : i - 1];
        const double hi = xs[i + 1 >= n ? n - 1 : i + 1];
        if (!(lo < hi)) return std::make_pair(xs[i], elas[i]);
        auto f = [&](double x) { return log_derivative(view, x, cfg); };
        return maximize ? golden_max(f, lo, hi) : golden_min(f, lo, hi);
    };
    auto [arg_a, a] = refine(imin, false);
    auto [arg_b, b] = refine(imax, true);
    a = std::min(a, elas[imin]);
    b = std::max(b, elas[imax]);
    if (!(a <= elas[imin])) arg_a = xs[imin];
    if (!(b >= elas[imax])) arg_b = xs[imax];

    IndexReport rep;
    const auto [rl, rr] = right_edge(xs);
    const auto [ll, lr] = left_edge(xs);
    rep.slope_right = finite_ls_slope(xs, elas, rl, rr);
    rep.slope_left = finite_ls_slope(xs, elas, ll, lr);
    rep.a = a;
    rep.b = b;
    rep.arg_a = arg_a;
    rep.arg_b = arg_b;
    rep.used_x_min = win.lo;
    rep.used_x_max = win.hi;
    rep.window_clipped = win.clipped;
    return rep;
}

namespace {

// No finite upper type exists when the elasticity supremum sits at a window
// edge and is still climbing outward there.
bool upper_type_diverges(const IndexReport& idx, double slope_tol) {
    const bool max_at_right = idx.arg_b >= idx.used_x_max - kDecade;
    const bool max_at_left = idx.arg_b <= idx.used_x_min + kDecade;
    return (max_at_right && idx.slope_right > slope_tol) ||
           (max_at_left && idx.slope_left < -slope_tol);
}

} // namespace

namespace {

// Worst excess of Lambda(tau+sigma) - e*sigma - Lambda(tau) over the pair
// grid, with per-tau column maxima kept for the edge-divergence test.
TypeEstimate estimate_type(const LogView& view, const Window& win, const GridConfig& cfg,
                           double exponent, bool upper) {
    if (std::isinf(exponent)) return {exponent, kInf};

    const std::vector<double> taus = uniform_grid(win.lo, win.hi, cfg.n_points);
    double sig_lo, sig_hi;
    if (upper) {
        sig_lo = 0.0;
        sig_hi = std::max(win.hi, 1e-3);
    } else {
        sig_lo = std::min(win.lo, -1e-3);
        sig_hi = 0.0;
    }
    const std::vector<double> sigmas = uniform_grid(sig_lo, sig_hi, 64);

    std::vector<double> colmax(taus.size(), -kInf);
    par::for_index(static_cast<std::ptrdiff_t>(taus.size()), [&](std::ptrdiff_t ti) {
        const double tau = taus[static_cast<std::size_t>(ti)];
        const double ltau = view.eval_(tau);
        double worst = -kInf;
        for (double sigma : sigmas) {
            const double arg = tau + sigma;
            if (arg < view.x_domain().lo || arg > view.x_domain().hi) continue;
            const double excess = view.eval_(arg) - exponent * sigma - ltau;
            worst = std::max(worst, excess);
        }
        colmax[static_cast<std::size_t>(ti)] = worst;
    });

    double sup = -kInf;
    for (double v : colmax) sup = std::max(sup, v);
    TypeEstimate est;
    est.exponent = exponent;
    est.constant = std::exp(std::max(0.0, sup));

    const auto [rl, rr] = right_band(taus);
    const auto [ll, lr] = left_band(taus);
    if (ls_slope(taus, colmax, rl, rr) > cfg.slope_tol ||
        ls_slope(taus, colmax, ll, lr) < -cfg.slope_tol)
        est.constant = kInf;
    return est;
}

} // namespace

std::pair<TypeEstimate, TypeEstimate> type_exponents(const SpecPtr& spec, const GridConfig& cfg) {
    const LogView view = make_view(spec, cfg);
    const Window win = clip_window(view, cfg);
    const IndexReport idx = matuszewska_indices(spec, cfg);
    const double q = upper_type_diverges(idx, cfg.slope_tol) ? kInf : idx.b;
    TypeEstimate upper = estimate_type(view, win, cfg, q, /*upper=*/true);
    TypeEstimate lower = estimate_type(view, win, cfg, idx.a, /*upper=*/false);
    return {upper, lower};
}

namespace {

constexpr int kDlogGrid = 64;
const double kThetas[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
constexpr double kEps = 2.220446049250313e-16;

struct DlogSweep {
    double sup_minus_full = 0.0, sup_minus_inner = 0.0;
    double sup_plus_full = 0.0, sup_plus_inner = 0.0;
    double shrink = 0.0;
};

// One pass over the 64x64 argument grid and the nine interior weights,
// producing both defect suprema. Excesses below the absolute rounding noise
// of the Lambda values (which reach ~1e12 for expm1, ~1e288 for dexp) are
// treated as zero, otherwise pure float noise would masquerade as a defect.
DlogSweep dlog_sweep(const LogView& view, const Window& win, const GridConfig& cfg) {
    const std::vector<double> xs = uniform_grid(win.lo, win.hi, kDlogGrid);
    const double h = std::min(kDecade, (win.hi - win.lo) / 8.0);
    const double dx = (win.hi - win.lo) / (kDlogGrid - 1);

    std::vector<double> lam(xs.size());
    par::for_index(static_cast<std::ptrdiff_t>(xs.size()), [&](std::ptrdiff_t i) {
        lam[static_cast<std::size_t>(i)] = view.eval_(xs[static_cast<std::size_t>(i)]);
    });
    // Per-cell chord slopes bound the local derivative for the argument-noise
    // allowance below.
    std::vector<double> chord(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) chord[i] = (lam[i + 1] - lam[i]) / dx;

    const std::size_t total = xs.size() * xs.size();
    std::vector<double> minus_full(total), minus_inner(total), plus_full(total), plus_inner(total);
    par::for_index(static_cast<std::ptrdiff_t>(total), [&](std::ptrdiff_t k) {
        const std::size_t i = static_cast<std::size_t>(k) / xs.size();
        const std::size_t j = static_cast<std::size_t>(k) % xs.size();
        const double x = xs[i], y = xs[j];
        const double lx = lam[i], ly = lam[j];
        double wminus = 0.0, wplus = 0.0;
        for (double th : kThetas) {
            const double mid = th * x + (1.0 - th) * y;
            const double target = th * lx + (1.0 - th) * ly;
            const double lmid = view.eval_(mid);
            // Value rounding plus argument rounding: one ulp of mid scaled by
            // the steepest chord around it (Lambda' reaches ~1e225 for dexp,
            // where an argument ulp swamps any value-level allowance).
            const std::size_t cell = static_cast<std::size_t>(std::clamp(
                (mid - win.lo) / dx, 0.0, static_cast<double>(kDlogGrid) - 2.0));
            const double slope_bound =
                std::max(chord[cell], cell + 1 < chord.size() ? chord[cell + 1] : chord[cell]);
            const double noise =
                8.0 * kEps * (std::fabs(lx) + std::fabs(ly) + std::fabs(lmid)) +
                slope_bound * 8.0 * kEps * (1.0 + std::max(std::fabs(x), std::fabs(y)));
            const double weight = th * (1.0 - th);
            // Delta_log^-: Lambda(mid) <= target + theta(1-theta) log C.
            const double excess = lmid - target - noise;
            if (excess > 0.0) wminus = std::max(wminus, excess / weight);
            // Delta_log^+: minimal argument shift restoring
            // Lambda(mid + delta) >= target.
            if (target - lmid > noise) {
                const double inv_noise = 2.0 * cfg.inv_rel_tol * (1.0 + std::fabs(mid));
                const double delta = view.inv_(target) - mid - inv_noise;
                if (delta > 0.0) wplus = std::max(wplus, delta / weight);
            }
        }
        minus_full[static_cast<std::size_t>(k)] = wminus;
        plus_full[static_cast<std::size_t>(k)] = wplus;
        const bool inner = x >= win.lo + h && x <= win.hi - h && y >= win.lo + h && y <= win.hi - h;
        minus_inner[static_cast<std::size_t>(k)] = inner ? wminus : 0.0;
        plus_inner[static_cast<std::size_t>(k)] = inner ? wplus : 0.0;
    });

    DlogSweep out;
    out.shrink = h;
    for (std::size_t k = 0; k < total; ++k) {
        out.sup_minus_full = std::max(out.sup_minus_full, minus_full[k]);
        out.sup_minus_inner = std::max(out.sup_minus_inner, minus_inner[k]);
        out.sup_plus_full = std::max(out.sup_plus_full, plus_full[k]);
        out.sup_plus_inner = std::max(out.sup_plus_inner, plus_inner[k]);
    }
    return out;
}

double sweep_verdict(double sup_full, double sup_inner, double shrink, double slope_tol) {
    if (shrink > 0.0 && (sup_full - sup_inner) / shrink > slope_tol) return kInf;
    return std::exp(sup_full);
}

} // namespace

std::pair<double, double> dlog_constants(const SpecPtr& spec, const GridConfig& cfg) {
    const LogView view = make_view(spec, cfg);
    const Window win = clip_window(view, cfg);
    const DlogSweep s = dlog_sweep(view, win, cfg);
    return {sweep_verdict(s.sup_minus_full, s.sup_minus_inner, s.shrink, cfg.slope_tol),
            sweep_verdict(s.sup_plus_full, s.sup_plus_inner, s.shrink, cfg.slope_tol)};
}

GridConfig map_window_through(const SpecPtr& spec, const GridConfig& cfg) {
    const LogView view = make_view(spec, cfg);
    const Window win = clip_window(view, cfg);
    GridConfig out = cfg;
    out.x_min = view.eval_(win.lo);
    out.x_max = view.eval_(win.hi);
    return out;
}

DualityReport duality_check(const SpecPtr& spec, const GridConfig& cfg) {
    DualityReport rep;
    rep.c_minus = dlog_constants(spec, cfg).first;
    const GridConfig inv_cfg = map_window_through(spec, cfg);
    rep.c_plus_inverse = dlog_constants(inverse_spec(spec), inv_cfg).second;

    const bool both_inf = std::isinf(rep.c_minus) && std::isinf(rep.c_plus_inverse);
    if (both_inf) {
        rep.discrepancy = 0.0;
        rep.passed = true;
    } else if (std::isinf(rep.c_minus) || std::isinf(rep.c_plus_inverse)) {
        rep.discrepancy = kInf;
        rep.passed = false;
    } else {
        rep.discrepancy = std::fabs(rep.c_minus - rep.c_plus_inverse) /
                          std::max(rep.c_minus, rep.c_plus_inverse);
        rep.passed = rep.discrepancy <= 0.05;
    }
    return rep;
}

ClassReport classify(const SpecPtr& spec, const GridConfig& cfg) {
    ClassReport rep;
    rep.grid = cfg;
    try {
        rep.indices = matuszewska_indices(spec, cfg);
    } catch (const Error& e) {
        throw ConvergenceError(std::string("classify: index estimation failed: ") + e.what());
    }
    try {
        auto [upper, lower] = type_exponents(spec, cfg);
        rep.upper_type = upper;
        rep.lower_type = lower;
    } catch (const Error& e) {
        throw ConvergenceError(std::string("classify: type estimation failed: ") + e.what());
    }
    try {
        auto [cm, cp] = dlog_constants(spec, cfg);
        rep.dlog_minus_C = cm;
        rep.dlog_plus_C = cp;
    } catch (const Error& e) {
        throw ConvergenceError(std::string("classify: dlog estimation failed: ") + e.what());
    }
    rep.ratio_nondecreasing = rep.indices.a >= 1.0 - cfg.slope_tol;
    rep.ratio_nonincreasing = !std::isinf(rep.indices.b) && rep.indices.b <= 1.0 + cfg.slope_tol;
    return rep;
}

std::string ClassReport::to_text() const {
    KeyValueBlock kv;
    kv.add("a_index", indices.a);
    kv.add("b_index", indices.b);
    kv.add("upper_type_q", upper_type.exponent);
    kv.add("upper_type_C", upper_type.constant);
    kv.add("lower_type_p", lower_type.exponent);
    kv.add("lower_type_C", lower_type.constant);
    kv.add("ratio_nondecreasing", ratio_nondecreasing);
    kv.add("ratio_nonincreasing", ratio_nonincreasing);
    kv.add("dlog_minus_C", dlog_minus_C);
    kv.add("dlog_plus_C", dlog_plus_C);
    kv.add("logderiv_slope_left", indices.slope_left);
    kv.add("logderiv_slope_right", indices.slope_right);
    kv.add("used_x_min", indices.used_x_min);
    kv.add("used_x_max", indices.used_x_max);
    kv.add("window_clipped", indices.window_clipped);
    kv.add("grid_n_points", grid.n_points);
    return kv.str();
}

std::string DualityReport::to_text() const {
    KeyValueBlock kv;
    kv.add("dlog_minus_C", c_minus);
    kv.add("dlog_plus_C_inverse", c_plus_inverse);
    kv.add("discrepancy", discrepancy);
    kv.add("passed", passed);
    return kv.str();
}

} // namespace growth
