#include "growth/view.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <optional>

#include "growth/errors.hpp"
#include "growth/format.hpp"

namespace growth {

namespace {

// Smallest log-coordinate kept representable by every family: below this the
// inner exponentials reach the denormal range.
constexpr double kLogFloor = -689.0;

// log(1 + e^x) without overflow or premature underflow.
double log1p_exp(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// log(e^u - 1) for u > 0.
double log_expm1(double u) {
    return u > 36.0 ? u + std::log1p(-std::exp(-u)) : std::log(std::expm1(u));
}

void require_inside(const Interval& dom, double x, const char* what) {
    // One-ulp slack at the edges so image endpoints round-trip.
    const double slack_lo = 1e-12 * (1.0 + std::fabs(dom.lo));
    const double slack_hi = 1e-12 * (1.0 + std::fabs(dom.hi));
    if (x < dom.lo - slack_lo || x > dom.hi + slack_hi)
        throw EvalError(std::string(what) + " outside representable window [" +
                        format_real(dom.lo) + ", " + format_real(dom.hi) + "]: " + format_real(x));
}

void validate_spec(const FunctionSpec& spec) {
    std::visit(
        [](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Pow>) {
                if (!(node.p > 0.0) || !std::isfinite(node.p))
                    throw DomainError("pow exponent must satisfy p > 0");
            } else if constexpr (std::is_same_v<T, PowLog>) {
                if (!(node.p > 0.0) || !(node.a > 0.0))
                    throw DomainError("powlog parameters must satisfy p > 0, a > 0");
            } else if constexpr (std::is_same_v<T, Geo> || std::is_same_v<T, InvGeo>) {
                if (!(node.theta >= 0.0 && node.theta <= 1.0))
                    throw DomainError("interpolation weight must lie in [0,1]");
                validate_spec(*node.left);
                validate_spec(*node.right);
            } else if constexpr (std::is_same_v<T, Inverse>) {
                validate_spec(*node.inner);
            }
        },
        spec.node);
}

LogView build(const FunctionSpec& spec, const GridConfig& cfg);

// Geodesics of pure powers are powers again ((1-theta)p0 + theta p1 for the
// value geodesic, harmonic combination for the inverse geodesic); recognizing
// that keeps both directions closed-form. Inverse nodes are left alone so the
// swap semantics stay literal.
std::optional<double> pure_power(const FunctionSpec& spec) {
    if (const auto* p = std::get_if<Pow>(&spec.node)) return p->p;
    if (const auto* g = std::get_if<Geo>(&spec.node)) {
        const auto l = pure_power(*g->left);
        const auto r = pure_power(*g->right);
        if (l && r) return (1.0 - g->theta) * *l + g->theta * *r;
        return std::nullopt;
    }
    if (const auto* g = std::get_if<InvGeo>(&spec.node)) {
        const auto l = pure_power(*g->left);
        const auto r = pure_power(*g->right);
        if (l && r) return 1.0 / ((1.0 - g->theta) / *l + g->theta / *r);
        return std::nullopt;
    }
    return std::nullopt;
}

LogView build_pow(double p, const GridConfig& cfg) {
    LogView v;
    const double xlim = 1e290 / std::max(1.0, p);
    v.xdom_ = {-xlim, xlim};
    v.ydom_ = {-xlim * p, xlim * p};
    v.eval_ = [p](double x) { return p * x; };
    v.inv_ = [p](double y) { return y / p; };
    v.deriv_ = [p](double) { return p; };
    v.fd_step_ = cfg.fd_step;
    return v;
}

LogView build_powlog(double p, double a, const GridConfig& cfg) {
    LogView v;
    auto eval = [p, a](double x) {
        if (x > 36.0) return p * x + a * std::log(log1p_exp(x));
        return p * x + a * std::log(std::log1p(std::exp(x)));
    };
    v.xdom_ = {kLogFloor, 1e288 / (p + a)};
    v.ydom_ = {eval(v.xdom_.lo), eval(v.xdom_.hi)};
    v.eval_ = eval;
    v.deriv_ = [p, a](double x) {
        if (x > 36.0) return p + a / log1p_exp(x);
        const double t = std::exp(x);
        return p + a * (t / (1.0 + t)) / std::log1p(t);
    };
    const Interval dom = v.xdom_;
    const double rel_tol = cfg.inv_rel_tol;
    const int max_iter = cfg.inv_max_iter;
    v.inv_ = [eval, dom, rel_tol, max_iter](double y) {
        return invert_monotone(eval, y, dom, 0.0, rel_tol, max_iter);
    };
    v.fd_step_ = cfg.fd_step;
    return v;
}

LogView build_expm1(const GridConfig& cfg) {
    LogView v;
    auto eval = [](double x) { return log_expm1(std::exp(x)); };
    v.xdom_ = {kLogFloor, 709.0};
    v.ydom_ = {eval(v.xdom_.lo), eval(v.xdom_.hi)};
    v.eval_ = eval;
    v.inv_ = [](double y) { return std::log(log1p_exp(y)); };
    v.deriv_ = [](double x) {
        const double u = std::exp(x);
        return u / (-std::expm1(-u));
    };
    v.fd_step_ = cfg.fd_step;
    return v;
}

LogView build_dexp(const GridConfig& cfg) {
    LogView v;
    // exp(exp(t)) - e == e * expm1(expm1(t)); the asymptotic branch keeps the
    // value representable up to log t ~ 6.565 where the value itself tops out.
    auto eval = [](double x) {
        const double w = std::expm1(std::exp(x));
        if (w > 36.0) return 1.0 + w + std::log1p(-std::exp(-w));
        return 1.0 + std::log(std::expm1(w));
    };
    v.xdom_ = {kLogFloor, 6.5649};
    v.ydom_ = {eval(v.xdom_.lo), eval(v.xdom_.hi)};
    v.eval_ = eval;
    v.inv_ = [](double y) {
        const double a = log1p_exp(y - 1.0);
        return std::log(std::log1p(a));
    };
    v.deriv_ = [](double x) {
        const double t = std::exp(x);
        const double den = -std::expm1(-std::expm1(t));
        return t * std::exp(t) / den;
    };
    v.fd_step_ = cfg.fd_step;
    return v;
}

LogView build_geo(const Geo& node, const GridConfig& cfg) {
    auto l = std::make_shared<LogView>(build(*node.left, cfg));
    auto r = std::make_shared<LogView>(build(*node.right, cfg));
    const double th = node.theta;
    LogView v;
    v.xdom_ = {std::max(l->xdom_.lo, r->xdom_.lo), std::min(l->xdom_.hi, r->xdom_.hi)};
    auto eval = [l, r, th](double x) { return (1.0 - th) * l->eval_(x) + th * r->eval_(x); };
    v.ydom_ = {eval(v.xdom_.lo), eval(v.xdom_.hi)};
    v.eval_ = eval;
    if (l->deriv_ && r->deriv_) {
        auto ld = l->deriv_;
        auto rd = r->deriv_;
        v.deriv_ = [ld, rd, th](double x) { return (1.0 - th) * ld(x) + th * rd(x); };
    }
    const Interval dom = v.xdom_;
    const double rel_tol = cfg.inv_rel_tol;
    const int max_iter = cfg.inv_max_iter;
    v.inv_ = [eval, dom, rel_tol, max_iter](double y) {
        return invert_monotone(eval, y, dom, 0.0, rel_tol, max_iter);
    };
    v.fd_step_ = cfg.fd_step;
    return v;
}

LogView build_invgeo(const InvGeo& node, const GridConfig& cfg) {
    auto l = std::make_shared<LogView>(build(*node.left, cfg));
    auto r = std::make_shared<LogView>(build(*node.right, cfg));
    const double th = node.theta;
    LogView v;
    v.ydom_ = {std::max(l->ydom_.lo, r->ydom_.lo), std::min(l->ydom_.hi, r->ydom_.hi)};
    auto inv = [l, r, th](double y) { return (1.0 - th) * l->inv_(y) + th * r->inv_(y); };
    v.xdom_ = {inv(v.ydom_.lo), inv(v.ydom_.hi)};
    v.inv_ = inv;
    const Interval ydom = v.ydom_;
    const double rel_tol = cfg.inv_rel_tol;
    const int max_iter = cfg.inv_max_iter;
    v.eval_ = [inv, ydom, rel_tol, max_iter](double x) {
        return invert_monotone(inv, x, ydom, 0.0, rel_tol, max_iter);
    };
    v.fd_step_ = cfg.fd_step;
    return v;
}

LogView build_inverse(const Inverse& node, const GridConfig& cfg) {
    auto inner = std::make_shared<LogView>(build(*node.inner, cfg));
    LogView v;
    v.eval_ = inner->inv_;
    v.inv_ = inner->eval_;
    v.xdom_ = inner->ydom_;
    v.ydom_ = inner->xdom_;
    if (inner->deriv_) {
        v.deriv_ = [inner](double y) { return 1.0 / inner->deriv_(inner->inv_(y)); };
    }
    v.fd_step_ = cfg.fd_step;
    return v;
}

LogView build(const FunctionSpec& spec, const GridConfig& cfg) {
    return std::visit(
        [&cfg](const auto& node) -> LogView {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Pow>) {
                return build_pow(node.p, cfg);
            } else if constexpr (std::is_same_v<T, PowLog>) {
                return build_powlog(node.p, node.a, cfg);
            } else if constexpr (std::is_same_v<T, ExpM1>) {
                return build_expm1(cfg);
            } else if constexpr (std::is_same_v<T, DExp>) {
                return build_dexp(cfg);
            } else if constexpr (std::is_same_v<T, Geo>) {
                // theta in {0,1} degenerates to the endpoint's own view so the
                // evaluation path is bitwise-identical to the endpoint.
                if (node.theta == 0.0) return build(*node.left, cfg);
                if (node.theta == 1.0) return build(*node.right, cfg);
                if (const auto p = pure_power(FunctionSpec{node})) return build_pow(*p, cfg);
                return build_geo(node, cfg);
            } else if constexpr (std::is_same_v<T, InvGeo>) {
                if (node.theta == 0.0) return build(*node.left, cfg);
                if (node.theta == 1.0) return build(*node.right, cfg);
                if (const auto p = pure_power(FunctionSpec{node})) return build_pow(*p, cfg);
                return build_invgeo(node, cfg);
            } else {
                return build_inverse(node, cfg);
            }
        },
        spec.node);
}

} // namespace

void GridConfig::validate() const {
    if (!(x_min < x_max)) throw DomainError("grid requires x_min < x_max");
    if (n_points < 16) throw DomainError("grid requires n_points >= 16");
    if (!(inv_rel_tol > 0.0) || !(slope_tol > 0.0) || !(fd_step > 0.0))
        throw DomainError("grid tolerances must be positive");
    if (inv_max_iter < 1) throw DomainError("grid requires inv_max_iter >= 1");
}

double LogView::eval(double x) const {
    require_inside(xdom_, x, "eval argument");
    return eval_(xdom_.clamp(x));
}

double LogView::inv(double y) const {
    require_inside(ydom_, y, "inv argument");
    return inv_(ydom_.clamp(y));
}

double LogView::logderiv(double x) const {
    require_inside(xdom_, x, "logderiv argument");
    x = xdom_.clamp(x);
    double d;
    if (deriv_) {
        d = deriv_(x);
    } else {
        const double x1 = std::min(x + fd_step_, xdom_.hi);
        const double x0 = std::max(x - fd_step_, xdom_.lo);
        d = (eval_(x1) - eval_(x0)) / (x1 - x0);
    }
    if (!(d > 0.0))
        throw ConvergenceError("log-derivative came out non-positive at x = " + format_real(x));
    return d;
}

LogView make_view(const SpecPtr& spec, const GridConfig& cfg) {
    if (!spec) throw DomainError("make_view: null spec");
    cfg.validate();
    validate_spec(*spec);
    return build(*spec, cfg);
}

double log_derivative(const LogView& view, double x, const GridConfig& cfg) {
    require_inside(view.x_domain(), x, "logderiv argument");
    x = view.x_domain().clamp(x);
    if (view.deriv_) return view.deriv_(x);
    const double x1 = std::min(x + cfg.fd_step, view.x_domain().hi);
    const double x0 = std::max(x - cfg.fd_step, view.x_domain().lo);
    const double d = (view.eval_(x1) - view.eval_(x0)) / (x1 - x0);
    if (!(d > 0.0))
        throw ConvergenceError("log-derivative came out non-positive at x = " + format_real(x));
    return d;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
    g.back() = hi;
    return g;
}

double invert_monotone(const std::function<double(double)>& f, double target,
                       const Interval& dom, double seed, double rel_tol, int max_iter) {
    double s = dom.clamp(seed);
    double fs = f(s);
    if (fs == target) return s;

    double lo, hi, fhi, flo;
    if (fs < target) {
        lo = s;
        hi = s;
        fhi = fs;
        double step = 1.0;
        while (fhi < target) {
            if (hi >= dom.hi)
                throw ConvergenceError("inversion target above range: bracket [" +
                                       format_real(lo) + ", " + format_real(hi) +
                                       "], residual " + format_real(target - fhi));
            lo = hi;
            hi = std::min(s + step, dom.hi);
            step *= 2.0;
            fhi = f(hi);
        }
    } else {
        hi = s;
        lo = s;
        flo = fs;
        double step = 1.0;
        while (flo > target) {
            if (lo <= dom.lo)
                throw ConvergenceError("inversion target below range: bracket [" +
                                       format_real(lo) + ", " + format_real(hi) +
                                       "], residual " + format_real(flo - target));
            hi = lo;
            lo = std::max(s - step, dom.lo);
            step *= 2.0;
            flo = f(lo);
        }
    }

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < max_iter; ++iter) {
        mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * (1.0 + std::fabs(mid))) return mid;
        if (f(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    if (hi - lo <= rel_tol * (1.0 + std::fabs(mid))) return mid;
    throw ConvergenceError("bisection failed to converge: bracket [" + format_real(lo) + ", " +
                           format_real(hi) + "], residual " + format_real(f(mid) - target));
}

} // namespace growth
