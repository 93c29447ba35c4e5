#include "growth/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "growth/errors.hpp"
#include "growth/format.hpp"
#include "growth/parallel.hpp"

namespace growth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLogCap = 69.07755278982137; // log 1e30

} // namespace

void TestFunction::validate() const {
    if (!(c >= 0.0)) throw DomainError("test function requires c >= 0, got " + format_real(c));
    if (!(k > 0.0)) throw DomainError("test function requires k > 0, got " + format_real(k));
}

void QuadConfig::validate() const {
    if (n_radial < 8 || n_angular < 8)
        throw DomainError("quadrature requires at least 8 nodes per direction");
    if (!(lux_tol > 0.0)) throw DomainError("lux_tol must be positive");
    if (lux_max_iter < 1) throw DomainError("lux_max_iter must be >= 1");
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    const double dn = static_cast<double>(n);
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(kPi * (static_cast<double>(i) - 0.25) / (dn + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double dj = static_cast<double>(j);
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
            }
            pp = dn * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::fabs(z - z1) > 1e-15);
        // Map from [-1,1] to [0,1].
        nodes[static_cast<std::size_t>(i - 1)] = 0.5 * (1.0 - z);
        nodes[static_cast<std::size_t>(n - i)] = 0.5 * (1.0 + z);
        const double w = 1.0 / ((1.0 - z * z) * pp * pp); // includes the 0.5 interval scale
        weights[static_cast<std::size_t>(i - 1)] = w;
        weights[static_cast<std::size_t>(n - i)] = w;
    }
}

DiskRule::DiskRule(double alpha, const QuadConfig& quad) {
    if (!(alpha > -1.0))
        throw DomainError("disk measure requires alpha > -1, got " + format_real(alpha));
    quad.validate();

    std::vector<double> u, gw;
    gauss_legendre_01(quad.n_radial, u, gw);

    const std::size_t nr = static_cast<std::size_t>(quad.n_radial);
    const std::size_t na = static_cast<std::size_t>(quad.n_angular);
    const double c_alpha = (alpha + 1.0) / kPi;
    const double dtheta = 2.0 * kPi / static_cast<double>(na);

    weights_.resize(nr * na);
    log_dist_.resize(nr * na);
    par::for_index(static_cast<std::ptrdiff_t>(nr), [&](std::ptrdiff_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double om = 1.0 - u[i];            // 1 - u
        const double r = 1.0 - om * om;          // boundary-concentrating map
        const double jac = 2.0 * om;             // dr/du
        const double one_minus_r2 = om * om * (1.0 + r);
        const double radial_w =
            c_alpha * gw[i] * jac * r * std::pow(one_minus_r2, alpha) * dtheta;
        for (std::size_t j = 0; j < na; ++j) {
            // Midpoint angles keep the rule off the theta = 0 singular ray.
            const double theta = dtheta * (static_cast<double>(j) + 0.5);
            const double s = std::sin(0.5 * theta);
            const double dist2 = om * om * om * om + 4.0 * r * s * s; // |1-z|^2
            weights_[i * na + j] = radial_w;
            log_dist_[i * na + j] = 0.5 * std::log(dist2);
        }
    });
}

double DiskRule::modular(const TestFunction& f, const LogView& phi, double log_lambda,
                         std::vector<double>& scratch) const {
    const double log_k = std::log(f.k);
    const double half_c = 0.5 * f.c;
    const Interval dom = phi.x_domain();
    const std::size_t n = weights_.size();

    scratch.resize(n);
    par::for_index(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        // log(|f|/lambda) at the node; -2*half_c*log_dist is log|1-z|^{-c}.
        const double x = log_k - 2.0 * half_c * log_dist_[i] - log_lambda;
        double term;
        if (x < dom.lo) {
            term = 0.0; // Phi below the double floor contributes nothing
        } else if (x > dom.hi) {
            term = kInf; // Phi beyond the double ceiling: saturate
        } else {
            term = weights_[i] * std::exp(phi.eval_(x));
        }
        scratch[i] = term;
    });
    return par::pairwise_sum(scratch);
}

double DiskRule::modular(const TestFunction& f, const LogView& phi, double log_lambda) const {
    std::vector<double> scratch;
    return modular(f, phi, log_lambda, scratch);
}

double weighted_integral(const TestFunction& f, const SpecPtr& phi, double alpha,
                         double lambda, const QuadConfig& quad) {
    f.validate();
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    const DiskRule rule(alpha, quad);
    const LogView view = make_view(phi);
    const double value = rule.modular(f, view, std::log(lambda));
    if (!std::isfinite(value)) {
        // Locate the first overflowing node for the report.
        const double log_k = std::log(f.k);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double x = log_k - f.c * rule.log_one_minus_z()[i] - std::log(lambda);
            if (x > view.x_domain().hi || !std::isfinite(std::exp(view.eval_(view.x_domain().clamp(x)))))
                throw ConvergenceError("quadrature overflow at node " + std::to_string(i) +
                                       " despite log-space evaluation");
        }
        throw ConvergenceError("quadrature overflow despite log-space evaluation");
    }
    return value;
}

namespace {

LuxResult lux_norm_on_rule(const TestFunction& f, const LogView& view, const DiskRule& rule,
                           const QuadConfig& quad) {
    std::vector<double> scratch;
    auto residual_at = [&](double ll) { return rule.modular(f, view, ll, scratch); };

    LuxResult res;
    double lo = 0.0, hi = 0.0;
    const double m0 = residual_at(0.0);
    if (m0 == 1.0) {
        res.lambda = 1.0;
        res.integral_at_lambda = 0.0;
        res.converged = true;
        return res;
    }
    if (m0 > 1.0) {
        // Expand upward geometrically until the modular drops below 1.
        double step = std::log(2.0);
        lo = 0.0;
        hi = step;
        while (residual_at(hi) > 1.0) {
            lo = hi;
            step *= 2.0;
            hi = step;
            if (hi > kLogCap) {
                res.lambda = kInf;
                res.integral_at_lambda = kInf;
                res.converged = false;
                return res;
            }
        }
    } else {
        double step = std::log(2.0);
        hi = 0.0;
        lo = -step;
        while (residual_at(lo) < 1.0) {
            hi = lo;
            step *= 2.0;
            lo = -step;
            if (lo < -kLogCap) {
                res.lambda = std::exp(lo);
                res.integral_at_lambda = residual_at(lo) - 1.0;
                res.converged = false;
                return res;
            }
        }
    }

    for (int iter = 0; iter < quad.lux_max_iter && hi - lo > quad.lux_tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (residual_at(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    const double mid = 0.5 * (lo + hi);
    res.lambda = std::exp(mid);
    res.integral_at_lambda = residual_at(mid) - 1.0;
    res.converged = hi - lo <= quad.lux_tol &&
                    std::fabs(res.integral_at_lambda) <= 10.0 * quad.lux_tol;
    return res;
}

} // namespace

LuxResult lux_norm(const TestFunction& f, const SpecPtr& phi, double alpha,
                   const QuadConfig& quad) {
    f.validate();
    const DiskRule rule(alpha, quad);
    const LogView view = make_view(phi);
    return lux_norm_on_rule(f, view, rule, quad);
}

WitnessReport witness_embedding(const SpecPtr& phi, const SpecPtr& psi, double alpha,
                                double beta, std::span<const TestFunction> family,
                                const QuadConfig& quad) {
    const DiskRule src_rule(alpha, quad);
    const DiskRule dst_rule(beta, quad);
    const LogView vphi = make_view(phi);
    const LogView vpsi = make_view(psi);

    WitnessReport rep;
    rep.max_ratio = 0.0;
    for (const TestFunction& f : family) {
        f.validate();
        WitnessRow row;
        row.c = f.c;
        row.k = f.k;
        const LuxResult src = lux_norm_on_rule(f, vphi, src_rule, quad);
        row.src_norm = src.lambda;
        if (!src.converged || !std::isfinite(src.lambda)) {
            row.excluded = true;
            row.dst_norm = kInf;
            row.ratio = kInf;
            ++rep.excluded_count;
            rep.rows.push_back(row);
            continue;
        }
        const LuxResult dst = lux_norm_on_rule(f, vpsi, dst_rule, quad);
        row.dst_norm = dst.lambda;
        row.ratio = dst.lambda / src.lambda;
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        rep.rows.push_back(row);
    }
    return rep;
}

void write_witness_csv(std::ostream& os, const WitnessReport& report) {
    os << "c,k,src_norm,dst_norm,ratio\n";
    for (const auto& row : report.rows) {
        os << format_real(row.c) << ',' << format_real(row.k) << ',' << format_real(row.src_norm)
           << ',' << format_real(row.dst_norm) << ',' << format_real(row.ratio) << '\n';
    }
}

std::string LuxResult::to_text() const {
    KeyValueBlock kv;
    kv.add("lambda", lambda);
    kv.add("integral_at_lambda", integral_at_lambda);
    kv.add("converged", converged);
    return kv.str();
}

std::string WitnessReport::to_text() const {
    KeyValueBlock kv;
    kv.add("family_size", static_cast<int>(rows.size()));
    kv.add("excluded", excluded_count);
    kv.add("max_ratio", max_ratio);
    kv.add("note", std::string("finite-sample evidence of boundedness, not a proof"));
    return kv.str();
}

} // namespace growth
