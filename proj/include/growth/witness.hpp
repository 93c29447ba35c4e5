#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "growth/spec.hpp"
#include "growth/view.hpp"

namespace growth {

/// f(z) = k (1-z)^{-c} on the unit disk; |f(r e^{i theta})| =
/// k ((1-r)^2 + 4 r sin^2(theta/2))^{-c/2}.
struct TestFunction {
    double c = 0.0; // singularity strength, >= 0
    double k = 1.0; // scale, > 0

    void validate() const;
};

struct QuadConfig {
    int n_radial = 512;  // Gauss-Legendre nodes on [0,1], mapped r = 1-(1-u)^2
    int n_angular = 512; // midpoint rule in theta
    double lux_tol = 1e-8;
    int lux_max_iter = 200;

    void validate() const;
};

struct LuxResult {
    double lambda = 0.0;           // +inf when no bracket below the 1e30 cap
    double integral_at_lambda = 0.0; // modular(lambda) - 1
    bool converged = false;

    std::string to_text() const;
};

/// Tensor rule for the probability measure c_alpha (1-|z|^2)^alpha dA on the
/// unit disk, c_alpha = (alpha+1)/pi. Weights and the per-node log|1-z| are
/// precomputed once; modular evaluations then reduce over a fixed pairwise
/// tree, independent of the worker count.
class DiskRule {
public:
    DiskRule(double alpha, const QuadConfig& quad); // throws DomainError if alpha <= -1

    std::size_t size() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& log_one_minus_z() const { return log_dist_; }

    /// Integral of Phi(|f|/lambda) against the rule, evaluated through the
    /// log-view; saturates to +inf instead of throwing when a node overflows.
    /// The scratch overload reuses the caller's term buffer across repeated
    /// probes (one bisection makes dozens of them).
    double modular(const TestFunction& f, const LogView& phi, double log_lambda) const;
    double modular(const TestFunction& f, const LogView& phi, double log_lambda,
                   std::vector<double>& scratch) const;

private:
    std::vector<double> weights_;
    std::vector<double> log_dist_; // log|1 - z| per node
};

/// Integral of Phi(|f(z)|/lambda) dnu_alpha(z) over the disk.
double weighted_integral(const TestFunction& f, const SpecPtr& phi, double alpha,
                         double lambda, const QuadConfig& quad);

/// Luxembourg quasi-norm inf{lambda > 0 : modular(lambda) <= 1}, located by
/// geometric bracket expansion and bisection on log lambda.
LuxResult lux_norm(const TestFunction& f, const SpecPtr& phi, double alpha,
                   const QuadConfig& quad);

struct WitnessRow {
    double c = 0.0, k = 1.0;
    double src_norm = 0.0;
    double dst_norm = 0.0;
    double ratio = 0.0;
    bool excluded = false; // infinite/unconverged source norm
};

struct WitnessReport {
    std::vector<WitnessRow> rows;
    double max_ratio = 0.0; // over included rows
    int excluded_count = 0;

    std::string to_text() const;
};

/// Finite-sample evidence for the embedding: the ratio of target to source
/// Luxembourg norms over a family of test functions. Not a proof of the
/// operator bound; the family maximum is reported as-is.
WitnessReport witness_embedding(const SpecPtr& phi, const SpecPtr& psi, double alpha,
                                double beta, std::span<const TestFunction> family,
                                const QuadConfig& quad);

/// CSV: header c,k,src_norm,dst_norm,ratio; "inf" for divergent norms.
void write_witness_csv(std::ostream& os, const WitnessReport& report);

/// Gauss-Legendre nodes/weights on [0,1] (Newton on the Legendre recurrence).
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace growth
