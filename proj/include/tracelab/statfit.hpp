#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tracelab/user_metrics.hpp"

namespace tracelab {

// Two-slope Pareto-like CCDF: P(X>x) = (x/k)^{-alpha} ((x+c)/(k+c))^{alpha-beta}
// for x > k, 1 otherwise. Head slope alpha, tail slope beta, knee near c.
struct BiParetoParams {
    double alpha = 0.0;
    double beta = 0.0;
    double c = 0.0;
    double k = 1.0;
};

struct ExponentialParams {
    double lambda = 0.0;
};

double bipareto_ccdf(double x, const BiParetoParams& p);
// Throws NegativeX for x < 0.
double exponential_cdf(double x, const ExponentialParams& p);

// Right-continuous empirical step CDF: F(x) = value[i] for x in
// [xs[i], xs[i+1]), 0 below xs[0].
struct EmpiricalCdf {
    std::vector<double> xs;     // ascending, distinct
    std::vector<double> value;  // F at xs[i]

    static EmpiricalCdf from_samples(std::span<const double> samples);
    static EmpiricalCdf from_ccdf(const CcdfTable& table);
    double at(double x) const;
};

// sup |F_n - F_0| probed at every jump point and just below it, so a step
// model identical to the empirical CDF scores exactly 0.
double ks_statistic(const EmpiricalCdf& empirical,
                    const std::function<double(double)>& model_cdf);

struct BiParetoFit {
    BiParetoParams params;
    double sse = 0.0;
    double d_stat = 0.0;
};

struct ExponentialFit {
    ExponentialParams params;
    double sse = 0.0;
    double d_stat = 0.0;
};

// Minimum squared error against the CCDF values, via a logarithmic grid
// sweep refined by per-coordinate golden-section descent. Deterministic;
// needs at least 4 distinct points (InsufficientPoints otherwise).
BiParetoFit fit_bipareto(const CcdfTable& empirical);
ExponentialFit fit_exponential(const CcdfTable& empirical);

}  // namespace tracelab
