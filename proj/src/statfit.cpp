#include "tracelab/statfit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "tracelab/errors.hpp"
#include "tracelab/parallel.hpp"

namespace tracelab {

double bipareto_ccdf(double x, const BiParetoParams& p) {
    if (x <= p.k) return 1.0;
    const double head = -p.alpha * std::log(x / p.k);
    const double tail = (p.alpha - p.beta) * (std::log(x + p.c) - std::log(p.k + p.c));
    return std::exp(head + tail);
}

double exponential_cdf(double x, const ExponentialParams& p) {
    if (x < 0.0) throw NegativeX("exponential CDF evaluated below 0");
    return -std::expm1(-p.lambda * x);
}

EmpiricalCdf EmpiricalCdf::from_samples(std::span<const double> samples) {
    if (samples.empty()) throw EmptyInput("empirical CDF needs samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    EmpiricalCdf cdf;
    const double n = static_cast<double>(sorted.size());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        cdf.xs.push_back(sorted[i]);
        cdf.value.push_back(static_cast<double>(j) / n);
        i = j;
    }
    return cdf;
}

EmpiricalCdf EmpiricalCdf::from_ccdf(const CcdfTable& table) {
    if (table.points.empty()) throw EmptyInput("empirical CDF needs points");
    EmpiricalCdf cdf;
    for (const CcdfPoint& p : table.points) {
        cdf.xs.push_back(p.x);
        cdf.value.push_back(1.0 - p.prob);
    }
    return cdf;
}

double EmpiricalCdf::at(double x) const {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return 0.0;
    return value[static_cast<std::size_t>(it - xs.begin()) - 1];
}

double ks_statistic(const EmpiricalCdf& empirical,
                    const std::function<double(double)>& model_cdf) {
    double d = 0.0;
    for (std::size_t i = 0; i < empirical.xs.size(); ++i) {
        const double x = empirical.xs[i];
        d = std::max(d, std::abs(empirical.value[i] - model_cdf(x)));
        const double below = std::nextafter(x, -std::numeric_limits<double>::infinity());
        const double left = i > 0 ? empirical.value[i - 1] : 0.0;
        d = std::max(d, std::abs(left - model_cdf(below)));
    }
    return d;
}

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
}

std::size_t distinct_points(const CcdfTable& table) {
    return table.points.size();  // table carries one point per distinct value
}

// Golden-section minimization of f over [lo, hi]; returns the best probed
// point. f is evaluated a fixed number of times, so the result is
// deterministic.
template <typename F>
std::pair<double, double> golden_min(F f, double lo, double hi, int iters) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

struct BiParetoObjective {
    // Points above the knee k; points at or below contribute a constant.
    std::vector<double> lx;   // log x
    std::vector<double> x;
    std::vector<double> e;    // empirical CCDF values
    double const_sse = 0.0;
    double k = 1.0;

    explicit BiParetoObjective(const CcdfTable& table) {
        for (const CcdfPoint& p : table.points) {
            if (p.x <= k) {
                const double r = 1.0 - p.prob;
                const_sse += r * r;
            } else {
                x.push_back(p.x);
                lx.push_back(std::log(p.x));
                e.push_back(p.prob);
            }
        }
    }

    double sse(double alpha, double beta, double c) const {
        const double lkc = std::log(k + c);
        double acc = const_sse;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double m = std::exp(-alpha * lx[i] + (alpha - beta) * (std::log(x[i] + c) - lkc));
            const double r = m - e[i];
            acc += r * r;
        }
        return acc;
    }

    // Grid phase: reuse log(x+c) across all (alpha, beta) sharing one c.
    double sse_pre(double alpha, double beta, std::span<const double> gc) const {
        double acc = const_sse;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double m = std::exp(-alpha * lx[i] + (alpha - beta) * gc[i]);
            const double r = m - e[i];
            acc += r * r;
        }
        return acc;
    }
};

constexpr double kAlphaLo = 1e-3, kAlphaHi = 1.0;
constexpr double kBetaLo = 1e-2, kBetaHi = 1e2;
constexpr double kCLo = 1.0, kCHi = 1e6;
constexpr int kMaxSweeps = 64;
constexpr int kMaxLmIters = 200;
constexpr int kMaxLmTries = 48;
constexpr int kGoldenIters = 60;

// Solve (A + lambda*diag(A)) d = -g for a symmetric 3x3 A stored as
// {a11, a21, a22, a31, a32, a33}; returns false on a non-positive pivot.
bool lm_solve(const std::array<double, 6>& a, double lambda, const std::array<double, 3>& g,
              std::array<double, 3>& d) {
    const double m11 = a[0] + lambda * std::max(a[0], 1e-30);
    const double m22 = a[2] + lambda * std::max(a[2], 1e-30);
    const double m33 = a[5] + lambda * std::max(a[5], 1e-30);
    const double l11 = std::sqrt(m11);
    if (!(l11 > 0.0)) return false;
    const double l21 = a[1] / l11;
    const double l31 = a[3] / l11;
    const double t22 = m22 - l21 * l21;
    if (!(t22 > 0.0)) return false;
    const double l22 = std::sqrt(t22);
    const double l32 = (a[4] - l31 * l21) / l22;
    const double t33 = m33 - l31 * l31 - l32 * l32;
    if (!(t33 > 0.0)) return false;
    const double l33 = std::sqrt(t33);
    const double y1 = -g[0] / l11;
    const double y2 = (-g[1] - l21 * y1) / l22;
    const double y3 = (-g[2] - l31 * y1 - l32 * y2) / l33;
    d[2] = y3 / l33;
    d[1] = (y2 - l32 * d[2]) / l22;
    d[0] = (y1 - l21 * d[1] - l31 * d[2]) / l11;
    return true;
}

}  // namespace

BiParetoFit fit_bipareto(const CcdfTable& empirical) {
    if (distinct_points(empirical) < 4)
        throw InsufficientPoints("biPareto fit needs at least 4 distinct points");
    const BiParetoObjective obj(empirical);

    const auto alphas = log_grid(kAlphaLo, kAlphaHi, 12);
    const auto betas = log_grid(kBetaLo, kBetaHi, 16);
    const auto cs = log_grid(kCLo, kCHi, 16);

    std::vector<std::vector<double>> gc(cs.size());
    parallel::parallel_for(cs.size(), [&](std::size_t ci) {
        const double lkc = std::log(obj.k + cs[ci]);
        auto& v = gc[ci];
        v.resize(obj.x.size());
        for (std::size_t i = 0; i < obj.x.size(); ++i) v[i] = std::log(obj.x[i] + cs[ci]) - lkc;
    });

    const std::size_t total = alphas.size() * betas.size() * cs.size();
    std::vector<double> sse(total);
    parallel::parallel_for(total, [&](std::size_t idx) {
        const std::size_t ai = idx / (betas.size() * cs.size());
        const std::size_t bi = (idx / cs.size()) % betas.size();
        const std::size_t ci = idx % cs.size();
        sse[idx] = obj.sse_pre(alphas[ai], betas[bi], gc[ci]);
    });
    std::size_t best_idx = 0;
    for (std::size_t idx = 1; idx < total; ++idx)
        if (sse[idx] < sse[best_idx]) best_idx = idx;

    double alpha = alphas[best_idx / (betas.size() * cs.size())];
    double beta = betas[(best_idx / cs.size()) % betas.size()];
    double c = cs[best_idx % cs.size()];
    double best = sse[best_idx];

    // Levenberg-Marquardt refinement in log-parameter space. Coordinate-wise
    // line searches zigzag for hundreds of sweeps along the curved valley
    // where beta and c trade off; the Gauss-Newton model cuts through it.
    const std::array<double, 3> ulo{std::log(kAlphaLo), std::log(kBetaLo), std::log(kCLo)};
    const std::array<double, 3> uhi{std::log(kAlphaHi), std::log(kBetaHi), std::log(kCHi)};
    std::array<double, 3> u{std::log(alpha), std::log(beta), std::log(c)};
    double lambda = 1e-3;
    bool converged = false;
    for (int iter = 0; iter < kMaxLmIters && !converged; ++iter) {
        const double av = std::exp(u[0]);
        const double bv = std::exp(u[1]);
        const double cv = std::exp(u[2]);
        const double lkc = std::log(obj.k + cv);
        std::array<double, 6> jtj{};
        std::array<double, 3> jtr{};
        for (std::size_t i = 0; i < obj.x.size(); ++i) {
            const double g = std::log(obj.x[i] + cv) - lkc;
            const double m = std::exp(-av * obj.lx[i] + (av - bv) * g);
            const double r = m - obj.e[i];
            const double ja = av * m * (g - obj.lx[i]);
            const double jb = -bv * m * g;
            const double jc = m * (av - bv) * cv * (1.0 / (obj.x[i] + cv) - 1.0 / (obj.k + cv));
            jtj[0] += ja * ja;
            jtj[1] += jb * ja;
            jtj[2] += jb * jb;
            jtj[3] += jc * ja;
            jtj[4] += jc * jb;
            jtj[5] += jc * jc;
            jtr[0] += ja * r;
            jtr[1] += jb * r;
            jtr[2] += jc * r;
        }
        const double before = best;
        bool stepped = false;
        for (int tries = 0; tries < kMaxLmTries && !stepped; ++tries) {
            std::array<double, 3> d;
            if (lm_solve(jtj, lambda, jtr, d)) {
                std::array<double, 3> v;
                for (int j = 0; j < 3; ++j) v[j] = std::clamp(u[j] + d[j], ulo[j], uhi[j]);
                const double f = obj.sse(std::exp(v[0]), std::exp(v[1]), std::exp(v[2]));
                if (f < best) {
                    u = v;
                    best = f;
                    lambda = std::max(lambda * 0.25, 1e-12);
                    stepped = true;
                    break;
                }
            }
            lambda *= 4.0;
            if (lambda > 1e15) break;
        }
        // No damping level yields an improving step: stationary to machine
        // precision, which is as converged as the arithmetic allows.
        if (!stepped) { converged = true; break; }
        converged = before - best <= 1e-12 * (1.0 + before);
    }
    if (!converged) throw NonConvergence("biPareto fit exceeded the iteration cap");
    alpha = std::exp(u[0]);
    beta = std::exp(u[1]);
    c = std::exp(u[2]);

    BiParetoFit fit;
    fit.params = {alpha, beta, c, obj.k};
    fit.sse = best;
    const EmpiricalCdf cdf = EmpiricalCdf::from_ccdf(empirical);
    fit.d_stat = ks_statistic(cdf, [&](double v) { return 1.0 - bipareto_ccdf(v, fit.params); });
    return fit;
}

ExponentialFit fit_exponential(const CcdfTable& empirical) {
    if (distinct_points(empirical) < 4)
        throw InsufficientPoints("exponential fit needs at least 4 distinct points");
    std::vector<double> x;
    std::vector<double> e;
    for (const CcdfPoint& p : empirical.points) {
        x.push_back(p.x);
        e.push_back(p.prob);
    }
    auto sse_for = [&](double lambda) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double m = x[i] >= 0.0 ? std::exp(-lambda * x[i]) : 1.0;
            const double r = m - e[i];
            acc += r * r;
        }
        return acc;
    };

    const auto lambdas = log_grid(1e-8, 1e6, 256);
    std::vector<double> sse(lambdas.size());
    parallel::parallel_for(lambdas.size(), [&](std::size_t i) { sse[i] = sse_for(lambdas[i]); });
    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (sse[i] < sse[best_idx]) best_idx = i;

    double lambda = lambdas[best_idx];
    double best = sse[best_idx];
    const double ratio = std::pow(1e6 / 1e-8, 1.0 / static_cast<double>(lambdas.size() - 1));
    const double step = ratio * ratio;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        const double before = best;
        const double a = std::max(1e-8, lambda / step);
        const double b = std::min(1e6, lambda * step);
        auto [ll, fl] = golden_min([&](double t) { return sse_for(std::exp(t)); }, std::log(a),
                                   std::log(b), kGoldenIters);
        if (fl < best) { lambda = std::exp(ll); best = fl; }
        converged = before - best <= 1e-12 * (1.0 + before);
    }
    if (!converged) throw NonConvergence("exponential fit exceeded the sweep cap");

    ExponentialFit fit;
    fit.params = {lambda};
    fit.sse = best;
    const EmpiricalCdf cdf = EmpiricalCdf::from_ccdf(empirical);
    fit.d_stat = ks_statistic(cdf, [&](double v) {
        return v >= 0.0 ? -std::expm1(-lambda * v) : 0.0;
    });
    return fit;
}

}  // namespace tracelab
