#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace pfield::stats {

/// One-sample Kolmogorov-Smirnov statistic sup|F_n - F|.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic KS critical values at significance `level`.
double ks_critical(std::size_t n, double level = 0.01);
double ks_critical_two_sample(std::size_t n, std::size_t m, double level = 0.01);

/// Linear-interpolation quantile of an ascending sample.
double quantile_sorted(std::span<const double> sorted, double p);
std::vector<double> quantiles(std::vector<double> sample, std::span<const double> probs);

/// Empirical characteristic function estimate with per-component standard errors.
struct CfEstimate {
    std::complex<double> value;
    double se_re = 0.0;
    double se_im = 0.0;
};

CfEstimate empirical_cf(std::span<const double> sample, double w);

/// Empirical E[exp(-s X)] with standard error.
struct MeanWithError {
    double value = 0.0;
    double std_err = 0.0;
};

MeanWithError empirical_laplace(std::span<const double> sample, double s);

/// Rayleigh test for uniformity of angles; returns the approximate p-value.
double rayleigh_test_pvalue(std::span<const double> angles);

} // namespace pfield::stats
