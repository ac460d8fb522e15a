#include "pfield/stats.hpp"

#include "pfield/errors.hpp"
#include "pfield/mc.hpp"

#include <algorithm>
#include <cmath>

namespace pfield {

Interval wilson_interval(const McEstimate& e, double z)
{
    if (e.n == 0)
        return {0.0, 1.0};
    const double n = static_cast<double>(e.n);
    const double p = e.value;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

} // namespace pfield

namespace pfield::stats {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf)
{
    if (sample.empty())
        throw DomainError("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw DomainError("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical(std::size_t n, double level)
{
    return std::sqrt(-0.5 * std::log(level / 2.0)) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double level)
{
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return std::sqrt(-0.5 * std::log(level / 2.0)) * std::sqrt((nn + mm) / (nn * mm));
}

double quantile_sorted(std::span<const double> sorted, double p)
{
    if (sorted.empty())
        throw DomainError("quantile of empty sample");
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> quantiles(std::vector<double> sample, std::span<const double> probs)
{
    std::sort(sample.begin(), sample.end());
    std::vector<double> out;
    out.reserve(probs.size());
    for (const double p : probs)
        out.push_back(quantile_sorted(sample, p));
    return out;
}

CfEstimate empirical_cf(std::span<const double> sample, double w)
{
    MeanAccumulator re;
    MeanAccumulator im;
    for (const double x : sample) {
        re.add(std::cos(w * x));
        im.add(std::sin(w * x));
    }
    return {{re.mean(), im.mean()}, re.std_err(), im.std_err()};
}

MeanWithError empirical_laplace(std::span<const double> sample, double s)
{
    MeanAccumulator acc;
    for (const double x : sample)
        acc.add(std::exp(-s * x));
    return {acc.mean(), acc.std_err()};
}

double rayleigh_test_pvalue(std::span<const double> angles)
{
    if (angles.empty())
        throw DomainError("rayleigh_test_pvalue: empty sample");
    double c = 0.0;
    double s = 0.0;
    for (const double a : angles) {
        c += std::cos(a);
        s += std::sin(a);
    }
    const double n = static_cast<double>(angles.size());
    const double z = (c * c + s * s) / n;
    // Zar's approximation of the Rayleigh-test p-value.
    const double p = std::exp(std::sqrt(1.0 + 4.0 * n + 4.0 * (n * n - n * z)) - (1.0 + 2.0 * n));
    return std::clamp(p, 0.0, 1.0);
}

} // namespace pfield::stats
