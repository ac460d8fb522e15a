#include "pfield/stable.hpp"

#include "pfield/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pfield {

using std::numbers::pi;

void StableParams::validate() const
{
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw DomainError("stable alpha must lie in (0, 2], got " + std::to_string(alpha));
    if (!(beta >= -1.0 && beta <= 1.0))
        throw DomainError("stable beta must lie in [-1, 1], got " + std::to_string(beta));
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw DomainError("stable gamma must be finite and >= 0, got " + std::to_string(gamma));
}

double StableParams::scale() const
{
    return is_alpha_one(alpha) ? gamma : std::pow(gamma, 1.0 / alpha);
}

void CsStableParams::validate() const
{
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw DomainError("CS stable alpha must lie in (0, 2], got " + std::to_string(alpha));
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw DomainError("CS stable gamma must be finite and >= 0, got " + std::to_string(gamma));
}

bool is_alpha_one(double alpha)
{
    return std::abs(alpha - 1.0) < kAlphaOneSnap;
}

std::complex<double> char_function(const StableParams& p, double w)
{
    p.validate();
    if (w == 0.0 || p.gamma == 0.0)
        return {1.0, 0.0};
    const double aw = std::abs(w);
    const double sgn = w > 0 ? 1.0 : -1.0;
    if (is_alpha_one(p.alpha)) {
        const double mag = p.gamma * aw;
        return std::exp(std::complex<double>(-mag, -mag * (2.0 / pi) * p.beta * sgn * std::log(aw)));
    }
    const double mag = p.gamma * std::pow(aw, p.alpha);
    return std::exp(std::complex<double>(-mag, mag * p.beta * sgn * std::tan(pi * p.alpha / 2.0)));
}

double sample_stable(const StableParams& p, RandomStream& rng)
{
    p.validate();
    if (p.gamma == 0.0)
        throw DegenerateDistributionError("sample_stable: gamma == 0 is a point mass at 0");

    const double v = pi * (rng.uniform() - 0.5);
    const double w = rng.exponential();

    if (is_alpha_one(p.alpha)) {
        const double half_pi = pi / 2.0;
        const double shifted = half_pi + p.beta * v;
        const double x =
            (2.0 / pi) * (shifted * std::tan(v) - p.beta * std::log(half_pi * w * std::cos(v) / shifted));
        return p.gamma * x + (2.0 / pi) * p.beta * p.gamma * std::log(p.gamma);
    }

    const double a = p.alpha;
    const double t = p.beta * std::tan(pi * a / 2.0);
    const double shift = std::atan(t) / a;
    const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * a));
    const double x = s * std::sin(a * (v + shift)) / std::pow(std::cos(v), 1.0 / a) *
                     std::pow(std::cos(v - a * (v + shift)) / w, (1.0 - a) / a);
    return std::pow(p.gamma, 1.0 / a) * x;
}

StableParams subordinator_params(double alpha)
{
    if (!(alpha > 0.0 && alpha < 2.0))
        throw DomainError("subordinator requires alpha in (0, 2)");
    return {alpha / 2.0, 1.0, std::cos(pi * alpha / 4.0)};
}

double subgaussian_component_variance(const CsStableParams& p)
{
    p.validate();
    // Re(sqrt(B) G) has cf E exp(-B v w^2 / 2) = exp(-(v w^2 / 2)^(alpha/2)).
    return 2.0 * std::pow(p.gamma, 2.0 / p.alpha);
}

std::complex<double> sample_cs_stable(const CsStableParams& p, RandomStream& rng)
{
    p.validate();
    if (p.gamma == 0.0)
        return {0.0, 0.0};
    const double v = subgaussian_component_variance(p);
    if (p.alpha == 2.0) {
        const double sd = std::sqrt(v);
        return {sd * rng.normal(), sd * rng.normal()};
    }
    const double b = sample_stable(subordinator_params(p.alpha), rng);
    const double sd = std::sqrt(b * v);
    return {sd * rng.normal(), sd * rng.normal()};
}

std::vector<double> pdf_numeric(const StableParams& p, std::span<const double> xs, const PdfOptions& opts)
{
    p.validate();
    const bool alpha_one = is_alpha_one(p.alpha);
    if (alpha_one && p.beta != 0.0)
        throw DomainError("pdf_numeric: alpha == 1 is supported only for beta == 0");
    std::vector<double> out(xs.size(), 0.0);
    if (p.gamma == 0.0)
        return out;

    const double a = alpha_one ? 1.0 : p.alpha;
    const double skew = alpha_one ? 0.0 : p.gamma * p.beta * std::tan(pi * a / 2.0);
    const double w_max = std::pow(-std::log(opts.cf_cutoff) / p.gamma, 1.0 / a);
    const double phase_rate_at_max = std::abs(a * skew) * std::pow(w_max, a - 1.0);

    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        if (!std::isfinite(x))
            throw DomainError("pdf_numeric: non-finite abscissa");
        auto integrand = [&](double w) {
            const double wa = std::pow(w, a);
            return std::exp(-p.gamma * wa) * std::cos(skew * wa - w * x);
        };

        const double rate = std::abs(x) + phase_rate_at_max;
        const double panels_needed = std::ceil(w_max * rate / pi) + 16.0;
        if (panels_needed > static_cast<double>(opts.max_panels))
            throw AccuracyError("pdf_numeric: inversion needs too many panels at x = " + std::to_string(x));
        const auto n_uniform = static_cast<std::size_t>(panels_needed);

        // Geometric refinement toward w = 0 where w^alpha has a cusp, then uniform panels.
        std::vector<double> cuts;
        const double h = w_max / static_cast<double>(n_uniform);
        for (int k = 40; k >= 1; --k)
            cuts.push_back(h * std::ldexp(1.0, -k));
        for (std::size_t k = 1; k <= n_uniform; ++k)
            cuts.push_back(h * static_cast<double>(k));

        double sum = 0.0;
        double err = 0.0;
        double lo = 0.0;
        for (const double hi : cuts) {
            double e = 0.0;
            sum += gk::integrate(integrand, lo, hi, 10, 1e-10, &e);
            err += e;
            lo = hi;
        }
        sum /= pi;
        err /= pi;
        if (!(err <= opts.abs_tol) || !std::isfinite(sum))
            throw AccuracyError("pdf_numeric: inversion error " + std::to_string(err) + " at x = " + std::to_string(x));
        out[i] = sum;
    }
    return out;
}

namespace closed_form {

double levy_scale(double gamma)
{
    return gamma * gamma;
}

double levy_pdf(double x, double c)
{
    if (x <= 0.0)
        return 0.0;
    return std::sqrt(c / (2.0 * pi)) * std::exp(-c / (2.0 * x)) / std::pow(x, 1.5);
}

double levy_cdf(double x, double c)
{
    if (x <= 0.0)
        return 0.0;
    return std::erfc(std::sqrt(c / (2.0 * x)));
}

double gaussian_pdf(double x, double gamma)
{
    const double var = 2.0 * gamma;
    return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * pi * var);
}

double cauchy_pdf(double x, double gamma)
{
    return gamma / (pi * (gamma * gamma + x * x));
}

} // namespace closed_form

} // namespace pfield
