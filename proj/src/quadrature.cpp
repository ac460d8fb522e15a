#include "pfield/quadrature.hpp"

#include "pfield/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace pfield::quad {

namespace {

[[noreturn]] void fail(double err, double a, double b)
{
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "]: error estimate " << err;
    throw AccuracyError(msg.str());
}

Result integrate_piece(const std::function<double(double)>& f, double a, double b, const Options& opts)
{
    if (a == b)
        return {};
    double err = 0.0;
    double l1 = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, opts.max_depth, opts.rel_tol, &err, &l1);
    if (!std::isfinite(value))
        throw AccuracyError("quadrature produced a non-finite value on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
    return {value, err};
}

} // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts)
{
    const Result r = integrate_piece(f, a, b, opts);
    if (r.error > std::max(opts.abs_tol, opts.rel_tol * std::abs(r.value)))
        fail(r.error, a, b);
    return r;
}

Result integrate_split(const std::function<double(double)>& f, double a, double b, std::span<const double> breaks,
                       const Options& opts)
{
    std::vector<double> cuts{a};
    for (const double x : breaks)
        if (x > std::min(a, b) && x < std::max(a, b))
            cuts.push_back(x);
    std::sort(cuts.begin() + 1, cuts.end());
    if (b < a)
        std::reverse(cuts.begin() + 1, cuts.end());
    cuts.push_back(b);

    Result total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Result r = integrate_piece(f, cuts[i], cuts[i + 1], opts);
        total.value += r.value;
        total.error += r.error;
    }
    if (total.error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value)))
        fail(total.error, a, b);
    return total;
}

Result integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b, const Options& opts)
{
    if (a == b)
        return {};
    static boost::math::quadrature::tanh_sinh<double> rule;
    double err = 0.0;
    double l1 = 0.0;
    const double value = rule.integrate(f, a, b, opts.rel_tol, &err, &l1);
    if (!std::isfinite(value))
        fail(err, a, b);
    if (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(value)))
        fail(err, a, b);
    return {value, err};
}

double gauss_legendre_composite(const std::function<double(double)>& f, double a, double b, std::size_t panels)
{
    using rule = boost::math::quadrature::gauss<double, 10>;
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + h * static_cast<double>(p);
        sum += rule::integrate(f, lo, lo + h);
    }
    return sum;
}

} // namespace pfield::quad
