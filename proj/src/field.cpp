#include "pfield/field.hpp"

#include "pfield/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pfield {

using std::numbers::pi;

namespace {

const double kDbPerNeper = 20.0 / std::numbers::ln10;

void require_b(double b)
{
    if (!(b > 1.0))
        throw DivergenceError("infinite-plane interference power diverges for b <= 1 (b = " + std::to_string(b) + ")");
}

} // namespace

void NetworkScenario::validate() const
{
    require_b(b);
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw DomainError("lambda must be finite and >= 0");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw DomainError("sigma must be finite and >= 0");
    if (!(N0 > 0.0))
        throw DomainError("N0 must be > 0");
    if (!(r0 > 0.0))
        throw DomainError("r0 must be > 0");
    if (!(E >= 0.0) || !(E0 >= 0.0))
        throw DomainError("symbol energies must be >= 0");
    if (!(T > 0.0))
        throw DomainError("T must be > 0");
    if (G0 && !std::isfinite(*G0))
        throw DomainError("G0 must be finite");
}

double NetworkScenario::snr_db() const
{
    return 10.0 * std::log10(E0 / N0);
}

double NetworkScenario::inr_db() const
{
    return 10.0 * std::log10(E / N0);
}

void NetworkScenario::set_snr_db(double db)
{
    E0 = N0 * std::pow(10.0, db / 10.0);
}

void NetworkScenario::set_inr_db(double db)
{
    E = std::isinf(db) && db < 0 ? 0.0 : N0 * std::pow(10.0, db / 10.0);
}

double sigma_from_db(double sigma_db)
{
    if (!(sigma_db >= 0.0))
        throw DomainError("sigma_dB must be >= 0");
    return sigma_db / kDbPerNeper;
}

double sigma_to_db(double sigma)
{
    if (!(sigma >= 0.0))
        throw DomainError("sigma must be >= 0");
    return sigma * kDbPerNeper;
}

LogDistanceLoss to_log_distance(double k, double b, double sigma)
{
    if (!(k > 0.0))
        throw DomainError("k must be > 0");
    return {-20.0 * std::log10(k), 20.0 * b, sigma_to_db(sigma)};
}

AmplitudeLoss from_log_distance(const LogDistanceLoss& l)
{
    return {std::pow(10.0, -l.k0 / 20.0), l.k1 / 20.0, sigma_from_db(l.sigma_db)};
}

double coeff_C(double x)
{
    if (!(x > 0.0 && x < 2.0))
        throw DomainError("C_x is defined for x in (0, 2), got " + std::to_string(x));
    if (x == 1.0)
        return 2.0 / pi;
    return (1.0 - x) / (std::tgamma(2.0 - x) * std::cos(pi * x / 2.0));
}

StableParams derive_A_params(const NetworkScenario& s)
{
    s.validate();
    const double gamma =
        s.lambda * pi / coeff_C(1.0 / s.b) * std::exp(2.0 * s.sigma * s.sigma / (s.b * s.b));
    return {1.0 / s.b, 1.0, gamma};
}

CsStableParams derive_Y_params(const NetworkScenario& s, double ex2b)
{
    s.validate();
    if (!(ex2b >= 0.0))
        throw DomainError("E{|X|^(2/b)} must be >= 0");
    const double gamma =
        s.lambda * pi / coeff_C(2.0 / s.b) * std::exp(2.0 * s.sigma * s.sigma / (s.b * s.b)) * ex2b;
    return {2.0 / s.b, gamma};
}

StableParams derive_B_params(double b)
{
    require_b(b);
    return {1.0 / b, 1.0, std::cos(pi / (2.0 * b))};
}

double derive_VG(const NetworkScenario& s, double ex2b)
{
    s.validate();
    if (!(ex2b >= 0.0))
        throw DomainError("E{|X|^(2/b)} must be >= 0");
    const double inner = s.lambda * pi / coeff_C(2.0 / s.b) * ex2b;
    return 2.0 * std::exp(2.0 * s.sigma * s.sigma / s.b) * std::pow(inner, s.b);
}

void sample_field_into(FieldRealization& out, const NetworkScenario& s, double r_max, RandomStream& rng)
{
    if (!(r_max > 0.0))
        throw DomainError("r_max must be > 0");
    out.distances.clear();
    out.shadowing.clear();
    out.r_max = r_max;
    if (s.lambda == 0.0)
        return;
    const double rate = s.lambda * pi;
    const double tau_max = r_max * r_max;
    double tau = 0.0;
    for (;;) {
        tau += rng.exponential() / rate;
        if (tau > tau_max)
            break;
        out.distances.push_back(std::sqrt(tau));
        out.shadowing.push_back(rng.normal());
    }
}

FieldRealization sample_field(const NetworkScenario& s, double r_max, RandomStream& rng)
{
    FieldRealization f;
    sample_field_into(f, s, r_max, rng);
    return f;
}

double compute_A(const FieldRealization& f, double b, double sigma)
{
    require_b(b);
    double a = 0.0;
    for (std::size_t i = 0; i < f.distances.size(); ++i) {
        const double r = f.distances[i];
        if (!(r > 0.0))
            throw SingularityError("interferer co-located with the probe receiver");
        a += std::exp(2.0 * sigma * f.shadowing[i] - 2.0 * b * std::log(r));
    }
    return a;
}

double expected_tail_A(const NetworkScenario& s, double r_max)
{
    s.validate();
    return s.lambda * pi * std::exp(2.0 * s.sigma * s.sigma) * std::pow(r_max, 2.0 - 2.0 * s.b) / (s.b - 1.0);
}

double truncation_radius(const NetworkScenario& s, double rel_tol, double default_radius)
{
    s.validate();
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw DomainError("rel_tol must lie in (0, 1)");
    if (s.lambda == 0.0)
        return default_radius;
    const double scale = derive_A_params(s).scale();
    const double coeff = s.lambda * pi * std::exp(2.0 * s.sigma * s.sigma) / (s.b - 1.0);
    return std::pow(coeff / (rel_tol * scale), 1.0 / (2.0 * s.b - 2.0));
}

} // namespace pfield
