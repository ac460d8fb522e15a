#include "pfield/error_prob.hpp"

#include "pfield/errors.hpp"
#include "pfield/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

namespace pfield {

using std::numbers::pi;

void SinrValue::validate() const
{
    if (!(eta >= 0.0) || !std::isfinite(eta))
        throw DomainError("SINR must be finite and >= 0");
}

SinrValue eta_with_gain(const NetworkScenario& s, double G0, double interference_var)
{
    if (!(interference_var >= 0.0))
        throw DomainError("interference variance must be >= 0");
    if (!(s.N0 >= 0.0))
        throw DomainError("N0 must be >= 0");
    const double denom = s.N0 + 2.0 * interference_var;
    if (denom == 0.0)
        throw InfiniteSinrError("no noise and no interference: SINR is infinite");
    const double gain = std::exp(2.0 * s.sigma * G0 - 2.0 * s.b * std::log(s.r0));
    return {gain * s.E0 / denom};
}

SinrValue eta_conditional(const NetworkScenario& s, double A, double VX)
{
    if (!(A >= 0.0) || !(VX >= 0.0))
        throw DomainError("A and V_X must be >= 0");
    return eta_with_gain(s, s.G0.value_or(0.0), A * VX);
}

namespace {

const quad::Options kTheta{1e-11, 1e-10, 18};

/// Zeros of sin(u) inside (lo, hi).
std::vector<double> sine_zeros(double lo, double hi)
{
    std::vector<double> z;
    for (double m = std::ceil(lo / pi); m * pi < hi; m += 1.0)
        if (m * pi > lo)
            z.push_back(m * pi);
    return z;
}

/// Continuous antiderivative increment of atan(k tan u) over [lo, lo + phi], phi <= pi.
double atan_tan_increment(double lo, double phi, double k)
{
    const double hi = lo + phi;
    double d = std::atan2(k * std::sin(hi), std::cos(hi)) - std::atan2(k * std::sin(lo), std::cos(lo));
    d = std::fmod(d, 2.0 * pi);
    if (d < 0.0)
        d += 2.0 * pi;
    if (d > 1.5 * pi)
        d -= 2.0 * pi;
    return d;
}

/// (1 / 2 pi) int_psi^{psi + phi} sin^2 / (sin^2 + c) du in closed form.
double rayleigh_wedge(double phi, double psi, double c)
{
    const double k = std::sqrt((1.0 + c) / c);
    double atan_part = 0.0;
    for (double done = 0.0; done < phi;) {
        const double step = std::min(pi, phi - done);
        atan_part += atan_tan_increment(psi + done, step, k);
        done += step;
    }
    const double v = phi - atan_part / k;
    return std::max(v, 0.0) / (2.0 * pi);
}

/// (1 / 2 pi) int_psi^{psi + phi} f(u) du for the Rayleigh or Gaussian kernel with c = w eta / 4.
double wedge_integral(double phi, double psi, double c, ProbeChannel channel)
{
    if (phi <= 0.0)
        return 0.0;
    if (c == 0.0)
        return phi / (2.0 * pi);
    if (channel == ProbeChannel::rayleigh)
        return rayleigh_wedge(phi, psi, c);
    auto breaks = sine_zeros(psi, psi + phi);
    const double width = std::sqrt(c);
    if (width < 0.1) {
        std::vector<double> zeros;
        for (double m = std::floor(psi / pi); m * pi <= psi + phi + pi; m += 1.0)
            zeros.push_back(m * pi);
        for (const double z : zeros)
            for (const double f : {0.3, 3.0, 30.0})
                for (const double sgn : {-1.0, 1.0})
                    breaks.push_back(z + sgn * f * width);
    }
    auto f = [c](double u) {
        const double s2 = std::sin(u) * std::sin(u);
        return s2 == 0.0 ? 0.0 : std::exp(-c / s2);
    };
    return quad::integrate_split(f, psi, psi + phi, breaks, kTheta).value / (2.0 * pi);
}

double general_sum(const DecisionGeometry& geom, std::span<const double> probs, SinrValue eta, ProbeChannel ch)
{
    eta.validate();
    if (probs.size() != geom.wedges.size())
        throw GeometryError("probabilities do not match the decision geometry");
    double pe = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] == 0.0)
            continue;
        double acc = 0.0;
        for (const auto& w : geom.wedges[k])
            acc += wedge_integral(w.phi, w.psi, w.w * eta.eta / 4.0, ch);
        pe += probs[k] * acc;
    }
    return std::clamp(pe, 0.0, 1.0);
}

bool power_of_two(int m)
{
    return m >= 2 && (m & (m - 1)) == 0;
}

} // namespace

double integral_I(double x, double g, SinrValue eta)
{
    eta.validate();
    if (!(x >= 0.0 && x <= 2.0 * pi))
        throw DomainError("integral_I: x must lie in [0, 2 pi]");
    if (!(g > 0.0))
        throw DomainError("integral_I: g must be > 0");
    return 2.0 * wedge_integral(x, 0.0, g * eta.eta, ProbeChannel::rayleigh);
}

double pe_conditional_general(const DecisionGeometry& geom, std::span<const double> probs, SinrValue eta)
{
    return general_sum(geom, probs, eta, ProbeChannel::rayleigh);
}

double pe_awgn_general(const DecisionGeometry& geom, std::span<const double> probs, SinrValue eta)
{
    return general_sum(geom, probs, eta, ProbeChannel::awgn);
}

double pe_mpsk(int M, SinrValue eta)
{
    if (!power_of_two(M))
        throw ConfigurationError("M-PSK needs M >= 2 and a power of two");
    const double s = std::sin(pi / M);
    return integral_I((M - 1) * pi / M, s * s, eta);
}

double pe_mqam(int M, SinrValue eta)
{
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(M))));
    if (!power_of_two(M) || M < 4 || side * side != M)
        throw ConfigurationError("square M-QAM needs M = 2^n with n even");
    const double g = 3.0 / (2.0 * (M - 1));
    const double q = 1.0 - 1.0 / side;
    return 4.0 * q * integral_I(pi / 2.0, g, eta) - 4.0 * q * q * integral_I(pi / 4.0, g, eta);
}

SymbolErrorModel::SymbolErrorModel(const Constellation& c, ProbeChannel channel)
    : geom_(decision_geometry(c)), channel_(channel)
{
    c.validate();
    std::vector<Term> raw;
    for (std::size_t k = 0; k < c.size(); ++k)
        for (const auto& w : geom_.wedges[k])
            if (c.probs[k] > 0.0)
                raw.push_back({c.probs[k], w.phi, std::fmod(w.psi + 4.0 * pi, pi), w.w});
    auto key_less = [](const Term& a, const Term& b) {
        return std::tie(a.phi, a.psi, a.w) < std::tie(b.phi, b.psi, b.w);
    };
    std::sort(raw.begin(), raw.end(), key_less);
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };
    for (const auto& t : raw) {
        if (!terms_.empty() && close(terms_.back().phi, t.phi) && close(terms_.back().psi, t.psi) &&
            close(terms_.back().w, t.w))
            terms_.back().weight += t.weight;
        else
            terms_.push_back(t);
    }
    for (const auto& t : terms_)
        floor_ += t.weight * t.phi / (2.0 * pi);
}

double SymbolErrorModel::pe(double eta) const
{
    SinrValue{eta}.validate();
    double pe = 0.0;
    for (const auto& t : terms_)
        pe += t.weight * wedge_integral(t.phi, t.psi, t.w * eta / 4.0, channel_);
    return std::clamp(pe, 0.0, 1.0);
}

double SymbolErrorModel::eta_threshold(double p_target) const
{
    if (!(p_target > 0.0))
        throw DomainError("target error probability must be > 0");
    if (floor_ <= p_target)
        return 0.0;
    double lo = 1.0;
    double hi = 1.0;
    if (pe(1.0) > p_target) {
        while (pe(hi) > p_target) {
            lo = hi;
            hi *= 4.0;
            if (hi > 1e300)
                throw BracketError("eta_threshold: target error probability is not reachable");
        }
    } else {
        while (pe(lo) <= p_target) {
            hi = lo;
            lo /= 4.0;
            if (lo < 1e-300)
                return 0.0;
        }
    }
    for (int it = 0; it < 80 && hi / lo > 1.0 + 1e-13; ++it) {
        const double mid = std::sqrt(lo * hi);
        (pe(mid) > p_target ? lo : hi) = mid;
    }
    return hi;
}

LinkModel default_link()
{
    return {make_mpsk(2), make_mpsk(2), rayleigh_fading()};
}

namespace {

struct OutageDraw {
    double g0;
    double a;
};

/// Draw order per sample: G0 (if not pinned), then A (if lambda > 0). Kept fixed
/// so scenarios that differ only in E, or in lambda, reuse the same numbers.
OutageDraw draw_outage(const NetworkScenario& s, const StableParams& ap, RandomStream& rng)
{
    const double g0 = s.G0 ? *s.G0 : rng.normal();
    const double a = ap.gamma > 0.0 ? sample_stable(ap, rng) : 0.0;
    return {g0, a};
}

struct DrawSet {
    std::vector<OutageDraw> draws;
    void merge(const DrawSet& o) { draws.insert(draws.end(), o.draws.begin(), o.draws.end()); }
};

std::uint64_t count_outages(const NetworkScenario& s, std::span<const OutageDraw> draws, double vx, double eta_star)
{
    std::uint64_t hits = 0;
    for (const auto& d : draws)
        hits += eta_with_gain(s, d.g0, d.a * vx).eta < eta_star ? 1 : 0;
    return hits;
}

McEstimate bernoulli(std::uint64_t hits, std::uint64_t n, std::uint64_t seed)
{
    return BernoulliAccumulator{hits, n}.estimate(seed);
}

} // namespace

McEstimate outage_probability(const NetworkScenario& s, const LinkModel& link, double p_star, std::uint64_t n_mc,
                              const McConfig& cfg)
{
    s.validate();
    if (!(p_star > 0.0 && p_star <= 1.0))
        throw DomainError("p_star must lie in (0, 1]");
    if (n_mc < 1)
        throw DomainError("n_mc must be >= 1");
    const SymbolErrorModel model(link.probe);
    if (model.pe_floor() <= p_star)
        return bernoulli(0, n_mc, cfg.seed);
    const double eta_star = model.eta_threshold(p_star);
    const double vx = compute_VX(link.interferer, s.E);
    const StableParams ap = derive_A_params(s);
    const auto acc = run_streams(cfg, n_mc, [&](RandomStream& rng, std::uint64_t count) {
        BernoulliAccumulator a;
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto d = draw_outage(s, ap, rng);
            a.add(eta_with_gain(s, d.g0, d.a * vx).eta < eta_star);
        }
        return a;
    });
    return acc.estimate(cfg.seed);
}

McEstimate pe_average(const NetworkScenario& s, const LinkModel& link, std::uint64_t n_B, const McConfig& cfg)
{
    s.validate();
    if (n_B < 1)
        throw DomainError("n_B must be >= 1");
    const SymbolErrorModel model(link.probe);
    const double g0 = s.G0.value_or(0.0);
    const double ex2b = compute_EX2b(link.interferer, s.b, link.interferer_fading, s.E);
    const double vg = derive_VG(s, ex2b);
    if (vg == 0.0)
        return {model.pe(eta_with_gain(s, g0, 0.0).eta), 0.0, 0, cfg.seed};
    const StableParams bp = derive_B_params(s.b);
    const auto acc = run_streams(cfg, n_B, [&](RandomStream& rng, std::uint64_t count) {
        MeanAccumulator a;
        for (std::uint64_t i = 0; i < count; ++i)
            a.add(model.pe(eta_with_gain(s, g0, sample_stable(bp, rng) * vg).eta));
        return a;
    });
    return acc.estimate(cfg.seed);
}

double pe_given_field(const NetworkScenario& s, const LinkModel& link, const FieldRealization& f)
{
    s.validate();
    const double A = compute_A(f, s.b, s.sigma);
    const double vx = compute_VX(link.interferer, s.E);
    return SymbolErrorModel(link.probe).pe(eta_conditional(s, A, vx).eta);
}

IsoInrResult iso_inr_for_outage(NetworkScenario s, const LinkModel& link, double lambda, double target_pout,
                                double p_star, std::uint64_t n_mc, const McConfig& cfg, const IsoInrOptions& opts)
{
    s.lambda = lambda;
    s.validate();
    if (!(target_pout > 0.0 && target_pout < 1.0))
        throw DomainError("target outage must lie in (0, 1)");
    if (!(p_star > 0.0 && p_star <= 1.0))
        throw DomainError("p_star must lie in (0, 1]");
    if (n_mc < 1 || !(opts.tol_db > 0.0) || !(opts.inr_cap_db > opts.inr_lo_db))
        throw DomainError("iso_inr_for_outage: invalid options");

    const SymbolErrorModel model(link.probe);
    const double eta_star = model.pe_floor() <= p_star ? 0.0 : model.eta_threshold(p_star);
    const StableParams ap = derive_A_params(s);
    const auto set = run_streams(cfg, n_mc, [&](RandomStream& rng, std::uint64_t count) {
        DrawSet d;
        d.draws.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i)
            d.draws.push_back(draw_outage(s, ap, rng));
        return d;
    });
    const double vx_unit = compute_VX(link.interferer, 1.0);
    auto pout_at = [&](double inr_db) {
        s.set_inr_db(inr_db);
        return bernoulli(count_outages(s, set.draws, vx_unit * s.E, eta_star), n_mc, cfg.seed);
    };

    if (pout_at(-std::numeric_limits<double>::infinity()).value > target_pout)
        throw BracketError("target outage is unachievable even without interference");
    const auto at_cap = pout_at(opts.inr_cap_db);
    if (at_cap.value <= target_pout)
        return {opts.inr_cap_db, true, at_cap};
    double lo = opts.inr_lo_db;
    double hi = opts.inr_cap_db;
    if (pout_at(lo).value > target_pout)
        throw BracketError("target outage is not met at the lowest INR searched");
    while (hi - lo > opts.tol_db) {
        const double mid = 0.5 * (lo + hi);
        (pout_at(mid).value <= target_pout ? lo : hi) = mid;
    }
    return {lo, false, pout_at(lo)};
}

} // namespace pfield
