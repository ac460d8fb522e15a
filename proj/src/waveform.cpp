#include "pfield/waveform.hpp"

#include "pfield/errors.hpp"
#include "pfield/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pfield {

using std::numbers::pi;
using cplx = std::complex<double>;

void InterfererDraw::validate() const
{
    if (!(delay_frac >= 0.0 && delay_frac <= 1.0))
        throw DomainError("delay fraction must lie in [0, 1]");
    if (!(fade_amp >= 0.0))
        throw DomainError("fading amplitude must be >= 0");
}

namespace {

/// Symbol picker that avoids std::discrete_distribution for the equiprobable case.
class SymbolPicker {
public:
    explicit SymbolPicker(const Constellation& c) : c_(c)
    {
        uniform_ = std::all_of(c.probs.begin(), c.probs.end(), [&](double p) { return p == c.probs[0]; });
        if (!uniform_)
            dist_ = std::discrete_distribution<std::size_t>(c.probs.begin(), c.probs.end());
    }

    std::size_t index(RandomStream& rng) { return uniform_ ? rng.index(c_.size()) : dist_(rng.engine()); }
    cplx point(RandomStream& rng) { return c_.points[index(rng)]; }

private:
    const Constellation& c_;
    bool uniform_ = true;
    std::discrete_distribution<std::size_t> dist_;
};

InterfererDraw draw_with(SymbolPicker& pick, const FadingModel& fading, RandomStream& rng)
{
    InterfererDraw d;
    d.symbol = pick.point(rng);
    d.next_symbol = pick.point(rng);
    d.delay_frac = rng.uniform();
    d.fade_amp = fading.sample_amplitude(rng);
    d.fade_phase = 2.0 * pi * rng.uniform();
    return d;
}

cplx Y_with(const FieldRealization& f, SymbolPicker& pick, const FadingModel& fading, double b, double sigma,
            double k, RandomStream& rng)
{
    cplx y{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = f.distances[i];
        if (!(r > 0.0))
            throw SingularityError("interferer co-located with the probe receiver");
        const auto d = draw_with(pick, fading, rng);
        y += std::exp(sigma * f.shadowing[i] - b * std::log(r)) * interference_sample_X(d, k);
    }
    return y;
}

} // namespace

InterfererDraw draw_interferer(const Constellation& c, const FadingModel& fading, RandomStream& rng)
{
    SymbolPicker pick(c);
    return draw_with(pick, fading, rng);
}

cplx interference_sample_X(const InterfererDraw& d, double k)
{
    const double t = d.delay_frac;
    return k * d.fade_amp * std::polar(1.0, d.fade_phase) * (t * d.symbol + (1.0 - t) * d.next_symbol);
}

cplx aggregate_Y(const FieldRealization& f, std::span<const InterfererDraw> draws, double b, double sigma, double k)
{
    if (draws.size() != f.size())
        throw DomainError("aggregate_Y: one draw per interferer required");
    cplx y{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = f.distances[i];
        if (!(r > 0.0))
            throw SingularityError("interferer co-located with the probe receiver");
        y += std::exp(sigma * f.shadowing[i] - b * std::log(r)) * interference_sample_X(draws[i], k);
    }
    return y;
}

cplx sample_Y(const FieldRealization& f, const Constellation& c, const FadingModel& fading, double b, double sigma,
              double k, RandomStream& rng)
{
    SymbolPicker pick(c);
    return Y_with(f, pick, fading, b, sigma, k, rng);
}

double passband_projection_check(const InterfererDraw& d, double fcT, std::size_t n_time_samples, double k)
{
    d.validate();
    if (!(fcT >= 10.0))
        throw DomainError("passband check needs fcT >= 10");
    if (static_cast<double>(n_time_samples) < 4.0 * fcT)
        throw UnderSamplingError("passband check needs at least 4 fcT time samples");

    const double T = 1.0;
    const double fc = fcT / T;
    const double D = d.delay_frac * T;
    const double amp = k * d.fade_amp * std::sqrt(2.0 / T);
    const double ph1 = std::arg(d.symbol) + d.fade_phase;
    const double ph2 = std::arg(d.next_symbol) + d.fade_phase;
    const double a1 = std::abs(d.symbol);
    const double a2 = std::abs(d.next_symbol);
    const double basis = std::sqrt(2.0 / T);

    const std::size_t panels = std::max<std::size_t>(n_time_samples / 10, 2);
    auto project = [&](auto psi) {
        auto seg = [&](double lo, double hi, double a, double ph) {
            if (hi <= lo)
                return 0.0;
            const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(panels * (hi - lo) / T)));
            auto f = [&](double t) { return amp * a * std::cos(2.0 * pi * fc * t + ph) * psi(t); };
            return quad::gauss_legendre_composite(f, lo, hi, n);
        };
        return seg(0.0, D, a1, ph1) + seg(D, T, a2, ph2);
    };
    const double y1 = project([&](double t) { return basis * std::cos(2.0 * pi * fc * t); });
    const double y2 = project([&](double t) { return -basis * std::sin(2.0 * pi * fc * t); });
    const cplx x = interference_sample_X(d, k);
    return std::max(std::abs(y1 - x.real()), std::abs(y2 - x.imag()));
}

namespace {

struct SymbolSim {
    const NetworkScenario& s;
    const LinkModel& link;
    SymbolPicker probe;
    SymbolPicker interferer;
    double probe_amp;
    double k_interferer;
    double noise_sd;

    SymbolSim(const NetworkScenario& sc, const LinkModel& l)
        : s(sc), link(l), probe(l.probe), interferer(l.interferer),
          probe_amp(std::sqrt(sc.E0) * std::exp(sc.sigma * sc.G0.value_or(0.0) - sc.b * std::log(sc.r0))),
          k_interferer(std::sqrt(sc.E)), noise_sd(std::sqrt(sc.N0 / 2.0))
    {
    }

    /// One symbol through the channel; true on a detection error.
    bool error(const FieldRealization& f, RandomStream& rng)
    {
        const std::size_t k = probe.index(rng);
        const double gain = probe_amp * std::sqrt(rng.exponential());
        const cplx y = Y_with(f, interferer, link.interferer_fading, s.b, s.sigma, k_interferer, rng);
        const cplx w{noise_sd * rng.normal(), noise_sd * rng.normal()};
        const cplx z = gain * link.probe.points[k] + y + w;
        if (gain == 0.0)
            return nearest_point(link.probe, z) != k;
        return nearest_point(link.probe, z / gain) != k;
    }
};

} // namespace

McEstimate ber_oracle(const NetworkScenario& s, const LinkModel& link, const FieldRealization& field,
                      std::uint64_t n_symbols, const McConfig& cfg)
{
    s.validate();
    link.probe.validate();
    link.interferer.validate();
    if (n_symbols < 1)
        throw DomainError("n_symbols must be >= 1");
    const auto acc = run_streams(cfg, n_symbols, [&](RandomStream& rng, std::uint64_t count) {
        SymbolSim sim(s, link);
        BernoulliAccumulator a;
        for (std::uint64_t i = 0; i < count; ++i)
            a.add(sim.error(field, rng));
        return a;
    });
    return acc.estimate(cfg.seed);
}

McEstimate ber_oracle(const NetworkScenario& s, const LinkModel& link, const OracleOptions& opts,
                      const McConfig& cfg)
{
    s.validate();
    if (opts.n_symbols < 1 || opts.block_length < 1)
        throw DomainError("n_symbols and block_length must be >= 1");
    const double r_max = truncation_radius(s, opts.trunc_rel_tol);
    if (opts.mode == OracleMode::slow) {
        RandomStream field_rng(cfg.seed, 0xf1e1d);
        return ber_oracle(s, link, sample_field(s, r_max, field_rng), opts.n_symbols, cfg);
    }
    link.probe.validate();
    link.interferer.validate();
    const auto acc = run_streams(cfg, opts.n_symbols, [&](RandomStream& rng, std::uint64_t count) {
        SymbolSim sim(s, link);
        FieldRealization f;
        BernoulliAccumulator a;
        for (std::uint64_t i = 0; i < count; ++i) {
            if (i % opts.block_length == 0)
                sample_field_into(f, s, r_max, rng);
            a.add(sim.error(f, rng));
        }
        return a;
    });
    return acc.estimate(cfg.seed);
}

std::vector<double> empirical_A(const NetworkScenario& s, std::uint64_t n, double rel_tol, const McConfig& cfg,
                                TailMode tail)
{
    s.validate();
    if (n < 1)
        throw DomainError("n must be >= 1");
    const double r_max = truncation_radius(s, rel_tol);
    const double offset = tail == TailMode::add_mean ? expected_tail_A(s, r_max) : 0.0;
    struct Samples {
        std::vector<double> v;
        void merge(const Samples& o) { v.insert(v.end(), o.v.begin(), o.v.end()); }
    };
    return run_streams(cfg, n, [&](RandomStream& rng, std::uint64_t count) {
               Samples out;
               out.v.reserve(count);
               FieldRealization f;
               for (std::uint64_t i = 0; i < count; ++i) {
                   sample_field_into(f, s, r_max, rng);
                   out.v.push_back(compute_A(f, s.b, s.sigma) + offset);
               }
               return out;
           })
        .v;
}

} // namespace pfield
