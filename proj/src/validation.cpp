#include "pfield/validation.hpp"

#include "pfield/errors.hpp"
#include "pfield/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pfield::validation {

bool Report::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

std::uint64_t scaled(double n, const SuiteOptions& o)
{
    return std::max<std::uint64_t>(100, static_cast<std::uint64_t>(std::llround(n * o.scale)));
}

std::vector<double> stable_samples(const StableParams& p, std::uint64_t n, std::uint64_t seed, std::uint64_t stream)
{
    RandomStream rng(seed, stream);
    std::vector<double> v(n);
    for (auto& x : v)
        x = sample_stable(p, rng);
    return v;
}

/// |measured - expected| <= k * se, reported as a z-score against bound k.
Check z_check(std::string name, double measured, double expected, double se, double k)
{
    const double z = se > 0.0 ? std::abs(measured - expected) / se : (measured == expected ? 0.0 : INFINITY);
    std::ostringstream d;
    d.precision(6);
    d << "measured " << measured << ", expected " << expected << ", se " << se;
    return {std::move(name), z <= k, z, k, d.str()};
}

Check upper_check(std::string name, double measured, double bound, std::string detail = {})
{
    return {std::move(name), measured <= bound, measured, bound, std::move(detail)};
}

NetworkScenario scenario(double b, double lambda, double sigma_db)
{
    NetworkScenario s;
    s.b = b;
    s.lambda = lambda;
    s.sigma = sigma_from_db(sigma_db);
    return s;
}

std::string fmt_params(const StableParams& p)
{
    std::ostringstream o;
    o << "(" << p.alpha << "," << p.beta << "," << p.gamma << ")";
    return o.str();
}

} // namespace

Report stable_suite(const SuiteOptions& o)
{
    Report r{"stable", o.seed, {}};
    const std::uint64_t n = scaled(1e5, o);

    {
        const StableParams levy{0.5, 1.0, 1.0};
        const double c = closed_form::levy_scale(levy.gamma);
        const double ks = stats::ks_statistic(stable_samples(levy, n, o.seed, 1),
                                              [c](double x) { return closed_form::levy_cdf(x, c); });
        r.checks.push_back(upper_check("levy_ks", ks, std::max(0.01, stats::ks_critical(n))));
    }
    {
        const auto v = stable_samples({2.0, 0.0, 1.0}, n, o.seed, 2);
        double m = 0.0, m2 = 0.0;
        for (double x : v)
            m += x;
        m /= static_cast<double>(n);
        for (double x : v)
            m2 += (x - m) * (x - m);
        const double var = m2 / static_cast<double>(n - 1);
        r.checks.push_back(z_check("gaussian_variance", var, 2.0, 2.0 * std::sqrt(2.0 / static_cast<double>(n - 1)), 3.0));
    }
    for (const double b : {1.5, 2.0, 3.0}) {
        const auto v = stable_samples(derive_B_params(b), n, o.seed, 10 + static_cast<std::uint64_t>(b * 10));
        for (const double s : {0.5, 1.0, 2.0}) {
            const auto l = stats::empirical_laplace(v, s);
            std::ostringstream name;
            name << "laplace_b" << b << "_s" << s;
            r.checks.push_back(z_check(name.str(), l.value, std::exp(-std::pow(s, 1.0 / b)), l.std_err, 3.0));
        }
    }
    const std::array<StableParams, 4> triples{{{1.5, 0.5, 1.0}, {0.8, 1.0, 0.5}, {1.0, 0.0, 1.0}, {0.5, 1.0, 1.0}}};
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const auto v = stable_samples(triples[t], n, o.seed, 100 + t);
        double worst = 0.0;
        for (const double w : {-2.0, -0.5, 0.5, 1.0, 3.0}) {
            const auto e = stats::empirical_cf(v, w);
            const auto ref = char_function(triples[t], w);
            worst = std::max({worst, std::abs(e.value.real() - ref.real()) / e.se_re,
                              std::abs(e.value.imag() - ref.imag()) / e.se_im});
        }
        r.checks.push_back(upper_check("cf_consistency" + fmt_params(triples[t]), worst, 4.0, "max z-score over 5 frequencies"));
    }
    {
        RandomStream rng(o.seed, 200);
        const StableParams p{0.5, 1.0, 1.0};
        const std::uint64_t m = scaled(1e6, o);
        std::uint64_t bad = 0;
        for (std::uint64_t i = 0; i < m; ++i)
            bad += sample_stable(p, rng) > 0.0 ? 0 : 1;
        r.checks.push_back(upper_check("positivity", static_cast<double>(bad), 0.0, std::to_string(m) + " draws"));
    }
    {
        const StableParams p{1.5, 0.5, 1.0};
        const int terms = 4;
        RandomStream rng(o.seed, 300);
        std::vector<double> sums(n);
        for (auto& x : sums) {
            double acc = 0.0;
            for (int j = 0; j < terms; ++j)
                acc += sample_stable(p, rng);
            x = acc * std::pow(terms, -1.0 / p.alpha);
        }
        const double ks = stats::ks_two_sample(sums, stable_samples(p, n, o.seed, 301));
        r.checks.push_back(upper_check("stability_under_addition", ks, stats::ks_critical_two_sample(n, n)));
    }
    return r;
}

Report field_suite(const SuiteOptions& o)
{
    Report r{"field", o.seed, {}};
    const McConfig cfg{o.seed, o.workers};
    {
        NetworkScenario s = scenario(2.0, 1.0 / std::numbers::pi, 0.0);
        RandomStream rng(o.seed, 1);
        const std::uint64_t n = scaled(1e5, o);
        std::uint64_t zeros = 0;
        MeanAccumulator count;
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto f = sample_field(s, 1.0, rng);
            zeros += f.empty() ? 1 : 0;
            count.add(static_cast<double>(f.size()));
        }
        const double p0 = static_cast<double>(zeros) / static_cast<double>(n);
        const double e = std::exp(-1.0);
        r.checks.push_back(z_check("poisson_empty", p0, e, std::sqrt(e * (1.0 - e) / static_cast<double>(n)), 3.0));
        r.checks.push_back(z_check("poisson_mean", count.mean(), 1.0, count.std_err(), 3.0));
    }
    for (const double b : {2.0, 1.5}) {
        const NetworkScenario s = scenario(b, 0.1, 10.0);
        const std::uint64_t n = scaled(1e5, o);
        const double tol = b == 2.0 ? 1e-3 : 3e-2;
        const auto tail = b == 2.0 ? TailMode::drop : TailMode::add_mean;
        const std::array<double, 5> probs{0.1, 0.25, 0.5, 0.75, 0.9};
        const auto emp = stats::quantiles(empirical_A(s, n, tol, cfg, tail), probs);
        const auto ref = stats::quantiles(stable_samples(derive_A_params(s), 20 * n, o.seed, 7), probs);
        double worst = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i)
            worst = std::max(worst, std::abs(emp[i] / ref[i] - 1.0));
        std::ostringstream name;
        name << "A_quantiles_b" << b;
        r.checks.push_back(upper_check(name.str(), worst, 0.05, "max relative quantile deviation (10%-90%)"));
    }
    {
        const NetworkScenario s = scenario(2.0, 0.1, 10.0);
        const double tol = 1e-2;
        const double r1 = truncation_radius(s, tol);
        const std::uint64_t n = scaled(2e4, o);
        std::vector<double> a1(n), a2(n);
        RandomStream rng(o.seed, 2);
        FieldRealization f;
        for (std::uint64_t i = 0; i < n; ++i) {
            sample_field_into(f, s, 2.0 * r1, rng);
            a2[i] = compute_A(f, s.b, s.sigma);
            const auto inner = std::find_if(f.distances.begin(), f.distances.end(), [&](double d) { return d > r1; });
            f.distances.erase(inner, f.distances.end());
            f.shadowing.resize(f.distances.size());
            a1[i] = compute_A(f, s.b, s.sigma);
        }
        const std::array<double, 1> half{0.5};
        const double m1 = stats::quantiles(a1, half)[0];
        const double m2 = stats::quantiles(a2, half)[0];
        r.checks.push_back(upper_check("truncation_median", std::abs(m2 / m1 - 1.0), 2.0 * tol));
    }
    {
        const double c = 2.0;
        NetworkScenario s = scenario(2.0, 0.1, 10.0);
        const std::uint64_t n = scaled(1e4, o);
        auto base = empirical_A(s, n, 1e-2, {o.seed + 11, o.workers});
        s.lambda *= c;
        auto dense = empirical_A(s, n, 1e-2, {o.seed + 12, o.workers});
        for (auto& x : dense)
            x *= std::pow(c, -s.b);
        const double ks = stats::ks_two_sample(base, dense);
        r.checks.push_back(upper_check("density_scaling_ks", ks, stats::ks_critical_two_sample(n, n)));
    }
    return r;
}

Report decomposition_suite(const SuiteOptions& o)
{
    Report r{"decomposition", o.seed, {}};
    const NetworkScenario s = scenario(2.0, 0.1, 10.0);
    const LinkModel link = default_link();
    const double ex2b = compute_EX2b(link.interferer, s.b, link.interferer_fading, s.E);
    const auto yp = derive_Y_params(s, ex2b);
    const double vg = derive_VG(s, ex2b);
    const auto bp = derive_B_params(s.b);
    const std::uint64_t n = scaled(1e5, o);

    std::vector<double> sub(n), direct(n);
    {
        RandomStream rng(o.seed, 1);
        for (auto& x : sub)
            x = std::sqrt(sample_stable(bp, rng) * vg) * rng.normal();
    }
    {
        RandomStream rng(o.seed, 2);
        const double r_max = truncation_radius(s, 1e-3);
        FieldRealization f;
        for (auto& x : direct) {
            sample_field_into(f, s, r_max, rng);
            x = sample_Y(f, link.interferer, link.interferer_fading, s.b, s.sigma, std::sqrt(s.E), rng).real();
        }
    }
    for (const auto& [label, v] : {std::pair{"subgaussian", &sub}, std::pair{"direct_Y", &direct}}) {
        double worst = 0.0;
        for (const double w : {0.5, 1.0, 2.0}) {
            const auto e = stats::empirical_cf(*v, w);
            worst = std::max(worst, std::abs(e.value.real() - std::exp(-yp.gamma * std::pow(w, yp.alpha))) / e.se_re);
        }
        r.checks.push_back(upper_check(std::string("cf_") + label, worst, 4.0, "max z-score at w in {0.5, 1, 2}"));
    }
    return r;
}

Report oracle_suite(const SuiteOptions& o)
{
    const bool fast = o.mode == OracleMode::fast;
    Report r{fast ? "oracle-fast" : "oracle-slow", o.seed, {}};
    const LinkModel link = default_link();
    const McConfig cfg{o.seed, o.workers};
    if (fast) {
        NetworkScenario s = scenario(3.0, 1e-2, 10.0);
        s.G0 = 0.0;
        s.set_snr_db(20.0);
        s.set_inr_db(20.0);
        const std::uint64_t n = scaled(1e6, o);
        OracleOptions opts;
        opts.mode = OracleMode::fast;
        opts.n_symbols = n;
        const auto sim = ber_oracle(s, link, opts, cfg);
        const auto ana = pe_average(s, link, n, {o.seed + 1, o.workers});
        const double se = std::hypot(sim.std_err, ana.std_err);
        r.checks.push_back(z_check("fast_mode_agreement", sim.value, ana.value, se, 3.0));
        return r;
    }
    NetworkScenario s = scenario(2.0, 1e-2, 10.0);
    s.G0 = 0.0;
    s.set_snr_db(30.0);
    s.set_inr_db(20.0);
    const double r_max = truncation_radius(s, 0.1);
    const std::uint64_t n = scaled(1e6, o);
    RandomStream field_rng(o.seed, 0xf1e1d);
    for (int j = 0; j < 20; ++j) {
        const auto f = sample_field(s, r_max, field_rng);
        const auto sim = ber_oracle(s, link, f, n, {o.seed + 1 + static_cast<std::uint64_t>(j), o.workers});
        const double ana = pe_given_field(s, link, f);
        const double dev = std::abs(sim.value - ana);
        const double bound = std::max(0.05 * ana, 3.0 * sim.std_err);
        std::ostringstream d;
        d.precision(6);
        d << "ser " << sim.value << " (se " << sim.std_err << "), pe " << ana << ", nodes " << f.size()
          << ", rel dev " << dev / ana;
        r.checks.push_back({"slow_field_" + std::to_string(j), dev <= bound, dev, bound, d.str()});
    }
    return r;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"stable", "field", "decomposition", "oracle"};
    return names;
}

Report run_suite(const std::string& name, const SuiteOptions& opts)
{
    if (name == "stable")
        return stable_suite(opts);
    if (name == "field")
        return field_suite(opts);
    if (name == "decomposition")
        return decomposition_suite(opts);
    if (name == "oracle")
        return oracle_suite(opts);
    throw ConfigurationError("unknown validation suite '" + name + "'");
}

} // namespace pfield::validation
