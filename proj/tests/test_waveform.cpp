#include "oracles.hpp"

#include "pfield/errors.hpp"
#include "pfield/stats.hpp"
#include "pfield/waveform.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace pfield;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

InterfererDraw draw(cd a, cd a2, double d, double amp, double phase)
{
    InterfererDraw x;
    x.symbol = a;
    x.next_symbol = a2;
    x.delay_frac = d;
    x.fade_amp = amp;
    x.fade_phase = phase;
    return x;
}

} // namespace

TEST_CASE("InterfererDraw validation")
{
    CHECK_NOTHROW(draw({1, 0}, {-1, 0}, 0.0, 1.0, 0.0).validate());
    CHECK_NOTHROW(draw({1, 0}, {-1, 0}, 1.0, 0.0, 0.0).validate());
    CHECK_THROWS_AS(draw({1, 0}, {-1, 0}, 1.2, 1.0, 0.0).validate(), DomainError);
    CHECK_THROWS_AS(draw({1, 0}, {-1, 0}, -0.1, 1.0, 0.0).validate(), DomainError);
    CHECK_THROWS_AS(draw({1, 0}, {-1, 0}, 0.5, -1.0, 0.0).validate(), DomainError);

    RandomStream rng(1, 0);
    const auto c = make_mpsk(8);
    for (int i = 0; i < 1000; ++i) {
        const auto d = draw_interferer(c, rayleigh_fading(), rng);
        CHECK_NOTHROW(d.validate());
        CHECK(d.fade_phase >= 0.0);
        CHECK(d.fade_phase < 2.0 * pi);
    }
}

TEST_CASE("interference_sample_X examples")
{
    const cd a = std::polar(0.8, 0.3);
    const cd a2 = std::polar(1.1, -2.0);
    const auto x0 = interference_sample_X(draw(a, a2, 0.0, 0.7, 1.3), 2.0);
    CHECK(std::abs(x0 - 2.0 * 0.7 * std::polar(1.0, 1.3) * a2) < 1e-15);
    const auto x1 = interference_sample_X(draw(a, a2, 1.0, 1.0, 0.0), 2.0);
    CHECK(std::abs(x1 - 2.0 * a) < 1e-15);
    for (double d : {0.0, 0.25, 0.6, 1.0}) {
        const auto x = interference_sample_X(draw(a, a, d, 0.7, 1.3), 1.0);
        CHECK(std::abs(x - 0.7 * std::polar(1.0, 1.3) * a) < 1e-15);
    }
}

TEST_CASE("aggregate_Y examples")
{
    CHECK(aggregate_Y(FieldRealization{}, {}, 2.0, 1.0, 1.0) == cd{});

    FieldRealization one;
    one.distances = {1.0};
    one.shadowing = {0.0};
    const std::vector<InterfererDraw> d{draw({1, 0}, {0, 1}, 0.3, 1.2, 0.4)};
    CHECK(std::abs(aggregate_Y(one, d, 2.0, 1.0, 1.5) - interference_sample_X(d[0], 1.5)) < 1e-15);

    FieldRealization two;
    two.distances = {1.0, 2.0};
    two.shadowing = {0.5, -0.5};
    const std::vector<InterfererDraw> d2{d[0], draw({-1, 0}, {-1, 0}, 0.9, 0.5, 2.0)};
    const cd expected = std::exp(0.5) * interference_sample_X(d2[0], 1.0) +
                        std::exp(-0.5) / 4.0 * interference_sample_X(d2[1], 1.0);
    CHECK(std::abs(aggregate_Y(two, d2, 2.0, 1.0, 1.0) - expected) < 1e-14);
    CHECK_THROWS_AS(aggregate_Y(two, d, 2.0, 1.0, 1.0), DomainError);
}

TEST_CASE("direct Y follows the CS stable law and is circularly symmetric")
{
    NetworkScenario s;
    s.b = 2.0;
    s.lambda = 0.1;
    s.sigma = sigma_from_db(10.0);
    const auto link = default_link();
    const auto yp = derive_Y_params(s, compute_EX2b(link.interferer, s.b, link.interferer_fading, s.E));
    const double r_max = truncation_radius(s, 1e-2);
    const int n = 100000;
    std::vector<double> re(n), ang(n);
    RandomStream rng(2, 0);
    FieldRealization f;
    for (int i = 0; i < n; ++i) {
        sample_field_into(f, s, r_max, rng);
        const auto y = sample_Y(f, link.interferer, link.interferer_fading, s.b, s.sigma, std::sqrt(s.E), rng);
        re[i] = y.real();
        ang[i] = std::arg(y);
    }
    for (double w : {0.5, 1.0, 2.0}) {
        const auto e = stats::empirical_cf(re, w);
        CAPTURE(w);
        CHECK(std::abs(e.value.real() - std::exp(-yp.gamma * std::pow(w, yp.alpha))) < 4.0 * e.se_re);
    }
    CHECK(stats::rayleigh_test_pvalue(ang) > 0.01);
}

TEST_CASE("passband projection")
{
    // Delays with D fcT an integer cancel the boundary terms, so take the worst case over generic ones.
    double dev100 = 0.0;
    double dev1000 = 0.0;
    for (double delay : {0.1234, 0.2718, 0.3711, 0.4567, 0.6283, 0.8189}) {
        const auto d = draw(std::polar(1.0, 0.7), std::polar(1.0, -2.2), delay, 1.0, 0.9);
        dev100 = std::max(dev100, passband_projection_check(d, 100.0, 6400));
        dev1000 = std::max(dev1000, passband_projection_check(d, 1000.0, 64000));
    }
    CHECK(dev100 < 0.02);
    CHECK(dev1000 > 0.0);
    const double ratio = dev100 / dev1000;
    CHECK(ratio > 5.0);
    CHECK(ratio < 20.0);

    // Both double-frequency terms are bounded by k alpha (a + a') / (2 pi fcT).
    CHECK(dev100 <= 2.0 / (2.0 * pi * 100.0) + 1e-12);

    const auto still = draw(std::polar(1.0, 0.4), std::polar(1.0, 0.4), 0.5, 0.8, 1.1);
    CHECK(passband_projection_check(still, 200.0, 12800, 2.0) < 1e-10);

    CHECK_THROWS_AS(passband_projection_check(still, 100.0, 399), UnderSamplingError);
    CHECK_THROWS_AS(passband_projection_check(still, 5.0, 1000), DomainError);
}

TEST_CASE("oracle without interference")
{
    const auto link = default_link();
    NetworkScenario s;
    s.lambda = 0.0;
    s.E0 = 1.0;
    s.N0 = 1.0;
    s.G0 = 0.0;
    OracleOptions o;
    o.n_symbols = 1'000'000;
    const auto e = ber_oracle(s, link, o, {3, 1});
    CHECK(std::abs(e.value - oracle::rayleigh_bpsk(1.0)) < 3.0 * e.std_err);
    CHECK(std::abs(oracle::rayleigh_bpsk(1.0) - 0.14645) < 1e-5);

    s.N0 = 1e-6;
    const auto quiet = ber_oracle(s, link, o, {4, 1});
    CHECK(quiet.value < 10.0 / static_cast<double>(o.n_symbols));

    for (const auto& c : {make_mpsk(8), make_mqam(16)}) {
        LinkModel l{c, c, rayleigh_fading()};
        s.N0 = 1e-9;
        OracleOptions few;
        few.n_symbols = 20000;
        CHECK(ber_oracle(s, l, few, {5, 1}).value == 0.0);
    }
}

TEST_CASE("fast oracle agrees with pe_average")
{
    const auto link = default_link();
    NetworkScenario s;
    s.b = 3.0;
    s.lambda = 1e-2;
    s.sigma = sigma_from_db(10.0);
    s.G0 = 0.0;
    s.set_snr_db(20.0);
    s.set_inr_db(20.0);
    OracleOptions o;
    o.n_symbols = 200000;
    const auto sim = ber_oracle(s, link, o, {6, 1});
    const auto ana = pe_average(s, link, 200000, {7, 1});
    CHECK(std::abs(sim.value - ana.value) < 3.0 * std::hypot(sim.std_err, ana.std_err));
}

TEST_CASE("slow oracle on a frozen field")
{
    const auto link = default_link();
    NetworkScenario s;
    s.b = 2.0;
    s.lambda = 1e-2;
    s.sigma = sigma_from_db(10.0);
    s.G0 = 0.0;
    s.set_snr_db(30.0);
    s.set_inr_db(20.0);
    RandomStream rng(8, 0);
    const auto f = sample_field(s, truncation_radius(s, 0.1), rng);
    const auto sim = ber_oracle(s, link, f, 200000, {9, 1});
    const double ana = pe_given_field(s, link, f);
    CHECK(std::abs(sim.value - ana) < std::max(0.05 * ana, 3.0 * sim.std_err));

    OracleOptions o;
    o.mode = OracleMode::slow;
    o.n_symbols = 20000;
    o.trunc_rel_tol = 0.1;
    CHECK(ber_oracle(s, link, o, {10, 1}) == ber_oracle(s, link, o, {10, 1}));
    CHECK(ber_oracle(s, link, o, {10, 2}).n == 20000);
    CHECK_THROWS_AS(ber_oracle(s, link, f, 0), DomainError);
}
