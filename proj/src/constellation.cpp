#include "pfield/constellation.hpp"

#include "pfield/errors.hpp"
#include "pfield/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace pfield {

using std::numbers::pi;
using cplx = std::complex<double>;

void Constellation::validate() const
{
    if (points.size() < 2)
        throw ConfigurationError("constellation needs at least 2 points");
    if (probs.size() != points.size())
        throw ConfigurationError("constellation probabilities do not match the number of points");
    double total = 0.0;
    double energy = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!(probs[k] >= 0.0))
            throw ConfigurationError("constellation probabilities must be >= 0");
        total += probs[k];
        energy += probs[k] * std::norm(points[k]);
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ConfigurationError("constellation probabilities must sum to 1");
    if (std::abs(energy - 1.0) > 1e-12)
        throw ConfigurationError("constellation must have unit average energy");
    bool distinct = false;
    for (std::size_t k = 1; k < points.size() && !distinct; ++k)
        distinct = points[k] != points[0];
    if (!distinct)
        throw ConfigurationError("constellation needs at least 2 distinct points");
}

Constellation Constellation::from_points(std::vector<cplx> pts, std::vector<double> probs, std::string name)
{
    if (pts.size() < 2)
        throw ConfigurationError("constellation needs at least 2 points");
    if (probs.empty())
        probs.assign(pts.size(), 1.0 / static_cast<double>(pts.size()));
    if (probs.size() != pts.size())
        throw ConfigurationError("constellation probabilities do not match the number of points");
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (!(total > 0.0))
        throw ConfigurationError("constellation probabilities must have a positive sum");
    for (auto& p : probs)
        p /= total;
    double energy = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k)
        energy += probs[k] * std::norm(pts[k]);
    if (!(energy > 0.0))
        throw ConfigurationError("constellation has zero energy");
    const double scale = 1.0 / std::sqrt(energy);
    for (auto& s : pts)
        s *= scale;
    Constellation c{std::move(pts), std::move(probs), std::move(name)};
    c.validate();
    return c;
}

namespace {

bool is_power_of_two(int m)
{
    return m >= 2 && std::has_single_bit(static_cast<unsigned>(m));
}

} // namespace

Constellation make_mpsk(int M)
{
    if (!is_power_of_two(M))
        throw ConfigurationError("M-PSK needs M >= 2 and a power of two, got " + std::to_string(M));
    const double offset = M == 2 ? 0.0 : pi / M;
    std::vector<cplx> pts;
    for (int k = 0; k < M; ++k)
        pts.push_back(std::polar(1.0, offset + 2.0 * pi * k / M));
    if (M == 2)
        pts = {{1.0, 0.0}, {-1.0, 0.0}};
    return Constellation{pts, std::vector<double>(M, 1.0 / M), M == 2 ? "bpsk" : M == 4 ? "qpsk" : std::to_string(M) + "psk"};
}

Constellation make_mqam(int M)
{
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(M))));
    if (!is_power_of_two(M) || side * side != M || M < 4)
        throw ConfigurationError("square M-QAM needs M = 2^n with n even, got " + std::to_string(M));
    const double scale = 1.0 / std::sqrt(2.0 * (M - 1) / 3.0);
    std::vector<cplx> pts;
    for (int i = 0; i < side; ++i)
        for (int q = 0; q < side; ++q)
            pts.emplace_back((2 * i - side + 1) * scale, (2 * q - side + 1) * scale);
    return Constellation{pts, std::vector<double>(M, 1.0 / M), std::to_string(M) + "qam"};
}

Constellation make_named(std::string_view spec)
{
    std::string s(spec);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == "bpsk")
        return make_mpsk(2);
    if (s == "qpsk")
        return make_mpsk(4);
    auto parse_int = [&](std::string_view digits) {
        int m = 0;
        try {
            std::size_t used = 0;
            m = std::stoi(std::string(digits), &used);
            if (used != digits.size())
                throw ConfigurationError("bad modulation spec '" + s + "'");
        } catch (const std::logic_error&) {
            throw ConfigurationError("bad modulation spec '" + s + "'");
        }
        return m;
    };
    if (s.starts_with("psk:"))
        return make_mpsk(parse_int(std::string_view(s).substr(4)));
    if (s.starts_with("qam:"))
        return make_mqam(parse_int(std::string_view(s).substr(4)));
    if (s.size() > 3 && s.ends_with("psk"))
        return make_mpsk(parse_int(std::string_view(s).substr(0, s.size() - 3)));
    if (s.size() > 3 && s.ends_with("qam"))
        return make_mqam(parse_int(std::string_view(s).substr(0, s.size() - 3)));
    throw ConfigurationError("unknown modulation '" + s + "'");
}

Constellation parse_constellation_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigurationError(std::string("constellation JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw ConfigurationError("constellation JSON needs a \"points\" array");
    for (const auto& [key, _] : j.items())
        if (key != "points" && key != "probs" && key != "name")
            throw ConfigurationError("constellation JSON: unknown key '" + key + "'");
    std::vector<cplx> pts;
    for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ConfigurationError("constellation JSON: each point must be [re, im]");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    std::vector<double> probs;
    if (j.contains("probs")) {
        if (!j["probs"].is_array())
            throw ConfigurationError("constellation JSON: \"probs\" must be an array");
        for (const auto& p : j["probs"]) {
            if (!p.is_number())
                throw ConfigurationError("constellation JSON: probabilities must be numbers");
            probs.push_back(p.get<double>());
        }
    }
    return Constellation::from_points(std::move(pts), std::move(probs), j.value("name", std::string("custom")));
}

Constellation load_constellation_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigurationError("cannot open constellation file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_constellation_json(ss.str());
}

std::size_t nearest_point(const Constellation& c, cplx z)
{
    std::size_t best = 0;
    double best_d = std::norm(z - c.points[0]);
    for (std::size_t k = 1; k < c.points.size(); ++k) {
        const double d = std::norm(z - c.points[k]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

FadingModel rayleigh_fading()
{
    return {"rayleigh", [](double p) { return std::tgamma(1.0 + p / 2.0); },
            [](RandomStream& rng) { return std::sqrt(rng.exponential()); }};
}

FadingModel no_fading()
{
    return {"none", [](double) { return 1.0; }, [](RandomStream&) { return 1.0; }};
}

FadingModel make_fading(std::string_view name)
{
    if (name == "rayleigh")
        return rayleigh_fading();
    if (name == "none")
        return no_fading();
    throw ConfigurationError("unknown fading model '" + std::string(name) + "'");
}

double compute_VX(const Constellation& c, double E)
{
    c.validate();
    // Cross term E{a a' cos(theta - theta')} over independent successive symbols is |E{s}|^2.
    cplx mean{0.0, 0.0};
    for (std::size_t k = 0; k < c.size(); ++k)
        mean += c.probs[k] * c.points[k];
    return E / 3.0 + E / 6.0 * std::norm(mean);
}

namespace {

/// E|cos(phi)|^p for phi uniform on [0, 2 pi).
double abs_cos_moment(double p)
{
    return std::tgamma((p + 1.0) / 2.0) / (std::sqrt(pi) * std::tgamma(p / 2.0 + 1.0));
}

/// int_0^1 |D s + (1 - D) s2|^p dD
double pair_moment(cplx s, cplx s2, double p)
{
    const cplx d = s - s2;
    const double dd = std::norm(d);
    if (dd == 0.0)
        return std::pow(std::abs(s), p);
    // |s2 + t d|^2 = |d|^2 (t - t0)^2 + h^2
    const double t0 = -std::real(s2 * std::conj(d)) / dd;
    const double h = std::abs(std::imag(s2 * std::conj(d))) / std::sqrt(dd);
    const double scale = std::max(std::abs(s), std::abs(s2));
    if (h <= 1e-14 * scale) {
        const auto part = [&](double x) { return std::copysign(std::pow(std::abs(x), p + 1.0), x); };
        return std::pow(dd, p / 2.0) * (part(1.0 - t0) + part(t0)) / (p + 1.0);
    }
    auto f = [&](double t) { return std::pow(dd * (t - t0) * (t - t0) + h * h, p / 2.0); };
    // Near-collinear pairs have a rounded cusp of width h / |d| at t0.
    std::vector<double> breaks{t0};
    for (double w = h / std::sqrt(dd); w < 1.0; w *= 10.0) {
        breaks.push_back(t0 - w);
        breaks.push_back(t0 + w);
    }
    return quad::integrate_split(f, 0.0, 1.0, breaks, {1e-9, 1e-10, 18}).value;
}

} // namespace

double compute_chi(const Constellation& c, double b, const ChiOptions& opts)
{
    c.validate();
    if (!(b > 1.0))
        throw DivergenceError("chi(b) requires b > 1");
    const double p = 2.0 / b;
    double acc = 0.0;
    if (c.size() <= opts.max_exact_points) {
        for (std::size_t k = 0; k < c.size(); ++k)
            for (std::size_t l = 0; l < c.size(); ++l)
                if (c.probs[k] > 0.0 && c.probs[l] > 0.0)
                    acc += c.probs[k] * c.probs[l] * pair_moment(c.points[k], c.points[l], p);
    } else {
        std::discrete_distribution<std::size_t> pick(c.probs.begin(), c.probs.end());
        RandomStream rng(opts.mc_seed, 0);
        for (std::uint64_t i = 0; i < opts.mc_samples; ++i) {
            const cplx s = c.points[pick(rng.engine())];
            const cplx s2 = c.points[pick(rng.engine())];
            const double t = rng.uniform();
            acc += std::pow(std::abs(t * s + (1.0 - t) * s2), p);
        }
        acc /= static_cast<double>(opts.mc_samples);
    }
    return acc * abs_cos_moment(p);
}

double compute_EX2b(const Constellation& c, double b, const FadingModel& fading, double E, const ChiOptions& opts)
{
    if (!(E >= 0.0))
        throw DomainError("E must be >= 0");
    return std::pow(E, 1.0 / b) * fading.moment(2.0 / b) * compute_chi(c, b, opts);
}

std::vector<Table1Entry> table1()
{
    struct Ref {
        double b;
        double bpsk;
        double qpsk;
    };
    static constexpr std::array<Ref, 4> refs{{{1.5, 0.374, 0.385}, {2.0, 0.423, 0.441}, {3.0, 0.509, 0.531},
                                              {4.0, 0.576, 0.599}}};
    const auto bpsk = make_mpsk(2);
    const auto qpsk = make_mpsk(4);
    const auto fading = rayleigh_fading();
    std::vector<Table1Entry> out;
    for (const auto& r : refs) {
        out.push_back({r.b, "BPSK", compute_EX2b(bpsk, r.b, fading, 1.0), r.bpsk});
        out.push_back({r.b, "QPSK", compute_EX2b(qpsk, r.b, fading, 1.0), r.qpsk});
    }
    return out;
}

} // namespace pfield
