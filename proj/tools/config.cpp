#include "config.hpp"

#include "pfield/errors.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace pfield::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kKeys{"lambda", "b",      "sigma_db", "k",     "N0",         "T",
                                  "E",      "E0",     "snr_db",   "inr_db", "r0",        "G0",
                                  "probe",  "interferer", "interferer_fading", "metric", "p_star",
                                  "n_mc",   "seed",   "workers",  "sweep"};
const std::set<std::string> kSweepKeys{"axis", "start", "stop", "points", "log", "inr_follows_snr"};

std::optional<double> optional_number(const json& j, const std::string& key)
{
    if (!j.contains(key) || j[key].is_null())
        return std::nullopt;
    return parse_number(j[key], key);
}

template <class T>
T integer(const json& v, const std::string& key)
{
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigurationError("config key '" + key + "' must be a non-negative integer");
    return static_cast<T>(v.get<unsigned long long>());
}

json number_or_null(const std::optional<double>& v)
{
    if (!v)
        return nullptr;
    if (std::isinf(*v))
        return *v < 0 ? "-inf" : "inf";
    return *v;
}

} // namespace

double parse_number(const json& v, const std::string& key)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
    }
    throw ConfigurationError("config key '" + key + "' must be a number");
}

ScenarioConfig parse_config(const json& j)
{
    if (!j.is_object())
        throw ConfigurationError("config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!kKeys.count(key))
            throw ConfigurationError("unknown config key '" + key + "'");

    ScenarioConfig c;
    auto num = [&](const char* key, double& out) {
        if (j.contains(key))
            out = parse_number(j[key], key);
    };
    num("lambda", c.lambda);
    num("b", c.b);
    num("sigma_db", c.sigma_db);
    num("k", c.k);
    num("N0", c.N0);
    num("T", c.T);
    num("r0", c.r0);
    num("p_star", c.p_star);
    c.E = optional_number(j, "E");
    c.E0 = optional_number(j, "E0");
    c.snr_db = optional_number(j, "snr_db");
    c.inr_db = optional_number(j, "inr_db");
    c.G0 = optional_number(j, "G0");
    if (j.contains("probe"))
        c.probe = j["probe"];
    if (j.contains("interferer"))
        c.interferer = j["interferer"];
    if (j.contains("interferer_fading")) {
        if (!j["interferer_fading"].is_string())
            throw ConfigurationError("config key 'interferer_fading' must be a string");
        c.interferer_fading = j["interferer_fading"].get<std::string>();
    }
    if (j.contains("metric")) {
        if (!j["metric"].is_string())
            throw ConfigurationError("config key 'metric' must be a string");
        c.metric = j["metric"].get<std::string>();
    }
    if (j.contains("n_mc"))
        c.n_mc = integer<std::uint64_t>(j["n_mc"], "n_mc");
    if (j.contains("seed"))
        c.seed = integer<std::uint64_t>(j["seed"], "seed");
    if (j.contains("workers"))
        c.workers = integer<unsigned>(j["workers"], "workers");
    if (j.contains("sweep")) {
        const auto& s = j["sweep"];
        if (!s.is_object())
            throw ConfigurationError("config key 'sweep' must be an object");
        for (const auto& [key, _] : s.items())
            if (!kSweepKeys.count(key))
                throw ConfigurationError("unknown sweep key '" + key + "'");
        if (s.contains("axis")) {
            if (!s["axis"].is_string())
                throw ConfigurationError("sweep axis must be a string");
            c.sweep.axis = s["axis"].get<std::string>();
        }
        if (s.contains("start"))
            c.sweep.start = parse_number(s["start"], "sweep.start");
        if (s.contains("stop"))
            c.sweep.stop = parse_number(s["stop"], "sweep.stop");
        if (s.contains("points"))
            c.sweep.points = integer<int>(s["points"], "sweep.points");
        for (const char* flag : {"log", "inr_follows_snr"})
            if (s.contains(flag) && !s[flag].is_boolean())
                throw ConfigurationError(std::string("sweep.") + flag + " must be a boolean");
        c.sweep.log = s.value("log", false);
        c.sweep.inr_follows_snr = s.value("inr_follows_snr", false);
    }
    validate(c);
    return c;
}

ScenarioConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigurationError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(json::parse(ss.str()));
    } catch (const json::parse_error& e) {
        throw ConfigurationError(std::string("config file is not valid JSON: ") + e.what());
    }
}

void validate(const ScenarioConfig& c)
{
    if (c.E && c.inr_db)
        throw ConfigurationError("give either E or inr_db, not both");
    if (c.E0 && c.snr_db)
        throw ConfigurationError("give either E0 or snr_db, not both");
    if (c.snr_db && !std::isfinite(*c.snr_db))
        throw ConfigurationError("snr_db must be finite");
    if (c.metric != "outage" && c.metric != "average")
        throw ConfigurationError("metric must be 'outage' or 'average'");
    if (!(c.p_star > 0.0 && c.p_star <= 1.0))
        throw ConfigurationError("p_star must lie in (0, 1]");
    if (c.n_mc < 1)
        throw ConfigurationError("n_mc must be >= 1");
    const auto& a = c.sweep.axis;
    if (a != "snr_db" && a != "inr_db" && a != "r0" && a != "lambda")
        throw ConfigurationError("sweep axis must be one of snr_db, inr_db, r0, lambda");
    if (c.sweep.points < 1)
        throw ConfigurationError("sweep points must be >= 1");
    if (c.sweep.log && !(c.sweep.start > 0.0 && c.sweep.stop > 0.0))
        throw ConfigurationError("log sweep needs positive start and stop");
    make_scenario(c).validate();
    make_link(c);
}

json to_json(const ScenarioConfig& c)
{
    json j;
    j["lambda"] = c.lambda;
    j["b"] = c.b;
    j["sigma_db"] = c.sigma_db;
    j["k"] = c.k;
    j["N0"] = c.N0;
    j["T"] = c.T;
    j["E"] = number_or_null(c.E);
    j["E0"] = number_or_null(c.E0);
    j["snr_db"] = number_or_null(c.snr_db);
    j["inr_db"] = number_or_null(c.inr_db);
    j["r0"] = c.r0;
    j["G0"] = number_or_null(c.G0);
    j["probe"] = c.probe;
    j["interferer"] = c.interferer;
    j["interferer_fading"] = c.interferer_fading;
    j["metric"] = c.metric;
    j["p_star"] = c.p_star;
    j["n_mc"] = c.n_mc;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    j["sweep"] = {{"axis", c.sweep.axis},   {"start", c.sweep.start}, {"stop", c.sweep.stop},
                  {"points", c.sweep.points}, {"log", c.sweep.log},   {"inr_follows_snr", c.sweep.inr_follows_snr}};
    return j;
}

NetworkScenario make_scenario(const ScenarioConfig& c)
{
    NetworkScenario s;
    s.lambda = c.lambda;
    s.b = c.b;
    s.sigma = sigma_from_db(c.sigma_db);
    s.k = c.k;
    s.N0 = c.N0;
    s.T = c.T;
    s.r0 = c.r0;
    s.G0 = c.G0;
    s.E = c.E.value_or(1.0);
    s.E0 = c.E0.value_or(1.0);
    if (c.snr_db)
        s.set_snr_db(*c.snr_db);
    if (c.inr_db)
        s.set_inr_db(*c.inr_db);
    return s;
}

Constellation make_modulation(const json& spec)
{
    if (spec.is_string()) {
        const auto s = spec.get<std::string>();
        if (s.rfind("file:", 0) == 0)
            return load_constellation_file(s.substr(5));
        return make_named(s);
    }
    if (spec.is_object())
        return parse_constellation_json(spec.dump());
    throw ConfigurationError("modulation must be a name, \"file:<path>\" or a {\"points\": ...} object");
}

LinkModel make_link(const ScenarioConfig& c)
{
    return {make_modulation(c.probe), make_modulation(c.interferer), make_fading(c.interferer_fading)};
}

std::vector<double> sweep_values(const SweepSpec& s)
{
    std::vector<double> v;
    if (s.points == 1)
        return {s.start};
    for (int i = 0; i < s.points; ++i) {
        const double t = static_cast<double>(i) / (s.points - 1);
        v.push_back(s.log ? s.start * std::pow(s.stop / s.start, t) : s.start + t * (s.stop - s.start));
    }
    return v;
}

void apply_axis(NetworkScenario& s, const SweepSpec& sweep, double x)
{
    if (sweep.axis == "snr_db") {
        s.set_snr_db(x);
        if (sweep.inr_follows_snr)
            s.set_inr_db(x);
    } else if (sweep.axis == "inr_db") {
        s.set_inr_db(x);
    } else if (sweep.axis == "r0") {
        s.r0 = x;
    } else if (sweep.axis == "lambda") {
        s.lambda = x;
    } else {
        throw ConfigurationError("unknown sweep axis '" + sweep.axis + "'");
    }
}

std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace pfield::cli
