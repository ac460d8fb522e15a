#include "config.hpp"

#include "pfield/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace pfield;
using namespace pfield::cli;
using nlohmann::json;

TEST_CASE("defaults and round trip")
{
    const auto c = parse_config(json::object());
    CHECK(c.metric == "outage");
    CHECK(c.sweep.axis == "snr_db");
    const auto again = parse_config(to_json(c));
    CHECK(to_json(again) == to_json(c));

    const auto d = parse_config(json::parse(R"({"inr_db": "-inf", "snr_db": 30, "b": 3, "G0": 0.5})"));
    CHECK(std::isinf(*d.inr_db));
    CHECK(to_json(parse_config(to_json(d))) == to_json(d));
    const auto s = make_scenario(d);
    CHECK(s.E == 0.0);
    CHECK(s.E0 == doctest::Approx(1000.0));
    CHECK(s.G0.value() == 0.5);
    CHECK(s.sigma == doctest::Approx(sigma_from_db(10.0)));
}

TEST_CASE("rejected configurations")
{
    CHECK_THROWS_AS(parse_config(json::parse(R"({"colour": "red"})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"sweep": {"axis": "r0", "step": 1}})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"E": 1, "inr_db": 10})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"E0": 1, "snr_db": 10})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"metric": "capacity"})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"sweep": {"axis": "k"}})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"n_mc": -4})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"lambda": "dense"})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"p_star": 1.5})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"sweep": {"log": true, "start": 0, "stop": 1}})")),
                    ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"b": 1.0})")), DivergenceError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"N0": 0})")), DomainError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"probe": "fsk"})")), ConfigurationError);
    CHECK_THROWS_AS(parse_config(json::parse("[1, 2]")), ConfigurationError);
    CHECK_THROWS_AS(load_config_file("no/such/config.json"), ConfigurationError);
}

TEST_CASE("modulation specs")
{
    CHECK(make_modulation("16qam").size() == 16);
    CHECK(make_modulation(json::parse(R"({"points": [[1, 0], [0, 1], [-1, 0]]})")).size() == 3);
    CHECK_THROWS_AS(make_modulation(3), ConfigurationError);
    CHECK_THROWS_AS(make_modulation("file:/no/such/file.json"), ConfigurationError);
    const auto link = make_link(parse_config(json::parse(R"({"probe": "8psk", "interferer_fading": "none"})")));
    CHECK(link.probe.size() == 8);
    CHECK(link.interferer.size() == 2);
    CHECK(link.interferer_fading.name == "none");
}

TEST_CASE("sweeps")
{
    SweepSpec lin{"snr_db", 0.0, 40.0, 5, false, false};
    CHECK(sweep_values(lin) == std::vector<double>{0.0, 10.0, 20.0, 30.0, 40.0});
    SweepSpec geo{"lambda", 1e-3, 1e-1, 3, true, false};
    const auto g = sweep_values(geo);
    REQUIRE(g.size() == 3);
    CHECK(g[1] == doctest::Approx(1e-2));
    SweepSpec single{"r0", 2.0, 9.0, 1, false, false};
    CHECK(sweep_values(single) == std::vector<double>{2.0});

    NetworkScenario s;
    SweepSpec follow{"snr_db", 0, 1, 2, false, true};
    apply_axis(s, follow, 20.0);
    CHECK(s.snr_db() == doctest::Approx(20.0));
    CHECK(s.inr_db() == doctest::Approx(20.0));
    apply_axis(s, {"inr_db", 0, 1, 2, false, false}, 5.0);
    CHECK(s.inr_db() == doctest::Approx(5.0));
    apply_axis(s, {"r0", 0, 1, 2, false, false}, 3.0);
    CHECK(s.r0 == 3.0);
    apply_axis(s, {"lambda", 0, 1, 2, false, false}, 0.2);
    CHECK(s.lambda == 0.2);
    CHECK_THROWS_AS(apply_axis(s, {"k", 0, 1, 2, false, false}, 1.0), ConfigurationError);
}

TEST_CASE("FNV-1a hash")
{
    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("number parsing")
{
    CHECK(parse_number(json(2.5), "x") == 2.5);
    CHECK(parse_number(json("inf"), "x") == std::numeric_limits<double>::infinity());
    CHECK(parse_number(json("-inf"), "x") == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(parse_number(json("1e3"), "x"), ConfigurationError);
    CHECK_THROWS_AS(parse_number(json(nullptr), "x"), ConfigurationError);
}
