#include "lowdeg/cli/run.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace lowdeg;
using namespace lowdeg::cli;

namespace {

struct Captured {
    int code;
    std::string out, err;
};

Captured invoke(const ExperimentConfig& c, unsigned threads = 1) {
    std::ostringstream out, err;
    const int code = run(c, threads, out, err);
    return {code, out.str(), err.str()};
}

ExperimentConfig corr_er_adv(int D) {
    ExperimentConfig c;
    c.command = "adv";
    c.model.family = "corr-er";
    c.model.n = 3;
    c.model.q = "1/3";
    c.model.rho = "1/2";
    c.model.D = D;
    c.exact = true;
    return c;
}

}  // namespace

TEST_CASE("config round trip") {
    std::mt19937_64 rng(4);
    const std::vector<std::string> fracs{"1/3", "0", "2/7", "1"};
    for (int t = 0; t < 200; ++t) {
        ExperimentConfig c;
        c.command = *std::next(known_commands().begin(), static_cast<long>(rng() % known_commands().size()));
        c.model.family = t % 2 ? "sbm" : "corr-er";
        c.model.n = 2 + static_cast<int>(rng() % 9);
        if (rng() % 2) c.model.q = fracs[rng() % 4];
        if (rng() % 2) c.model.rho = fracs[rng() % 4];
        if (rng() % 3 == 0) c.model.p = fracs[rng() % 4];
        c.model.D = static_cast<int>(rng() % 7);
        c.exact = rng() % 2;
        if (rng() % 2) c.condition = std::array<int, 2>{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
        c.threshold = static_cast<double>(rng() % 1000) / 7.0;
        c.M = {1, static_cast<int>(rng() % 10)};
        c.seed = rng();
        c.trials = static_cast<long>(rng() % 5000);
        c.slack = 0.1 * static_cast<double>(rng() % 50);
        const auto text = to_json(c).dump();
        CHECK(parse_config_text(text) == c);
    }
}

TEST_CASE("config rejects bad input") {
    CHECK_THROWS_AS(parse_config_text(""), ConfigError);
    CHECK_THROWS_AS(parse_config_text("  \n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[]"), ConfigError);
    CHECK_THROWS_WITH(parse_config_text(R"({"command": "otter", "colour": 1})"), Catch::Matchers::ContainsSubstring("colour"));
    CHECK_THROWS_WITH(parse_config_text(R"({"model": {"n": 3, "mu": 2}})"), Catch::Matchers::ContainsSubstring("mu"));
    CHECK_THROWS_AS(parse_config_text(R"({"trials": "many"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"schema_version": 7})"), ConfigError);
    CHECK(parse_config_text("{}") == ExperimentConfig{});
    CHECK_THROWS_AS(parse_param("0.3", true, "q"), ConfigError);
    CHECK(parse_param("0.3", false, "q") == rat(3, 10));
}

TEST_CASE("usage and budget errors carry machine-readable codes") {
    ExperimentConfig c;
    CHECK(invoke(c).code == kUsage);
    c.command = "frobnicate";
    CHECK(invoke(c).code == kUsage);
    auto big = corr_er_adv(3);
    big.model.n = 5;
    const auto r = invoke(big);
    CHECK(r.code == kBudget);
    const auto err = nlohmann::json::parse(r.err);
    CHECK(err["error"]["kind"] == "budget");
    CHECK(err["error"]["message"].get<std::string>().find("n <= 4") != std::string::npos);
    CHECK(err["schema_version"] == kSchemaVersion);
    auto decimal = corr_er_adv(3);
    decimal.model.q = "0.25";
    CHECK(invoke(decimal).code == kUsage);
}

TEST_CASE("adv fixture") {
    // D = 3 is the command line from the docs; the full degree of the pair space at n = 3 is 6
    const auto partial = nlohmann::json::parse(invoke(corr_er_adv(3)).out);
    CHECK(partial["schema_version"] == kSchemaVersion);
    const auto& r3 = partial["result"];
    const Rational chi = parse_rational(r3["chi_square_exact"].get<std::string>());
    CHECK(chi == rat(21, 64));
    CHECK(parse_rational(r3["value_squared_exact"].get<std::string>()) == rat(5, 4));
    CHECK(parse_rational(r3["value_squared_exact"].get<std::string>()) <= 1 + chi);
    CHECK(r3["full_degree"] == false);
    const auto full = nlohmann::json::parse(invoke(corr_er_adv(6)).out);
    const auto& r6 = full["result"];
    CHECK(r6["full_degree"] == true);
    CHECK(parse_rational(r6["value_squared_exact"].get<std::string>()) == 1 + chi);
}

TEST_CASE("xi fixture") {
    ExperimentConfig c;
    c.command = "xi";
    c.model.family = "sbm";
    c.model.n = 6;
    c.model.k = 2;
    c.model.eps = "0.3";
    c.model.lambda = "1";
    c.model.D = 3;
    const auto doc = nlohmann::json::parse(invoke(c).out);
    const auto& entries = doc["result"]["entries"];
    REQUIRE(entries.size() == 2);
    CHECK(entries[0]["edges"] == 0);
    CHECK(entries[0]["xi"] == 1.0);
    CHECK(entries[1]["edges"] == 3);
    CHECK(entries[1]["vertices"] == 3);
    CHECK(entries[1]["copies"] == "20");
}

TEST_CASE("identical config and seed give identical bytes") {
    ExperimentConfig s;
    s.command = "sample";
    s.model.family = "corr-er";
    s.model.n = 12;
    s.model.q = "1/4";
    s.model.rho = "1/2";
    s.trials = 3;
    s.seed = 9;
    CHECK(invoke(s).out == invoke(s).out);
    s.format = "csv";
    CHECK(invoke(s).out == invoke(s).out);
    ExperimentConfig r = s;
    r.command = "reduce";
    r.format = "json";
    r.trials = 60;
    CHECK(invoke(r, 1).out == invoke(r, 3).out);
    ExperimentConfig other = s;
    other.seed = 10;
    CHECK(invoke(other).out != invoke(s).out);
}

TEST_CASE("csv rendering") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    ExperimentConfig c;
    c.command = "otter";
    c.max_n = 9;
    c.format = "csv";
    CHECK(invoke(c).out == "n,rooted_trees\n1,1\n2,1\n3,2\n4,4\n5,9\n6,20\n7,48\n8,115\n9,286\n");
    c.command = "hidden";
    CHECK(invoke(c).code == kUsage);  // no CSV form
}

TEST_CASE("bounds audit rows") {
    ExperimentConfig c;
    c.command = "bounds-audit";
    c.suite = "A5";
    c.format = "csv";
    const auto r = invoke(c);
    CHECK(r.code == kOk);
    CHECK(r.out.rfind("suite,instance,lhs,rhs,slack_factor,slack,holds,regime\n", 0) == 0);
    CHECK(r.out.find(",false,") == std::string::npos);
    c.suite = "B9";
    CHECK(invoke(c).code == kUsage);
}
