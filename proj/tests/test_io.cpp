#include "doctest.h"

#include <cmath>
#include <sstream>

#include "penmin/io.hpp"
#include "test_helpers.hpp"

using namespace penmin;

TEST_CASE("collection CSV round trip") {
    SplitMix64 rng(606);
    const auto coll = testutil::random_collection(rng, 25);
    std::stringstream buffer;
    write_collection_csv(buffer, coll);
    const auto back = read_collection_csv(buffer);
    REQUIRE(back.size() == coll.size());
    for (std::size_t i = 0; i < coll.size(); ++i) {
        CHECK(back[i].id == coll[i].id);
        CHECK(back[i].empirical_risk == coll[i].empirical_risk);
        CHECK(back[i].pen0 == coll[i].pen0);
        CHECK(back[i].pen1 == coll[i].pen1);
        CHECK(back[i].complexity == coll[i].complexity);
    }
}

TEST_CASE("CSV rejects malformed input") {
    auto parse = [](const std::string& s) {
        std::stringstream in(s);
        return read_collection_csv(in);
    };
    CHECK_THROWS_AS((void)parse(""), Error);
    CHECK_THROWS_AS((void)parse("wrong,header\n"), Error);
    CHECK_THROWS_AS((void)parse("id,empirical_risk,pen0,pen1,complexity\n1,2,3\n"), Error);
    CHECK_THROWS_AS((void)parse("id,empirical_risk,pen0,pen1,complexity\n1,x,0,0,1\n"), Error);
    // header but no rows -> empty collection
    CHECK_THROWS_AS((void)parse("id,empirical_risk,pen0,pen1,complexity\n"), Error);
}

TEST_CASE("path JSON writes the literal string inf") {
    PenalizedPath path;
    path.breakpoints = {0.0, 0.5, std::numeric_limits<double>::infinity()};
    path.models = {4, 2};
    const auto j = path_to_json(path);
    CHECK(j["breakpoints"][2] == "inf");
    CHECK(j.dump().find("\"inf\"") != std::string::npos);

    const auto back = path_from_json(j);
    CHECK(back.models == path.models);
    CHECK(back.breakpoints[1] == 0.5);
    CHECK(std::isinf(back.breakpoints[2]));
}

TEST_CASE("jump diagnostics JSON") {
    JumpDiagnostics d;
    d.c_hat = 1.5;
    d.interval = {1.0, 2.25};
    d.jump_size = 9.0;
    const auto j = jump_to_json(d, "window");
    CHECK(j["method"] == "window");
    CHECK(j["c_hat"] == 1.5);
    CHECK(j["interval"][0] == 1.0);
    CHECK(j["max_drop"] == 9.0);
}

TEST_CASE("flat config parsing") {
    std::stringstream in("# comment\n a = 1.5 \nb=2\n\nc = 3e-2 # trailing\n");
    const auto kv = parse_flat_config(in);
    CHECK(kv.at("a") == 1.5);
    CHECK(kv.at("b") == 2.0);
    CHECK(kv.at("c") == 0.03);
    std::stringstream bad("a 1.5\n");
    CHECK_THROWS_AS((void)parse_flat_config(bad), Error);
}
