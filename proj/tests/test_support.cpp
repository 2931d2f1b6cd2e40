#include <catch_amalgamated.hpp>

#include <atomic>
#include <sstream>
#include <stdexcept>

#include "bespectra/config.hpp"
#include "bespectra/csv.hpp"
#include "bespectra/parallel.hpp"

using namespace bespectra;

TEST_CASE("csv output") {
    std::ostringstream os;
    CsvWriter csv(os, {"x", "y"});
    csv.row({0.5, 1.0 / 3});
    csv.row({-2, 1e-20});
    CHECK(os.str() == "x,y\n0.5,0.333333333333\n-2,1e-20\n");
    CHECK(format_number(3.14159265358979) == "3.14159265359");
    CHECK_THROWS(csv.row({1.0}));
}

TEST_CASE("parallel map keeps order") {
    for (unsigned jobs : {1u, 2u, 4u}) {
        const auto out = parallel_map(50, jobs, [](std::size_t i) { return i * i; });
        REQUIRE(out.size() == 50);
        for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);
    }
    CHECK(parallel_map(0, 3, [](std::size_t i) { return i; }).empty());
}

TEST_CASE("parallel map rethrows the first failure") {
    std::atomic<int> calls{0};
    try {
        parallel_map(20, 3, [&](std::size_t i) {
            ++calls;
            if (i == 7 || i == 13) throw std::runtime_error("at " + std::to_string(i));
            return i;
        });
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "at 7");
    }
}

TEST_CASE("profile configs") {
    const auto spec = profile_spec_from_json(read_json_file(std::string(BESPECTRA_CONFIG_DIR) + "/profile.json"));
    CHECK(spec.n == 3);
    CHECK(spec.r == 0.1);
    CHECK(spec.delta == 0.01);
    CHECK(spec.a == 1);
    CHECK(spec.grid_points == 4096);
    CHECK_NOTHROW(spec.validate());

    const auto sphere = profile_spec_from_json(read_json_file(std::string(BESPECTRA_CONFIG_DIR) + "/sphere.json"));
    CHECK(sphere.a == 0);
    CHECK_NOTHROW(sphere.validate());

    const auto defaults = profile_spec_from_json(nlohmann::json::parse(R"({"n": 4, "r": 0.2, "D": 3, "a": 2})"));
    CHECK(defaults.delta == Catch::Approx(0.02));
    CHECK(defaults.grid_points == 4096);

    const auto round = profile_spec_from_json(to_json(spec));
    CHECK(round.r == spec.r);
    CHECK(round.D == spec.D);

    auto code = [](auto&& f) {
        try {
            f();
        } catch (const SpectralError& e) {
            return e.code();
        }
        return ErrorCode::NoConvergence;
    };
    CHECK(code([] { profile_spec_from_json(nlohmann::json::parse(R"({"n": "three"})")); }) == ErrorCode::InvalidArgument);
    CHECK(code([] { read_json_file("/nonexistent/profile.json"); }) == ErrorCode::InvalidArgument);
}
