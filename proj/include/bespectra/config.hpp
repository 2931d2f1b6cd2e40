#pragma once

// JSON configuration for manifold specs.

#include <fstream>
#include <string>

#include "json.hpp"

#include "bespectra/errors.hpp"
#include "bespectra/model_manifold.hpp"

namespace bespectra {

/// Keys n, r, D, a are required; delta defaults to r/10, grid_points to 4096.
inline ProfileSpec profile_spec_from_json(const nlohmann::json& j) {
    try {
        ProfileSpec spec;
        spec.n = j.at("n").get<int>();
        spec.r = j.at("r").get<double>();
        spec.D = j.at("D").get<double>();
        spec.a = j.at("a").get<double>();
        spec.delta = j.value("delta", spec.r / 10);
        spec.grid_points = j.value("grid_points", 4096);
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("bad profile config: ") + e.what());
    }
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::InvalidArgument, "cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::InvalidArgument, path + ": " + e.what());
    }
}

inline nlohmann::json to_json(const ProfileSpec& s) {
    return {{"n", s.n}, {"r", s.r}, {"delta", s.delta}, {"D", s.D}, {"a", s.a}, {"grid_points", s.grid_points}};
}

} // namespace bespectra
