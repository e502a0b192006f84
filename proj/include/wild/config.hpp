#pragma once

// Run configuration: one JSON file drives the whole pipeline and is echoed
// into every output manifest.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "wild/field.hpp"
#include "wild/glimm.hpp"
#include "wild/riemann.hpp"
#include "wild/thermo.hpp"

namespace wild {

struct RunConfig {
    double c_v = 2.5;
    double epsilon = 0.3;
    double q = 2.0;
    int nx = 512;
    int ny = 64;
    int n_hint = 0;
    int snapshots = 32;
    int band_cells = 8;  // working-grid cells across each delta band
    double cfl = 0.45;
    double plateau_tol = 1e-6;
    std::string base = "smooth-vortex";
    RiemannData riemann{{1.0, 1.0, {0.0, 0.0}}, {0.125, 0.8, {0.0, 0.0}}};
    std::optional<int> i_star;
    std::uint64_t seed = 0;
    std::string glimm_sequence = "van-der-corput";
    int threads = 1;

    ThermoParams thermo() const { return {c_v}; }
    ChoiceSequence sequence() const;

    void validate() const;

    static RunConfig from_json(const nlohmann::ordered_json& j);
    static RunConfig load(const std::filesystem::path& file);
    nlohmann::ordered_json to_json() const;  // full echo, used for provenance
};

// Smooth positive base data presets: "constant", "smooth-vortex"
// (divergence-free velocity bump), "acoustic" (right-moving sound wave).
FieldSampler make_base_preset(const std::string& name, const ThermoParams& p);

}  // namespace wild
