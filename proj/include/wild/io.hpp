#pragma once

// CSV/JSON artifact formats. CSV carries 17 significant digits so doubles
// round-trip exactly; JSON sidecars/manifests use shortest-round-trip
// doubles and are bit-exact through write/read.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wild/field.hpp"
#include "wild/glimm.hpp"
#include "wild/verify.hpp"

namespace wild::io {

using json = nlohmann::ordered_json;

std::string fmt17(double v);

// 1D grid snapshot: metadata header, then x,rho,theta,u1,u2,p,s rows.
void write_grid_csv(const std::filesystem::path& file, const Grid1D& g, const ThermoParams& p,
                    double t);

// Torus field: x1,x2,rho,theta,u1,u2 rows plus a JSON sidecar carrying the
// grid sizes and whatever extra metadata the caller supplies.
void write_torus_bundle(const std::filesystem::path& csv_file, const TorusField& f,
                        json sidecar_extra = json::object());
TorusField read_torus_bundle(const std::filesystem::path& csv_file);
json read_sidecar(const std::filesystem::path& csv_file);

// Space-time field: one CSV per snapshot plus manifest.json in `dir`.
void write_spacetime(const std::filesystem::path& dir, const SpaceTimeField& f,
                     json manifest_extra = json::object());
SpaceTimeField read_spacetime(const std::filesystem::path& dir);
json read_manifest(const std::filesystem::path& dir);

// Residual report: per-test JSON plus a flat CSV summary.
void write_report(const std::filesystem::path& dir, const std::string& name,
                  const ResidualReport& report, json extra = json::object());

void write_json(const std::filesystem::path& file, const json& j);
json read_json(const std::filesystem::path& file);

}  // namespace wild::io
