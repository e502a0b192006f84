#include "wild/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wild::io {

namespace fs = std::filesystem;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const fs::path& file) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
    return out;
}

std::ifstream open_in(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open for reading: " + file.string());
    return in;
}

fs::path sidecar_path(const fs::path& csv_file) {
    fs::path p = csv_file;
    p.replace_extension(".json");
    return p;
}

}  // namespace

void write_grid_csv(const fs::path& file, const Grid1D& g, const ThermoParams& p, double t) {
    auto out = open_out(file);
    out << "# t=" << fmt17(t) << " h=" << fmt17(g.h) << " c_v=" << fmt17(p.c_v) << "\n";
    out << "x,rho,theta,u1,u2,p,s\n";
    for (int i = 0; i < g.n_cells; ++i) {
        const PrimitiveState s = cons_to_prim(g.cells[i], p);
        out << fmt17(g.cell_center(i)) << ',' << fmt17(s.rho) << ',' << fmt17(s.theta) << ','
            << fmt17(s.u.x) << ',' << fmt17(s.u.y) << ',' << fmt17(pressure(s)) << ','
            << fmt17(entropy(s, p)) << "\n";
    }
}

void write_torus_bundle(const fs::path& csv_file, const TorusField& f, json sidecar_extra) {
    auto out = open_out(csv_file);
    out << "x1,x2,rho,theta,u1,u2\n";
    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) {
            const PrimitiveState& s = f.at(i, j);
            out << fmt17(f.x1(i)) << ',' << fmt17(f.x2(j)) << ',' << fmt17(s.rho) << ','
                << fmt17(s.theta) << ',' << fmt17(s.u.x) << ',' << fmt17(s.u.y) << "\n";
        }
    }
    json side;
    side["nx"] = f.nx;
    side["ny"] = f.ny;
    side["time"] = f.time;
    for (auto& [k, v] : sidecar_extra.items()) side[k] = v;
    write_json(sidecar_path(csv_file), side);
}

TorusField read_torus_bundle(const fs::path& csv_file) {
    const json side = read_json(sidecar_path(csv_file));
    TorusField f(side.at("nx").get<int>(), side.at("ny").get<int>(),
                 side.at("time").get<double>());
    auto in = open_in(csv_file);
    std::string line;
    std::getline(in, line);  // column header
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double v[6];
        const char* s = line.c_str();
        char* end = nullptr;
        for (int k = 0; k < 6; ++k) {
            v[k] = std::strtod(s, &end);
            if (end == s) throw std::runtime_error("malformed CSV row in " + csv_file.string());
            s = (*end == ',') ? end + 1 : end;
        }
        if (count >= f.cells.size())
            throw std::runtime_error("too many CSV rows in " + csv_file.string());
        f.cells[count++] = {v[2], v[3], {v[4], v[5]}};
    }
    if (count != f.cells.size())
        throw std::runtime_error("row count does not match grid size in " + csv_file.string());
    return f;
}

json read_sidecar(const fs::path& csv_file) { return read_json(sidecar_path(csv_file)); }

void write_spacetime(const fs::path& dir, const SpaceTimeField& f, json manifest_extra) {
    fs::create_directories(dir);
    json manifest;
    manifest["nx"] = f.snapshots.front().nx;
    manifest["ny"] = f.snapshots.front().ny;
    manifest["times"] = f.times;
    if (f.entropy_line)
        manifest["i_star"] = *f.entropy_line;
    else
        manifest["i_star"] = nullptr;
    json names = json::array();
    for (std::size_t s = 0; s < f.snapshots.size(); ++s) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%04zu.csv", s);
        names.push_back(name);
        write_torus_bundle(dir / name, f.snapshots[s]);
    }
    manifest["snapshots"] = names;
    for (auto& [k, v] : manifest_extra.items()) manifest[k] = v;
    write_json(dir / "manifest.json", manifest);
}

SpaceTimeField read_spacetime(const fs::path& dir) {
    const json manifest = read_json(dir / "manifest.json");
    SpaceTimeField f;
    f.times = manifest.at("times").get<std::vector<double>>();
    for (const auto& name : manifest.at("snapshots"))
        f.snapshots.push_back(read_torus_bundle(dir / name.get<std::string>()));
    if (!manifest.at("i_star").is_null()) f.entropy_line = manifest.at("i_star").get<int>();
    for (std::size_t s = 0; s < f.times.size() && s < f.snapshots.size(); ++s)
        f.snapshots[s].time = f.times[s];
    f.validate();
    return f;
}

json read_manifest(const fs::path& dir) { return read_json(dir / "manifest.json"); }

void write_report(const fs::path& dir, const std::string& name, const ResidualReport& report,
                  json extra) {
    fs::create_directories(dir);
    json j;
    j["evaluated"] = report.evaluated;
    j["skipped"] = report.skipped;
    j["hx"] = report.hx;
    j["hy"] = report.hy;
    j["dt"] = report.dt;
    j["max_mass_residual"] = report.max_mass;
    j["max_momentum_residual"] = report.max_mom;
    j["max_energy_residual"] = report.max_energy;
    j["min_entropy_production"] = report.min_entropy_signed;
    json tests = json::array();
    for (const TestRecord& r : report.tests) {
        json t;
        t["t0"] = r.fn.t0;
        t["rt"] = r.fn.rt;
        t["x0"] = r.fn.x0;
        t["rx"] = r.fn.rx;
        t["y0"] = r.fn.y0;
        t["ry"] = r.fn.ry;
        if (r.skipped) {
            t["skipped"] = r.skip_reason;
        } else {
            t["mass"] = r.mass;
            t["mom1"] = r.mom1;
            t["mom2"] = r.mom2;
            t["energy"] = r.energy;
            t["entropy_production"] = r.entropy_signed;
        }
        tests.push_back(t);
    }
    j["tests"] = tests;
    for (auto& [k, v] : extra.items()) j[k] = v;
    write_json(dir / (name + ".json"), j);

    auto csv = open_out(dir / (name + ".csv"));
    csv << "t0,rt,x0,rx,y0,ry,mass,mom1,mom2,energy,entropy_production,skipped\n";
    for (const TestRecord& r : report.tests) {
        csv << fmt17(r.fn.t0) << ',' << fmt17(r.fn.rt) << ',' << fmt17(r.fn.x0) << ','
            << fmt17(r.fn.rx) << ',' << fmt17(r.fn.y0) << ',' << fmt17(r.fn.ry) << ',';
        if (r.skipped)
            csv << ",,,,,1\n";
        else
            csv << fmt17(r.mass) << ',' << fmt17(r.mom1) << ',' << fmt17(r.mom2) << ','
                << fmt17(r.energy) << ',' << fmt17(r.entropy_signed) << ",0\n";
    }
}

void write_json(const fs::path& file, const json& j) {
    auto out = open_out(file);
    out << j.dump(2) << "\n";
}

json read_json(const fs::path& file) {
    auto in = open_in(file);
    json j;
    in >> j;
    return j;
}

}  // namespace wild::io
