#include "wild/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace wild {

using json = nlohmann::ordered_json;

ChoiceSequence RunConfig::sequence() const {
    if (glimm_sequence == "van-der-corput") return ChoiceSequence::van_der_corput;
    if (glimm_sequence == "seeded") return ChoiceSequence::seeded;
    throw std::invalid_argument("RunConfig: unknown glimm_sequence '" + glimm_sequence +
                                "' (use \"van-der-corput\" or \"seeded\")");
}

void RunConfig::validate() const {
    thermo().validate();
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("RunConfig: epsilon must lie in (0, 1)");
    if (!(q >= 1.0)) throw std::invalid_argument("RunConfig: q must be at least 1");
    if (nx < 4 || ny < 4) throw std::invalid_argument("RunConfig: grid sizes must be at least 4");
    if (n_hint < 0) throw std::invalid_argument("RunConfig: n_hint must be nonnegative");
    if (snapshots < 20)
        throw std::invalid_argument("RunConfig: need at least 20 snapshots for the verifier");
    if (band_cells < 8)
        throw std::invalid_argument("RunConfig: band_cells must be at least 8");
    if (!(cfl > 0.0 && cfl <= 0.5))
        throw std::invalid_argument("RunConfig: cfl must lie in (0, 0.5]");
    if (!(plateau_tol >= 0.0)) throw std::invalid_argument("RunConfig: negative plateau_tol");
    riemann.validate();
    if (i_star && *i_star < 1) throw std::invalid_argument("RunConfig: i_star must be positive");
    if (threads < 1) throw std::invalid_argument("RunConfig: threads must be positive");
    sequence();
    make_base_preset(base, thermo());
}

namespace {

json state_to_json(const PrimitiveState& s) { return json::array({s.rho, s.theta, s.u.x, s.u.y}); }

PrimitiveState state_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("RunConfig: a state must be [rho, theta, u1, u2]");
    return {j[0].get<double>(), j[1].get<double>(), {j[2].get<double>(), j[3].get<double>()}};
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
    RunConfig c;
    for (auto& [key, v] : j.items()) {
        if (key == "c_v")
            c.c_v = v.get<double>();
        else if (key == "epsilon")
            c.epsilon = v.get<double>();
        else if (key == "q")
            c.q = v.get<double>();
        else if (key == "nx")
            c.nx = v.get<int>();
        else if (key == "ny")
            c.ny = v.get<int>();
        else if (key == "n_hint")
            c.n_hint = v.get<int>();
        else if (key == "snapshots")
            c.snapshots = v.get<int>();
        else if (key == "band_cells")
            c.band_cells = v.get<int>();
        else if (key == "cfl")
            c.cfl = v.get<double>();
        else if (key == "plateau_tol")
            c.plateau_tol = v.get<double>();
        else if (key == "base")
            c.base = v.get<std::string>();
        else if (key == "riemann") {
            c.riemann.left = state_from_json(v.at("left"));
            c.riemann.right = state_from_json(v.at("right"));
        } else if (key == "i_star") {
            if (!v.is_null()) c.i_star = v.get<int>();
        } else if (key == "seed")
            c.seed = v.get<std::uint64_t>();
        else if (key == "glimm_sequence")
            c.glimm_sequence = v.get<std::string>();
        else if (key == "threads")
            c.threads = v.get<int>();
        else
            throw std::invalid_argument("RunConfig: unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("RunConfig: cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("RunConfig: " + file.string() + ": " + e.what());
    }
    return from_json(j);
}

json RunConfig::to_json() const {
    json j;
    j["c_v"] = c_v;
    j["epsilon"] = epsilon;
    j["q"] = q;
    j["nx"] = nx;
    j["ny"] = ny;
    j["n_hint"] = n_hint;
    j["snapshots"] = snapshots;
    j["band_cells"] = band_cells;
    j["cfl"] = cfl;
    j["plateau_tol"] = plateau_tol;
    j["base"] = base;
    j["riemann"] = {{"left", state_to_json(riemann.left)},
                    {"right", state_to_json(riemann.right)}};
    j["i_star"] = i_star ? json(*i_star) : json(nullptr);
    j["seed"] = seed;
    j["glimm_sequence"] = glimm_sequence;
    j["threads"] = threads;
    return j;
}

FieldSampler make_base_preset(const std::string& name, const ThermoParams& p) {
    constexpr double tau = 2.0 * std::numbers::pi;
    if (name == "constant") {
        return [](double, double) { return PrimitiveState{1.0, 1.0, {0.0, 0.0}}; };
    }
    if (name == "smooth-vortex") {
        // stream function A/tau * sin(tau x) sin(tau y): divergence-free bump
        return [](double x, double y) {
            const double A = 0.1;
            PrimitiveState s;
            s.rho = 1.0 + 0.05 * std::cos(tau * x) * std::cos(tau * y);
            s.theta = 1.0 + 0.05 * std::sin(tau * x) * std::sin(tau * y);
            s.u = {A * std::sin(tau * x) * std::cos(tau * y),
                   -A * std::cos(tau * x) * std::sin(tau * y)};
            return s;
        };
    }
    if (name == "acoustic") {
        // right-moving linear sound wave of amplitude 1e-3 on (1, 1, 0)
        const double gamma = p.gamma();
        return [gamma](double x, double) {
            const double A = 1e-3;
            const double f = std::sin(tau * x);
            const double c0 = std::sqrt(gamma);
            PrimitiveState s;
            s.rho = 1.0 + A * f;
            s.theta = 1.0 + (gamma - 1.0) * A * f;
            s.u = {c0 * A * f, 0.0};
            return s;
        };
    }
    throw std::invalid_argument("unknown base preset '" + name +
                                "' (use constant, smooth-vortex or acoustic)");
}

}  // namespace wild
