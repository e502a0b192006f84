#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wild/config.hpp"
#include "wild/evolve.hpp"
#include "wild/paste.hpp"
#include "wild/surgery.hpp"
#include "wild/verify.hpp"

using namespace wild;

namespace {

const ThermoParams kGas{2.5};
constexpr double kTau = 2.0 * M_PI;

SpaceTimeField constant_field(const PrimitiveState& c, int nx, int ny, double T, int snaps) {
    SpaceTimeField f;
    f.times = uniform_times(T, snaps);
    for (double t : f.times) {
        TorusField s(nx, ny, t);
        for (auto& v : s.cells) v = c;
        f.snapshots.push_back(std::move(s));
    }
    return f;
}

// manufactured mass-source field: rho = 1 + a t sin(2 pi x), theta and u constant
SpaceTimeField source_field(double a, double U, int nx, int ny, double T, int snaps) {
    SpaceTimeField f;
    f.times = uniform_times(T, snaps);
    for (double t : f.times) {
        TorusField s(nx, ny, t);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                s.at(i, j) = {1.0 + a * t * std::sin(kTau * s.x1(i)), 1.0, {U, 0.0}};
        f.snapshots.push_back(std::move(s));
    }
    return f;
}

// downstream of an admissible 3-shock (jump-condition construction)
PrimitiveState shock3_downstream(const PrimitiveState& ahead, double sigma,
                                 const ThermoParams& tp) {
    const double gamma = tp.gamma();
    const double c = std::sqrt(gamma * ahead.theta);
    const double M2 = (sigma - ahead.u.x) * (sigma - ahead.u.x) / (c * c);
    const double rho = ahead.rho * (gamma + 1.0) * M2 / ((gamma - 1.0) * M2 + 2.0);
    const double p = ahead.rho * ahead.theta * (1.0 + 2.0 * gamma / (gamma + 1.0) * (M2 - 1.0));
    const double u1 = sigma + (ahead.u.x - sigma) * ahead.rho / rho;
    return {rho, p / rho, {u1, ahead.u.y}};
}

// exact fan translate centered at x = 1/2; valid away from the wrap seam
SpaceTimeField fan_field(const WaveFan& fan, int nx, int ny, double T, int snaps) {
    SpaceTimeField f;
    f.times = uniform_times(T, snaps);
    for (double t : f.times) {
        TorusField s(nx, ny, t);
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const double d = s.x1(i) - 0.5;
                s.at(i, j) = t > 0.0 ? sample_fan(fan, d / t)
                                     : (d < 0.0 ? fan.data.left : fan.data.right);
            }
        }
        f.snapshots.push_back(std::move(s));
    }
    return f;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    double sum = f(a) + f(b);
    const double h = (b - a) / n;
    for (int k = 1; k < n; ++k) sum += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("bump test function: support, smoothness, validation") {
    const TestFunction fn{0.5, 0.3, 0.5, 0.2, 0.5, 0.2};
    fn.validate();
    CHECK(fn.value(0.5, 0.5, 0.5) == 1.0);
    CHECK(fn.value(0.81, 0.5, 0.5) == 0.0);
    CHECK(fn.value(0.5, 0.71, 0.5) == 0.0);
    CHECK(fn.value(0.5, 0.29, 0.5) == 0.0);
    // wraps periodically
    const TestFunction seam{0.5, 0.3, 0.02, 0.2, 0.5, 0.2};
    CHECK(seam.value(0.5, 0.95, 0.5) > 0.0);
    CHECK_THROWS_AS((TestFunction{0.5, 0.3, 0.5, 0.5, 0.5, 0.2}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((TestFunction{0.5, -0.1, 0.5, 0.2, 0.5, 0.2}.validate()),
                    std::invalid_argument);
}

TEST_CASE("constant fields have vanishing residuals") {
    const PrimitiveState c{1.3, 0.8, {0.4, -0.2}};
    const SpaceTimeField f = constant_field(c, 48, 48, 1.0, 33);
    const TorusField init = f.snapshots.front();
    const std::vector<TestFunction> family = {
        {0.5, 0.48, 0.5, 0.2, 0.5, 0.2},   // interior
        {0.3, 0.45, 0.25, 0.3, 0.7, 0.25}, // touches t = 0, trace term active
        {0.45, 0.4, 0.9, 0.15, 0.1, 0.3},  // wraps the seam
    };
    const ResidualReport r = weak_residuals(f, family, init, kGas);
    CHECK(r.evaluated == 3);
    CHECK(r.max_mass <= 1e-12);
    CHECK(r.max_mom <= 1e-12);
    CHECK(r.max_energy <= 1e-12);
    CHECK(std::abs(r.min_entropy_signed) <= 1e-12);
}

TEST_CASE("manufactured source shows up as the mass residual") {
    const double a = 0.3, U = 0.7, T = 1.0;
    const SpaceTimeField f = source_field(a, U, 128, 8, T, 65);
    const TestFunction fn{0.5, 0.45, 0.5, 0.25, 0.5, 0.25};
    const ResidualReport r = weak_residuals(f, {fn}, f.snapshots.front(), kGas);

    // oracle: integral of g*phi for g = a sin + 2 pi U a t cos, by 1D Simpson
    auto psi = [](double v, double c, double rad) {
        const double tau = (v - c) / rad;
        return std::abs(tau) < 1.0 ? std::pow(1.0 - tau * tau, 3) : 0.0;
    };
    const double At = simpson([&](double t) { return psi(t, fn.t0, fn.rt); }, 0.0, T, 4000);
    const double Att = simpson([&](double t) { return t * psi(t, fn.t0, fn.rt); }, 0.0, T, 4000);
    const double Bx = simpson([&](double x) { return std::sin(kTau * x) * psi(x, fn.x0, fn.rx); },
                              0.0, 1.0, 4000);
    const double Bxc = simpson([&](double x) { return std::cos(kTau * x) * psi(x, fn.x0, fn.rx); },
                               0.0, 1.0, 4000);
    const double Cy = simpson([&](double y) { return psi(y, fn.y0, fn.ry); }, 0.0, 1.0, 4000);
    const double oracle = std::abs(a * At * Bx * Cy + kTau * U * a * Att * Bxc * Cy);
    CHECK(r.tests[0].mass == doctest::Approx(oracle).epsilon(0.02));
    // the other balances hold exactly for this field
    CHECK(r.tests[0].mom2 <= 1e-12);
}

TEST_CASE("single-shock field: residual refinement and entropy sign") {
    const PrimitiveState ahead{1.0, 1.0, {0.0, 0.0}};
    const double sigma = 2.0;
    const PrimitiveState behind = shock3_downstream(ahead, sigma, kGas);
    const WaveFan fan = solve_fan({behind, ahead}, kGas);
    REQUIRE(fan.right_wave.kind == WaveKind::shock);

    const double T = 0.05;  // shock path 0.5 -> 0.6
    std::vector<TestFunction> family = {
        {0.5 * T, 0.45 * T, 0.55, 0.2, 0.5, 0.3},
        {0.5 * T, 0.48 * T, 0.55, 0.1, 0.25, 0.25},
        {0.4 * T, 0.38 * T, 0.6, 0.15, 0.75, 0.25},
    };
    double prev_mass = 0.0, prev_energy = 0.0;
    int level = 0;
    for (int n : {256, 512}) {
        const SpaceTimeField f = fan_field(fan, n, 8, T, n / 4 + 1);
        const ResidualReport r = weak_residuals(f, family, f.snapshots.front(), kGas);
        CHECK(r.evaluated == 3);
        CHECK(r.min_entropy_signed >= -1e-8);
        for (const auto& rec : r.tests) CHECK(rec.entropy_signed > 0.0);  // all straddle the path
        if (level++ > 0) {
            CHECK(prev_mass / r.max_mass >= 1.8);
            CHECK(prev_energy / r.max_energy >= 1.8);
        }
        prev_mass = r.max_mass;
        prev_energy = r.max_energy;
    }
}

TEST_CASE("residuals are linear in the test function") {
    const PrimitiveState ahead{1.0, 1.0, {0.0, 0.0}};
    const WaveFan fan = solve_fan({shock3_downstream(ahead, 2.0, kGas), ahead}, kGas);
    const SpaceTimeField f = fan_field(fan, 128, 8, 0.05, 33);
    const TorusField& init = f.snapshots.front();

    const TestFunction f1{0.025, 0.022, 0.55, 0.2, 0.5, 0.3};
    const TestFunction f2{0.02, 0.018, 0.6, 0.12, 0.4, 0.2};
    const double a = 0.37, b = -1.21;

    // independent accumulation with combined weights
    auto signed_residuals = [&](auto weight_of) {
        std::array<double, 5> res{};
        const TorusField& geom = f.snapshots.front();
        for (std::size_t s = 0; s < f.times.size(); ++s) {
            for (int j = 0; j < geom.ny; ++j) {
                for (int i = 0; i < geom.nx; ++i) {
                    const auto [wdt, wdx, wdy, w0] = weight_of(s, i, j);
                    if (wdt == 0.0 && wdx == 0.0 && wdy == 0.0 && (s != 0 || w0 == 0.0)) continue;
                    const PrimitiveState& v = f.snapshots[s].at(i, j);
                    const double p = pressure(v);
                    const double E = 0.5 * v.rho * v.u.norm2() + v.rho * kGas.c_v * v.theta;
                    const double rs = v.rho * entropy(v, kGas);
                    const double dens[5] = {v.rho, v.rho * v.u.x, v.rho * v.u.y, E, rs};
                    const double fx[5] = {v.rho * v.u.x, v.rho * v.u.x * v.u.x + p,
                                          v.rho * v.u.x * v.u.y, (E + p) * v.u.x, rs * v.u.x};
                    const double fy[5] = {v.rho * v.u.y, v.rho * v.u.x * v.u.y,
                                          v.rho * v.u.y * v.u.y + p, (E + p) * v.u.y, rs * v.u.y};
                    for (int e = 0; e < 5; ++e)
                        res[e] += dens[e] * wdt + fx[e] * wdx + fy[e] * wdy;
                    if (s == 0 && w0 != 0.0) {
                        const PrimitiveState& v0 = init.at(i, j);
                        const double p0 = pressure(v0);
                        const double E0 =
                            0.5 * v0.rho * v0.u.norm2() + v0.rho * kGas.c_v * v0.theta;
                        (void)p0;
                        const double d0[5] = {v0.rho, v0.rho * v0.u.x, v0.rho * v0.u.y, E0,
                                              v0.rho * entropy(v0, kGas)};
                        for (int e = 0; e < 5; ++e) res[e] += d0[e] * w0;
                    }
                }
            }
        }
        return res;
    };

    const TorusField& geom = f.snapshots.front();
    const auto w1 = f1.grid_weights(f.times, geom.nx, geom.ny);
    const auto w2 = f2.grid_weights(f.times, geom.nx, geom.ny);
    auto weights_at = [&](const TestFunction::GridWeights& w, std::size_t s, int i, int j) {
        double it = w.slab_integral[s], dt = w.slab_deriv[s];
        double xi = 0.0, xd = 0.0, yi = 0.0, yd = 0.0;
        for (std::size_t k = 0; k < w.x.idx.size(); ++k)
            if (w.x.idx[k] == i) { xi = w.x.integral[k]; xd = w.x.deriv[k]; }
        for (std::size_t k = 0; k < w.y.idx.size(); ++k)
            if (w.y.idx[k] == j) { yi = w.y.integral[k]; yd = w.y.deriv[k]; }
        return std::array<double, 4>{dt * xi * yi, it * xd * yi, it * xi * yd,
                                     (s == 0 ? w.phi_t0 * xi * yi : 0.0)};
    };
    const auto r1 = signed_residuals([&](std::size_t s, int i, int j) {
        return weights_at(w1, s, i, j);
    });
    const auto r2 = signed_residuals([&](std::size_t s, int i, int j) {
        return weights_at(w2, s, i, j);
    });
    const auto rc = signed_residuals([&](std::size_t s, int i, int j) {
        const auto a1 = weights_at(w1, s, i, j);
        const auto a2 = weights_at(w2, s, i, j);
        return std::array<double, 4>{a * a1[0] + b * a2[0], a * a1[1] + b * a2[1],
                                     a * a1[2] + b * a2[2], a * a1[3] + b * a2[3]};
    });
    for (int e = 0; e < 5; ++e)
        CHECK(rc[e] == doctest::Approx(a * r1[e] + b * r2[e]).epsilon(1e-12));

    // the library's magnitudes match the independent accumulation
    const ResidualReport rep = weak_residuals(f, {f1}, init, kGas);
    CHECK(rep.tests[0].mass == doctest::Approx(std::abs(r1[0])).epsilon(1e-12));
    CHECK(rep.tests[0].energy == doctest::Approx(std::abs(r1[3])).epsilon(1e-12));
    CHECK(rep.tests[0].entropy_signed == doctest::Approx(-r1[4]).epsilon(1e-12));
}

TEST_CASE("supports escaping the horizon are skipped with a diagnostic") {
    const PrimitiveState c{1.0, 1.0, {0.0, 0.0}};
    const SpaceTimeField f = constant_field(c, 32, 32, 0.5, 33);
    const std::vector<TestFunction> family = {
        {0.25, 0.2, 0.5, 0.2, 0.5, 0.2},
        {0.45, 0.2, 0.5, 0.2, 0.5, 0.2},  // t0 + rt beyond the horizon
    };
    const ResidualReport r = weak_residuals(f, family, f.snapshots.front(), kGas);
    CHECK(r.evaluated == 1);
    CHECK(r.skipped == 1);
    CHECK(r.tests[1].skipped);
    CHECK(r.tests[1].skip_reason.find("escapes") != std::string::npos);
}

TEST_CASE("too-sparse snapshots violate the quadrature precondition") {
    const PrimitiveState c{1.0, 1.0, {0.0, 0.0}};
    const SpaceTimeField f = constant_field(c, 16, 16, 1.0, 12);
    const TestFunction fn{0.5, 0.45, 0.5, 0.2, 0.5, 0.2};
    CHECK_THROWS_AS(weak_residuals(f, {fn}, f.snapshots.front(), kGas), std::invalid_argument);
}

TEST_CASE("rh_residual identities") {
    const PrimitiveState s{1.2, 0.9, {0.5, -0.3}};
    for (double v : rh_residual(s, s, 1.7, kGas)) CHECK(v == 0.0);

    // contact: equal pressure and normal velocity, distinct density
    const PrimitiveState l{1.0, 1.2, {0.4, 0.7}};
    const PrimitiveState r{2.0, 0.6, {0.4, -0.1}};
    for (double v : rh_residual(l, r, 0.4, kGas)) CHECK(std::abs(v) <= 1e-14);

    // solver-produced shock
    const RiemannData sod{{1.0, 1.0, {0.0, 0.0}}, {0.125, 0.8, {0.0, 0.0}}};
    const WaveFan fan = solve_fan(sod, kGas);
    REQUIRE(fan.right_wave.kind == WaveKind::shock);
    for (double v :
         rh_residual(fan.star_right, fan.data.right, fan.right_wave.speed(), kGas))
        CHECK(std::abs(v) <= 1e-8);

    // antisymmetry under swapping the sides
    const auto d1 = rh_residual(l, r, 0.9, kGas);
    const auto d2 = rh_residual(r, l, 0.9, kGas);
    for (int k = 0; k < 4; ++k) CHECK(d1[k] == doctest::Approx(-d2[k]).epsilon(1e-14));
}

TEST_CASE("bounds_check reports offenders") {
    const PrimitiveState c{1.0, 1.0, {0.3, 0.4}};
    SpaceTimeField f = constant_field(c, 16, 16, 0.5, 21);
    const BoundsBox box{0.5, 2.0, 0.5, 2.0, 1.0};
    CHECK(bounds_check(f, box).ok);

    f.snapshots[3].at(5, 7).rho = 0.25;  // rho_min / 2
    const BoundsResult r = bounds_check(f, box);
    CHECK_FALSE(r.ok);
    REQUIRE(r.offenders.size() == 1);
    CHECK(r.offenders[0].snapshot == 3);
    CHECK(r.offenders[0].i == 5);
    CHECK(r.offenders[0].j == 7);
    CHECK(r.offenders[0].value == 0.25);

    CHECK_THROWS_AS(bounds_check(f, BoundsBox{0.0, 1.0, 0.5, 2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("box from fan states covers every sample of the translate") {
    const RiemannData sod{{1.0, 1.0, {0.0, 0.0}}, {0.125, 0.8, {0.0, 0.0}}};
    const WaveFan fan = solve_fan(sod, kGas);
    const SpaceTimeField f = fan_field(fan, 256, 4, 0.05, 33);
    const BoundsBox box = widen_box(fan_state_box({fan}), 1e-9);
    CHECK(bounds_check(f, box).ok);
}

TEST_CASE("entropy production total: zero on constants, positive behind a shock") {
    const PrimitiveState c{1.0, 1.0, {0.2, 0.0}};
    CHECK(entropy_production_total(constant_field(c, 16, 16, 0.5, 21), kGas) == 0.0);

    const PrimitiveState ahead{1.0, 1.0, {0.0, 0.0}};
    const WaveFan fan = solve_fan({shock3_downstream(ahead, 2.0, kGas), ahead}, kGas);
    const double prod = entropy_production_total(fan_field(fan, 512, 4, 0.05, 33), kGas);
    CHECK(prod > 0.0);
}
