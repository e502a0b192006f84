#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wild/config.hpp"
#include "wild/surgery.hpp"

using namespace wild;

namespace {

const ThermoParams kGas{2.5};
const RiemannData kSod{{1.0, 1.0, {0.0, 0.0}}, {0.125, 0.8, {0.0, 0.0}}};

WildDataSpec vortex_spec(double epsilon, double delta, double q = 2.0) {
    return {make_partition(epsilon), delta, kSod, q, make_base_preset("smooth-vortex", kGas)};
}

// naive reference for the L^q distance
double lq_reference(const TorusField& a, const TorusField& b, double q) {
    double sum = 0.0;
    for (int j = 0; j < a.ny; ++j) {
        for (int i = 0; i < a.nx; ++i) {
            const PrimitiveState& x = a.at(i, j);
            const PrimitiveState& y = b.at(i, j);
            const double n2 = (x.rho - y.rho) * (x.rho - y.rho) +
                              (x.theta - y.theta) * (x.theta - y.theta) +
                              (x.u.x - y.u.x) * (x.u.x - y.u.x) +
                              (x.u.y - y.u.y) * (x.u.y - y.u.y);
            sum += a.cell_area() * std::pow(std::sqrt(n2), q);
        }
    }
    return std::pow(sum, 1.0 / q);
}

}  // namespace

TEST_CASE("make_partition forced by epsilon") {
    const Partition p = make_partition(0.3);
    REQUIRE(p.size() == 4);
    CHECK(p.points[0] == 0.0);
    CHECK(p.points[1] == 0.25);
    CHECK(p.points[2] == 0.5);
    CHECK(p.points[3] == 0.75);
    CHECK(p.min_gap() == doctest::Approx(0.25).epsilon(1e-15));
    p.validate();
}

TEST_CASE("make_partition honours n_hint and rejects bad epsilon") {
    CHECK(make_partition(0.3, 10).size() == 10);
    CHECK_THROWS_AS(make_partition(1.0001), std::invalid_argument);
    CHECK_THROWS_AS(make_partition(1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_partition(0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_partition(-0.2), std::invalid_argument);
}

TEST_CASE("every epsilon-ball meets a partition line") {
    for (double eps : {0.3, 0.1, 0.05}) {
        const Partition p = make_partition(eps);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int k = 0; k < 10000; ++k) {
            double d = 0.0;
            p.nearest_line(unit(rng), &d);
            CHECK(std::abs(d) < eps);  // the ball around the center reaches the line
        }
    }
}

TEST_CASE("nearest_line wraps around the seam") {
    const Partition p = make_partition(0.3);
    double d = 0.0;
    CHECK(p.nearest_line(0.99, &d) == 0);
    CHECK(d == doctest::Approx(-0.01).epsilon(1e-12));
    CHECK(p.nearest_line(0.12, &d) == 0);
    CHECK(d == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(p.nearest_line(0.13, &d) == 1);
    CHECK(d == doctest::Approx(-0.12).epsilon(1e-12));
}

TEST_CASE("surgery of a constant by itself is the constant") {
    const PrimitiveState c{1.0, 1.0, {0.0, 0.0}};
    WildDataSpec spec{make_partition(0.3), 0.02, {c, c}, 2.0,
                      make_base_preset("constant", kGas)};
    const TorusField f = build_wild_data(spec, 512, 8);
    for (const auto& s : f.cells) {
        CHECK(s.rho == 1.0);
        CHECK(s.theta == 1.0);
        CHECK(s.u.x == 0.0);
    }
}

TEST_CASE("plateaus are exact and the base region is untouched") {
    const double delta = 0.02;
    const WildDataSpec spec = vortex_spec(0.3, delta);
    const double xi = 0.25;  // one partition line

    // plateau samples on both plateau bands
    CHECK(wild_datum(spec, xi - 1.5 * delta, 0.3) == kSod.left);
    CHECK(wild_datum(spec, xi - 0.5 * delta, 0.9) == kSod.left);
    CHECK(wild_datum(spec, xi + 0.5 * delta, 0.1) == kSod.right);
    CHECK(wild_datum(spec, xi + 1.5 * delta, 0.7) == kSod.right);
    // jump line takes the right state
    CHECK(wild_datum(spec, xi, 0.4) == kSod.right);

    // bitwise base beyond 3*delta from every line
    for (double x : {0.0 + 3.5 * delta, 0.125, 0.25 - 3.5 * delta, 0.6, 0.9}) {
        for (double y : {0.2, 0.8}) {
            double d = 0.0;
            spec.partition.nearest_line(x, &d);
            if (std::abs(d) <= 3.0 * delta) continue;
            const PrimitiveState b = spec.base(x, y);
            CHECK(wild_datum(spec, x, y) == b);
        }
    }
}

TEST_CASE("transition annulus blends between plateau and base") {
    const double delta = 0.02;
    const WildDataSpec spec = vortex_spec(0.3, delta);
    const double xi = 0.5;
    // at 2.5 delta the quintic weight is exactly 1/2
    const double x = xi + 2.5 * delta;
    const PrimitiveState b = spec.base(x, 0.3);
    const PrimitiveState w = wild_datum(spec, x, 0.3);
    CHECK(w.rho == doctest::Approx(0.5 * (kSod.right.rho + b.rho)).epsilon(1e-14));
    CHECK(w.theta == doctest::Approx(0.5 * (kSod.right.theta + b.theta)).epsilon(1e-14));
    CHECK(smoothstep5(0.5) == 0.5);
    CHECK(smoothstep5(0.0) == 0.0);
    CHECK(smoothstep5(1.0) == 1.0);
}

TEST_CASE("band overlap is rejected") {
    WildDataSpec spec = vortex_spec(0.3, 0.05);  // 3*0.05 > 0.25/2
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    CHECK_THROWS_AS(build_wild_data(spec, 512, 8), std::invalid_argument);
}

TEST_CASE("unresolved grids are rejected") {
    const WildDataSpec spec = vortex_spec(0.3, 0.02);
    CHECK_THROWS_AS(build_wild_data(spec, 64, 8), std::invalid_argument);  // hx > delta/8
    CHECK_NOTHROW(build_wild_data(spec, 512, 8));
}

TEST_CASE("extension agrees with the surgered data outside the inner band") {
    const double delta = 1.0 / 64.0;
    const WildDataSpec spec = vortex_spec(0.3, delta);
    const TorusField wild = build_wild_data(spec, 1024, 8);
    const TorusField ext = smooth_extension(spec, 1024, 8);
    int inner = 0;
    for (int j = 0; j < wild.ny; ++j) {
        for (int i = 0; i < wild.nx; ++i) {
            double d = 0.0;
            spec.partition.nearest_line(wild.x1(i), &d);
            if (std::abs(d) < delta) {
                ++inner;
                continue;
            }
            CHECK(ext.at(i, j) == wild.at(i, j));
        }
    }
    CHECK(inner > 0);
}

TEST_CASE("extension blend midpoint and plateau equality") {
    const double delta = 0.02;
    const WildDataSpec spec = vortex_spec(0.3, delta);
    const double xi = 0.75;
    // midpoint of the inner blend is the arithmetic mean of the plateaus
    const PrimitiveState mid = extension_datum(spec, xi, 0.5);
    CHECK(mid.rho == doctest::Approx(0.5 * (kSod.left.rho + kSod.right.rho)).epsilon(1e-14));
    CHECK(mid.theta ==
          doctest::Approx(0.5 * (kSod.left.theta + kSod.right.theta)).epsilon(1e-14));
    // equal plateaus make the band constant
    const PrimitiveState c{0.9, 1.1, {0.2, 0.0}};
    WildDataSpec flat{spec.partition, delta, {c, c}, 2.0, spec.base};
    for (double off : {-0.9, -0.5, 0.0, 0.4, 0.99}) {
        const PrimitiveState v = extension_datum(flat, xi + off * delta, 0.2);
        CHECK(v == c);
    }
}

TEST_CASE("extension is C1 at the band edges under grid refinement") {
    const double delta = 1.0 / 64.0;
    const WildDataSpec spec = vortex_spec(0.3, delta);
    const double edge = 0.25 + delta;  // junction between blend and plateau
    auto mismatch = [&](double h) {
        auto f = [&](double x) { return extension_datum(spec, x, 0.37).rho; };
        const double fwd = (f(edge + h) - f(edge)) / h;
        const double bwd = (f(edge) - f(edge - h)) / h;
        return std::abs(fwd - bwd);
    };
    const double m1 = mismatch(1e-3);
    const double m2 = mismatch(5e-4);
    CHECK(m1 / m2 > 3.5);  // one-sided differences agree to O(h^2)
    // magnitude bounded by h^2/6 times the third-derivative scale of the blend
    const double d3 = 60.0 * 0.875 / std::pow(2.0 * delta, 3);
    CHECK(m2 <= 5e-4 * 5e-4 / 6.0 * d3 * 1.1);
}

TEST_CASE("jumps away from the partition lines vanish under refinement") {
    const double delta = 1.0 / 64.0;
    const WildDataSpec spec = vortex_spec(0.3, delta);
    auto off_line_jump = [&](int nx) {
        const TorusField f = build_wild_data(spec, nx, 8);
        double worst = 0.0;
        for (int j = 0; j < f.ny; ++j) {
            for (int i = 0; i < f.nx; ++i) {
                const int right = (i + 1) % f.nx;
                // skip the two cells flanking each jump line
                double d = 0.0;
                spec.partition.nearest_line((f.x1(i) + f.x1(right)) / 2.0, &d);
                if (std::abs(d) < 1.5 * f.hx()) continue;
                worst = std::max(worst, std::abs(f.at(right, j).rho - f.at(i, j).rho));
            }
        }
        return worst;
    };
    const double j1 = off_line_jump(1024);
    const double j2 = off_line_jump(2048);
    CHECK(j2 < j1);
    CHECK(j1 / j2 > 1.8);  // O(h) decay away from the jump lines
}

TEST_CASE("lq_distance basics and reference loop") {
    const WildDataSpec spec = vortex_spec(0.3, 0.02);
    const TorusField a = build_wild_data(spec, 512, 16);
    CHECK(lq_distance(a, a, 2.0) == 0.0);

    TorusField b = a;
    b.at(37, 5).rho += 0.25;
    CHECK(lq_distance(a, b, 2.0) ==
          doctest::Approx(std::sqrt(a.cell_area()) * 0.25).epsilon(1e-13));
    CHECK(lq_distance(a, b, 1.0) == doctest::Approx(a.cell_area() * 0.25).epsilon(1e-13));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.5, 1.5);
    TorusField c = a;
    for (auto& s : c.cells) s = {pos(rng), pos(rng), {pos(rng), pos(rng)}};
    CHECK(lq_distance(a, c, 2.0) == doctest::Approx(lq_reference(a, c, 2.0)).epsilon(1e-13));

    TorusField d(64, 8);
    CHECK_THROWS_AS(lq_distance(a, d, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(lq_distance(a, b, 0.5), std::invalid_argument);
}

TEST_CASE("streaming distance equals the materialized one") {
    const WildDataSpec spec = vortex_spec(0.3, 1.0 / 64.0);
    const TorusField wild = build_wild_data(spec, 512, 16);
    const TorusField base = sample_field(spec.base, 512, 16);
    CHECK(lq_distance_to_base(spec, 512, 16) ==
          doctest::Approx(lq_distance(wild, base, spec.q)).epsilon(1e-15));
}

TEST_CASE("choose_delta accepts the first rung for a trivial instance") {
    const PrimitiveState c{1.0, 1.0, {0.0, 0.0}};
    const Partition p = make_partition(0.3);
    const DeltaChoice dc =
        choose_delta(make_base_preset("constant", kGas), p, {c, c}, 2.0, 0.3, 64, 8);
    CHECK(dc.ladder_index == 0);
    CHECK(dc.delta == doctest::Approx(p.min_gap() / 8.0).epsilon(1e-15));
    CHECK(dc.distance == 0.0);
}

TEST_CASE("distance is nonincreasing along the ladder") {
    const Partition p = make_partition(0.3);
    const FieldSampler base = make_base_preset("smooth-vortex", kGas);
    const double delta0 = p.min_gap() / 8.0;
    double prev = 1e300;
    for (int k = 0; k < 6; ++k) {
        const double delta = delta0 * std::ldexp(1.0, -k);
        const WildDataSpec spec{p, delta, kSod, 2.0, base};
        const int nx = static_cast<int>(std::ceil(8.0 / delta / 4.0)) * 4;
        const double dist = lq_distance_to_base(spec, nx, 16);
        CHECK(dist <= prev + 1e-12);
        prev = dist;
    }
}

TEST_CASE("chosen delta meets the bound and survives grid refinement") {
    const Partition p = make_partition(0.3);
    const FieldSampler base = make_base_preset("smooth-vortex", kGas);
    const DeltaChoice dc = choose_delta(base, p, kSod, 2.0, 0.3, 128, 16);
    CHECK(dc.distance <= 0.3);
    const WildDataSpec spec{p, dc.delta, kSod, 2.0, base};
    const double fine = lq_distance_to_base(spec, 2 * dc.nx, 32);
    CHECK(std::abs(fine - dc.distance) <= 0.01 * dc.distance);
    CHECK(fine <= 0.3 * 1.01);
}

TEST_CASE("choose_delta reports unattainable targets") {
    const Partition p = make_partition(0.3);
    ChooseDeltaOptions opt;
    opt.max_nx = 2048;  // refuses to refine far enough
    CHECK_THROWS_WITH_AS(
        choose_delta(make_base_preset("smooth-vortex", kGas), p, kSod, 2.0, 1e-6, 64, 8, opt),
        doctest::Contains("unattainable"), std::runtime_error);
}
