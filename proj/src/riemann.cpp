#include "wild/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wild/errors.hpp"

namespace wild {

namespace {

// One side of the star equation: f(p) is the velocity change across the
// wave connecting the side state to star pressure p (Toro's notation).
struct Side {
    double rho, p, u1, c, gamma;

    double f(double ps) const {
        if (ps > p) {  // shock branch
            const double A = 2.0 / ((gamma + 1.0) * rho);
            const double B = (gamma - 1.0) / (gamma + 1.0) * p;
            return (ps - p) * std::sqrt(A / (ps + B));
        }
        // rarefaction branch
        return 2.0 * c / (gamma - 1.0) *
               (std::pow(ps / p, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
    }

    double df(double ps) const {
        if (ps > p) {
            const double A = 2.0 / ((gamma + 1.0) * rho);
            const double B = (gamma - 1.0) / (gamma + 1.0) * p;
            const double root = std::sqrt(A / (ps + B));
            return root * (1.0 - 0.5 * (ps - p) / (B + ps));
        }
        return 1.0 / (rho * c) * std::pow(ps / p, -(gamma + 1.0) / (2.0 * gamma));
    }

    // density behind the wave at star pressure ps
    double star_rho(double ps) const {
        const double r = ps / p;
        if (ps > p) {
            const double mu2 = (gamma - 1.0) / (gamma + 1.0);
            return rho * (r + mu2) / (mu2 * r + 1.0);
        }
        return rho * std::pow(r, 1.0 / gamma);
    }
};

}  // namespace

WaveFan solve_fan(const RiemannData& d, const ThermoParams& tp, const SolveOptions& opt) {
    d.validate();
    tp.validate();
    const double gamma = tp.gamma();

    WaveFan fan;
    fan.data = d;
    fan.params = tp;

    const Side L{d.left.rho, pressure(d.left), d.left.u.x, sound_speed(d.left, tp), gamma};
    const Side R{d.right.rho, pressure(d.right), d.right.u.x, sound_speed(d.right, tp), gamma};
    const double du = R.u1 - L.u1;

    // Pressure positivity: the two-rarefaction curve must reach p -> 0+.
    if (2.0 * (L.c + R.c) / (gamma - 1.0) <= du)
        throw VacuumError("solve_fan: vacuum formation, data admit no positive star pressure");

    auto fn = [&](double ps) { return L.f(ps) + R.f(ps) + du; };

    // Bracket the root; fn is monotone increasing and fn(0+) < 0.
    double lo = 1e-14 * std::min(L.p, R.p);
    double hi = std::max(L.p, R.p);
    while (fn(hi) < 0.0) {
        hi *= 4.0;
        if (hi > 1e300)
            throw RootFindError("solve_fan: failed to bracket the star pressure from above");
    }

    double ps = 0.5 * (L.p + R.p);
    ps = std::clamp(ps, lo, hi);
    std::ostringstream trace;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        const double val = fn(ps);
        if (val > 0.0)
            hi = ps;
        else
            lo = ps;
        const double der = L.df(ps) + R.df(ps);
        double next = ps - val / der;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
        const double change = std::abs(next - ps);
        trace << " it=" << it << " p=" << ps << " f=" << val;
        ps = next;
        if (change <= opt.tol * ps) break;
    }
    if (it >= opt.max_iter)
        throw RootFindError("solve_fan: star pressure iteration did not converge; trace:" +
                            trace.str());
    fan.iterations = it + 1;
    fan.p_star = ps;
    fan.u_star = 0.5 * (L.u1 + R.u1) + 0.5 * (R.f(ps) - L.f(ps));

    fan.star_left = {L.star_rho(ps), ps / L.star_rho(ps), {fan.u_star, d.left.u.y}};
    fan.star_right = {R.star_rho(ps), ps / R.star_rho(ps), {fan.u_star, d.right.u.y}};

    // Wave strengths below 1e-12 relative are reported as no wave at all.
    const double strength_tol = 1e-12;
    auto classify = [&](const Side& s, bool is_left) {
        Wave w;
        const double r = ps / s.p;
        if (std::abs(r - 1.0) <= strength_tol) {
            w.kind = WaveKind::none;
            return w;
        }
        const double sgn = is_left ? -1.0 : 1.0;
        if (r > 1.0) {
            w.kind = WaveKind::shock;
            const double q = std::sqrt((gamma + 1.0) / (2.0 * gamma) * r +
                                       (gamma - 1.0) / (2.0 * gamma));
            w.head = w.tail = s.u1 + sgn * s.c * q;
        } else {
            w.kind = WaveKind::rarefaction;
            const double c_star = s.c * std::pow(r, (gamma - 1.0) / (2.0 * gamma));
            const double head = s.u1 + sgn * s.c;
            const double tail = fan.u_star + sgn * c_star;
            w.head = is_left ? head : tail;
            w.tail = is_left ? tail : head;
        }
        return w;
    };
    fan.left_wave = classify(L, true);
    fan.right_wave = classify(R, false);

    double lam = 0.0;
    for (const Wave& w : {fan.left_wave, fan.right_wave}) {
        if (w.kind == WaveKind::none) continue;
        lam = std::max({lam, std::abs(w.head), std::abs(w.tail)});
    }
    if (fan.left_wave.kind == WaveKind::none && fan.right_wave.kind == WaveKind::none) {
        // constant fan convention: sound speed plus |u1| bounds the cone
        lam = std::max(std::abs(L.u1) + L.c, std::abs(R.u1) + R.c);
    }
    fan.lambda = lam;
    return fan;
}

PrimitiveState sample_fan(const WaveFan& f, double xi) {
    const double gamma = f.params.gamma();

    // left of the left wave
    const Wave& lw = f.left_wave;
    if (lw.kind != WaveKind::none) {
        if (xi < lw.head) return f.data.left;
        if (lw.kind == WaveKind::rarefaction && xi < lw.tail) {
            const PrimitiveState& s = f.data.left;
            const double c0 = sound_speed(s, f.params);
            const double c = 2.0 / (gamma + 1.0) * (c0 + 0.5 * (gamma - 1.0) * (s.u.x - xi));
            const double u1 = xi + c;  // characteristic relation xi = u1 - c
            const double rho = s.rho * std::pow(c / c0, 2.0 / (gamma - 1.0));
            const double p = pressure(s) * std::pow(c / c0, 2.0 * gamma / (gamma - 1.0));
            return {rho, p / rho, {u1, s.u.y}};
        }
    } else if (xi < f.u_star) {
        return f.data.left;
    }

    if (lw.kind != WaveKind::none && xi < f.u_star) return f.star_left;

    const Wave& rw = f.right_wave;
    if (rw.kind == WaveKind::none) return f.data.right;
    if (xi < rw.head) return f.star_right;
    if (rw.kind == WaveKind::rarefaction && xi < rw.tail) {
        const PrimitiveState& s = f.data.right;
        const double c0 = sound_speed(s, f.params);
        const double c = 2.0 / (gamma + 1.0) * (c0 - 0.5 * (gamma - 1.0) * (s.u.x - xi));
        const double u1 = xi - c;  // xi = u1 + c
        const double rho = s.rho * std::pow(c / c0, 2.0 / (gamma - 1.0));
        const double p = pressure(s) * std::pow(c / c0, 2.0 * gamma / (gamma - 1.0));
        return {rho, p / rho, {u1, s.u.y}};
    }
    return f.data.right;
}

}  // namespace wild
