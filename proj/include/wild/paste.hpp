#pragma once

// Pasting: translate exact Riemann fans to the partition lines and splice
// them into the smooth trajectory on the fan bands |x1 - x^i| <= 7/4 delta.

#include <vector>

#include "wild/evolve.hpp"
#include "wild/field.hpp"
#include "wild/riemann.hpp"
#include "wild/surgery.hpp"

namespace wild {

// Pointwise assembly: smooth trajectory outside the bands, translated fan
// samples inside (at the band boundary the fan branch wins). At t = 0 the
// fan branch degenerates to its own left/right data. One fan per partition
// line. Output restricted to snapshot times <= horizon.t().
SpaceTimeField assemble(const SpaceTimeField& traj, const std::vector<WaveFan>& fans,
                        const Partition& partition, double delta, const Horizon& horizon);

// Same assembly, but line i_star (1-based) is pinned to its self-similar fan
// and the result is flagged so the verifier demands strictly positive total
// entropy production. The fan at i_star must contain a shock.
SpaceTimeField assemble_entropy_producing(const SpaceTimeField& traj,
                                          const std::vector<WaveFan>& fans,
                                          const Partition& partition, double delta,
                                          const Horizon& horizon, int i_star);

// Sup over snapshots and overlap-band cells (5/4 delta <= |x1 - x^i| <= 7/4
// delta) of the componentwise difference between the smooth branch and the
// fan branch.
double overlap_consistency(const SpaceTimeField& traj, const std::vector<WaveFan>& fans,
                           const Partition& partition, double delta, const Horizon& horizon);

// True iff the two fields differ by more than `threshold` in some component
// at some snapshot with time < tau and some cell inside the ball.
bool distinct_on_ball(const SpaceTimeField& a, const SpaceTimeField& b, const Ball& ball,
                      double tau, double threshold = 1e-10);

}  // namespace wild
