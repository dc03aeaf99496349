#pragma once

#include <random>

#include "orb/numerics/affine.hpp"

namespace orb {

using Rng = std::mt19937_64;

// A point of the open ball with coordinates in Q(zeta_m), small denominators.
// Conductor 0/1/2 gives real coordinates. Falls back to the centre.
Vec sample_in_ball(const Ball& b, int conductor, Rng& rng);

// A point on a small circle around c (for generic points near a centre).
Vec sample_near(const Vec& c, const Rational& scale, int conductor, Rng& rng);

}  // namespace orb
