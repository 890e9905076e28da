#pragma once

#include <cstdint>
#include <vector>

#include "incgeo/body.hpp"

namespace incgeo {

double unit_ball_volume(int n);  // pi in 2D, 4*pi/3 in 3D

// Ambient n-volume. Exact for polytopes and ellipsoids; flat bodies give 0.
double volume(const Body& K);

// k-volume inside the affine hull (segment length, planar area, ...). A
// single point gets the counting measure 1.
double intrinsic_measure(const Body& K);

// Boundary measure: perimeter in 2D, facet area in 3D, both sides for flat
// bodies. Exact for polytopes and balls; other ellipsoids are measured on an
// inscribed polytopal sample (an estimate).
double surface_area(const Body& K);

// Mixed volume V(K_1, ..., K_n), arity = ambient dimension, normalized so
// V(K, ..., K) = volume(K). Computed by polarization of the volume over
// Minkowski sums; V-polytope operands only.
double mixed_volume(const std::vector<Body>& bodies);

// Planar shortcut (|K+L| - |K| - |L|) / 2; agrees with mixed_volume({K, L})
// without the polarization detour. V-polytopes in the plane only.
double mixed_area(const Body& K, const Body& L);

// W_0..W_n with W_0 = volume, W_n = unit ball volume; Steiner expansion
// |K + rB| = sum_j binom(n,j) W_j r^j. Exact for full-dimensional polytopes,
// flat 2D bodies, and balls; other ellipsoids via a polytopal sample.
std::vector<double> quermassintegrals(const Body& K);

// |K + t * (unit ball)| evaluated from the Steiner coefficients, t >= 0.
double steiner_volume(const Body& K, double t);

struct McEstimate {
  double value = 0.0;
  double stderr_est = 0.0;
  std::size_t samples = 0;
};

// Rejection sampling in the support bounding box; stderr is the binomial
// one-sigma band scaled by the box volume.
McEstimate mc_volume(const Body& K, std::size_t n_samples, std::uint64_t seed);

// Monte Carlo volume of the outer parallel body K + t * (unit ball).
McEstimate mc_outer_volume(const Body& K, double t, std::size_t n_samples, std::uint64_t seed);

}  // namespace incgeo
