#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "steiner/poly.hpp"

namespace steiner {

using Complex = std::complex<double>;

struct NewtonOptions {
  int restarts = 100;
  int max_iterations = 500;
  double damping = 0.5;       // step shrink factor when the residual grows
  double tolerance = 1e-10;   // max-norm residual at a unit-norm point
  std::uint64_t seed = 1;
};

struct NewtonResult {
  bool found = false;
  std::vector<Complex> point;  // unit 2-norm when found
  double residual = 0.0;       // best unit-scale residual seen
  int restarts_used = 0;
  int iterations = 0;
};

/// max_r |f_r(x)| with x scaled to unit 2-norm.
double unit_residual(const std::vector<HomogeneousForm>& forms, const std::vector<Complex>& x);

/*
 * Search for a common projective zero of n forms in n variables.
 *
 * Gauss-Newton on the affine chart x_c = 1, where the chart coordinate c
 * rotates across restarts. Not finding a zero says nothing about existence.
 */
NewtonResult newton_nullvector(const std::vector<HomogeneousForm>& forms, const NewtonOptions& options = {});

}  // namespace steiner
