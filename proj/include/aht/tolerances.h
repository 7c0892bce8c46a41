#pragma once

namespace aht {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  double equality = 1e-10;       // operator equality, max-norm
  double unitarity = 1e-12;      // asserted-by-constructor unitarity
  double hermiticity = 1e-12;    // asserted-by-constructor hermiticity
  double unitary_check = 1e-10;  // precondition checks on caller-supplied unitaries
  double branch_cut = 1e-8;      // distance of an eigenphase from +-pi
  double rank = 1e-8;            // singular-value / residual novelty threshold
  double group_grid = 1e-8;      // rounding grid for phase-insensitive hashing
  double weights_sum = 1e-12;    // sum of relative durations
};

inline constexpr Tolerances kTol{};

}  // namespace aht
