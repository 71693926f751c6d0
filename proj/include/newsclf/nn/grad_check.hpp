#pragma once

#include <cstdint>
#include <functional>

#include "newsclf/nn/params.hpp"

namespace newsclf::nn {

// A loss evaluation: runs forward (and backward when accumulate_grads) over
// the current parameter values and returns the scalar loss.
using LossFn = std::function<double(ParamSet&, bool accumulate_grads)>;

struct GradCheckOptions {
  float eps = 1e-3f;
  int coords_per_tensor = 4;
  std::uint64_t seed = 1;
  // Multiple of the finite-difference resolution ulp(|loss|) / (2 eps) under
  // which a coordinate is unresolvable in 32-bit floats. Coordinates with
  // |analytic| + |numeric| below the floor are skipped; a healthy value on
  // either side clears it, so missing gradient paths still score. Measured
  // difference noise stays near one resolution unit, so a scored coordinate
  // at the floor keeps its relative error under 1/128.
  double noise_floor_multiple = 128.0;
  // When the eps window straddles a non-smooth point (a relu switching on or
  // off), the two one-sided slopes disagree and the central difference does
  // not estimate the local derivative. A coordinate is skipped when
  // |slope_up - slope_down| exceeds this fraction of |slope_up| +
  // |slope_down| and also clears the noise floor, so noise-level slopes never
  // count as kinks and a wrong analytic gradient at a smooth point still
  // scores.
  double kink_ratio = 0.25;
};

// Central-difference check of the tape gradients: returns the max over the
// sampled resolvable coordinates of |analytic - numeric| / max(1e-8,
// |analytic| + |numeric|). Coordinates where both sides are exactly zero
// score 0.
//
// Throws NonFiniteValue when any loss or gradient is non-finite.
double grad_check(const LossFn& f, ParamSet& params, const GradCheckOptions& options = {});

}  // namespace newsclf::nn
