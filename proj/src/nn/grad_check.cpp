#include "newsclf/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "newsclf/util/rng.hpp"

namespace newsclf::nn {

double grad_check(const LossFn& f, ParamSet& params, const GradCheckOptions& options) {
  params.zero_grads();
  const double base = f(params, true);
  if (!std::isfinite(base)) fail(ErrorCode::NonFiniteValue, "loss is not finite");

  std::vector<Tensor> analytic;
  analytic.reserve(static_cast<std::size_t>(params.count()));
  for (int i = 0; i < params.count(); ++i) {
    for (float g : params.entry(i).grad.data)
      if (!std::isfinite(g)) fail(ErrorCode::NonFiniteValue, "gradient is not finite");
    analytic.push_back(params.entry(i).grad);
  }

  const double quantum =
      static_cast<double>(std::abs(static_cast<float>(base)) *
                          std::numeric_limits<float>::epsilon()) /
      (2.0 * static_cast<double>(options.eps));
  const double floor = options.noise_floor_multiple * std::max(quantum, 1e-12);

  double worst = 0.0;
  Rng rng(options.seed);
  for (int i = 0; i < params.count(); ++i) {
    ParamSet::Entry& entry = params.entry(i);
    const std::size_t n = entry.value.data.size();
    if (n == 0) continue;
    const std::size_t samples = std::min<std::size_t>(
        static_cast<std::size_t>(std::max(options.coords_per_tensor, 1)), n);
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t k = static_cast<std::size_t>(rng.below(n));
      const float saved = entry.value.data[k];
      entry.value.data[k] = saved + options.eps;
      const double plus = f(params, false);
      entry.value.data[k] = saved - options.eps;
      const double minus = f(params, false);
      entry.value.data[k] = saved;
      if (!std::isfinite(plus) || !std::isfinite(minus))
        fail(ErrorCode::NonFiniteValue, "perturbed loss is not finite");
      const double numeric = (plus - minus) / (2.0 * static_cast<double>(options.eps));
      const double a = static_cast<double>(analytic[static_cast<std::size_t>(i)].data[k]);
      if (std::abs(a) + std::abs(numeric) < floor) continue;
      const double slope_up = (plus - base) / static_cast<double>(options.eps);
      const double slope_down = (base - minus) / static_cast<double>(options.eps);
      const double disagree = std::abs(slope_up - slope_down);
      if (disagree > floor &&
          disagree > options.kink_ratio * (std::abs(slope_up) + std::abs(slope_down)))
        continue;
      const double scale = std::max(1e-8, std::abs(a) + std::abs(numeric));
      worst = std::max(worst, std::abs(a - numeric) / scale);
    }
  }
  return worst;
}

}  // namespace newsclf::nn
