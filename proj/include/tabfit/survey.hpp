#pragma once

#include <cstdint>

namespace tabfit {

// Inverse standard-normal CDF (quantile), accurate to well under 1e-9
// absolute across (1e-10, 1 - 1e-10). Throws DomainError outside (0, 1).
double normal_quantile(double p);

// Agresti-Coull point estimate and symmetric interval for a binomial share.
struct ProportionEstimate {
  double estimate = 0.0;    // (x + z^2/2) / (n + z^2), strictly inside (0,1)
  double half_width = 0.0;  // z * sqrt(p(1-p) / (n + z^2))
  double lower = 0.0;       // max(0, estimate - half_width)
  double upper = 0.0;       // min(1, estimate + half_width)
  std::int64_t x = 0;
  std::int64_t n = 0;
  double alpha = 0.05;
  double z = 0.0;  // normal_quantile(1 - alpha/2)
};

// The p inside the half-width square root defaults to the adjusted estimate;
// width_uses_raw_share switches it to the raw share x/n.
ProportionEstimate agresti_coull(std::int64_t x, std::int64_t n, double alpha = 0.05,
                                 bool width_uses_raw_share = false);

}  // namespace tabfit
