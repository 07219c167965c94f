#include "tabfit/survey.hpp"

#include <cmath>
#include <sstream>

#include "tabfit/errors.hpp"

namespace tabfit {

// Wichura's algorithm AS 241 (PPND16): rational approximations for the
// normal quantile on a central interval and two tail regimes, good to about
// double precision.
double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    std::ostringstream msg;
    msg << "normal_quantile: p must be in (0,1), got " << p;
    throw DomainError(msg.str());
  }

  static const double a[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4,  4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4,  2.5090809287301226727e3};
  static const double b[8] = {
      1.0,                      4.2313330701600911252e1, 6.8718700749205790830e2,
      5.3941960214247511077e3,  2.1213794301586595867e4, 3.9307895800092710610e4,
      2.8729085735721942674e4,  5.2264952788528545610e3};
  static const double c[8] = {
      1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static const double d[8] = {
      1.0,                       2.05319162663775882187e0, 1.67638483018380384940e0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static const double e[8] = {
      6.65790464350110377720e0,  5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static const double f[8] = {
      1.0,                       5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  auto rational = [](const double* num, const double* den, double r) {
    double top = num[7], bot = den[7];
    for (int k = 6; k >= 0; --k) {
      top = top * r + num[k];
      bot = bot * r + den[k];
    }
    return top / bot;
  };

  double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    double r = 0.180625 - q * q;
    return q * rational(a, b, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    value = rational(c, d, r - 1.6);
  } else {
    value = rational(e, f, r - 5.0);
  }
  return q < 0.0 ? -value : value;
}

ProportionEstimate agresti_coull(std::int64_t x, std::int64_t n, double alpha,
                                 bool width_uses_raw_share) {
  if (n < 1) throw DomainError("agresti_coull: n must be >= 1");
  if (x < 0 || x > n) {
    std::ostringstream msg;
    msg << "agresti_coull: x must be in [0, n], got x = " << x << ", n = " << n;
    throw DomainError(msg.str());
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw DomainError("agresti_coull: alpha must be in (0,1)");
  }

  ProportionEstimate out;
  out.x = x;
  out.n = n;
  out.alpha = alpha;
  out.z = normal_quantile(1.0 - alpha / 2.0);
  double z2 = out.z * out.z;
  double n_adj = static_cast<double>(n) + z2;
  out.estimate = (static_cast<double>(x) + z2 / 2.0) / n_adj;
  double p_width = width_uses_raw_share ? static_cast<double>(x) / static_cast<double>(n)
                                        : out.estimate;
  out.half_width = out.z * std::sqrt(p_width * (1.0 - p_width) / n_adj);
  out.lower = std::max(0.0, out.estimate - out.half_width);
  out.upper = std::min(1.0, out.estimate + out.half_width);
  return out;
}

}  // namespace tabfit
