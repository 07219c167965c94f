#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "tabfit/errors.hpp"
#include "tabfit/survey.hpp"

using namespace tabfit;

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TEST_SUITE("survey") {

TEST_CASE("normal quantile matches high-precision references to 1e-9") {
  // Reference values computed with an independent implementation.
  const struct { double p, q; } ref[] = {
      {1e-10, -6.361340902404056},
      {1e-06, -4.753424308822899},
      {0.001, -3.090232306167813},
      {0.025, -1.9599639845400545},
      {0.1, -1.2815515655446004},
      {0.3, -0.5244005127080409},
      {0.5, 0.0},
      {0.7, 0.5244005127080407},
      {0.9, 1.2815515655446004},
      {0.975, 1.959963984540054},
      {0.999, 3.090232306167813},
      {0.999999, 4.753424308817087},
      {0.9999999999, 6.361340889697422},
  };
  for (const auto& point : ref) {
    CHECK(std::abs(normal_quantile(point.p) - point.q) <= 1e-9);
  }
}

TEST_CASE("normal quantile is antisymmetric and inverts the normal cdf") {
  // Dyadic p keeps 1 - p exactly representable, so the symmetry of the
  // rational approximation itself is what gets measured, not rounding of 1 - p.
  for (double p : {0x1.0p-20, 0x1.0p-8, 0.03125, 0.125, 0.25, 0.4375}) {
    CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-15));
  }
  // For arbitrary p the subtraction 1 - p rounds, and that half-ulp input
  // error is amplified by 1/density near the tails; a billionth is the
  // realistic bound there.
  for (double p : {1e-8, 1e-4, 0.01, 0.2, 0.4, 0.45}) {
    CHECK(std::abs(normal_quantile(p) + normal_quantile(1.0 - p)) <= 4e-9);
  }
  for (double p : {0.001, 0.05, 0.25, 0.5, 0.75, 0.95, 0.999}) {
    CHECK(std::abs(normal_cdf(normal_quantile(p)) - p) <= 1e-12);
  }
}

TEST_CASE("normal quantile rejects p outside (0,1)") {
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(-0.2), DomainError);
  CHECK_THROWS_AS(normal_quantile(std::nan("")), DomainError);
}

TEST_CASE("the adjusted estimate for x=10, n=100 at 95%") {
  ProportionEstimate e = agresti_coull(10, 100);
  CHECK(e.z == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(e.estimate == doctest::Approx(0.11479739928279427).epsilon(1e-12));
  CHECK(e.half_width == doctest::Approx(0.06131264699395294).epsilon(1e-12));
  CHECK(e.lower == doctest::Approx(e.estimate - e.half_width));
  CHECK(e.upper == doctest::Approx(e.estimate + e.half_width));
  CHECK(e.x == 10);
  CHECK(e.n == 100);
  CHECK(e.alpha == 0.05);
}

TEST_CASE("the raw-share width variant") {
  ProportionEstimate e = agresti_coull(10, 100, 0.05, true);
  CHECK(e.estimate == doctest::Approx(0.11479739928279427).epsilon(1e-12));
  CHECK(e.half_width == doctest::Approx(0.057701081780402626).epsilon(1e-12));
}

TEST_CASE("a 99% interval is wider than a 95% interval") {
  ProportionEstimate wide = agresti_coull(10, 100, 0.01);
  CHECK(wide.z == doctest::Approx(2.5758293035489004).epsilon(1e-12));
  CHECK(wide.estimate == doctest::Approx(0.1248882750863292).epsilon(1e-12));
  CHECK(wide.half_width == doctest::Approx(0.0824631629367224).epsilon(1e-12));
  CHECK(wide.half_width > agresti_coull(10, 100, 0.05).half_width);
}

TEST_CASE("x = n/2 gives exactly one half") {
  CHECK(agresti_coull(50, 100).estimate == 0.5);
  CHECK(agresti_coull(2, 4).estimate == 0.5);
}

TEST_CASE("zero and full counts shrink the estimate away from the boundary") {
  ProportionEstimate none = agresti_coull(0, 25);
  CHECK(none.estimate == doctest::Approx(0.06659612546952424).epsilon(1e-12));
  CHECK(none.half_width == doctest::Approx(0.09099106753621995).epsilon(1e-12));
  CHECK(none.lower == 0.0);  // clipped at the unit interval
  CHECK(none.upper == doctest::Approx(0.1575871930057442).epsilon(1e-12));
  ProportionEstimate all = agresti_coull(25, 25);
  CHECK(all.estimate == doctest::Approx(1.0 - none.estimate).epsilon(1e-12));
  CHECK(all.upper == 1.0);
  CHECK(all.lower == doctest::Approx(1.0 - none.upper).epsilon(1e-12));
}

TEST_CASE("estimate is monotone in x and the width peaks at the middle") {
  double previous = -1.0;
  for (std::int64_t x = 0; x <= 20; ++x) {
    ProportionEstimate e = agresti_coull(x, 20);
    CHECK(e.estimate > previous);
    previous = e.estimate;
  }
  CHECK(agresti_coull(10, 20).half_width > agresti_coull(1, 20).half_width);
  CHECK(agresti_coull(10, 20).half_width > agresti_coull(19, 20).half_width);
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(agresti_coull(1, 0), DomainError);
  CHECK_THROWS_AS(agresti_coull(-1, 10), DomainError);
  CHECK_THROWS_AS(agresti_coull(11, 10), DomainError);
  CHECK_THROWS_AS(agresti_coull(5, 10, 0.0), DomainError);
  CHECK_THROWS_AS(agresti_coull(5, 10, 1.0), DomainError);
}

}  // TEST_SUITE
