#include "tabfit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tabfit/ipf.hpp"

namespace tabfit {

SampleDraw draw_sample(const ContingencyTable& population, std::size_t size,
                       std::uint64_t rng_seed) {
  require_valid(population, "draw_sample");
  if (size < 1) throw DomainError("draw_sample: size must be >= 1");

  std::size_t n_cells = population.cells.size();
  double total = population.grand_total();
  std::vector<double> cumulative(n_cells);
  double acc = 0.0;
  for (std::size_t k = 0; k < n_cells; ++k) {
    acc += population.cells[k] / total;
    cumulative[k] = acc;
  }

  std::vector<double> counts(n_cells, 0.0);
  std::mt19937_64 gen(rng_seed);
  for (std::size_t unit = 0; unit < size; ++unit) {
    double u = uniform53(gen);
    std::size_t idx = n_cells - 1;  // catches u at/above the last partial sum
    for (std::size_t k = 0; k < n_cells; ++k) {
      if (u < cumulative[k]) {
        idx = k;
        break;
      }
    }
    counts[idx] += 1.0;
  }

  SampleDraw draw;
  draw.sample = ContingencyTable(population.rows, population.cols, std::move(counts));
  draw.sample.row_labels = population.row_labels;
  draw.sample.col_labels = population.col_labels;
  draw.population = population;
  draw.size = size;
  draw.rng_seed = rng_seed;
  return draw;
}

std::vector<ContingencyTable> enumerate_tables(const MarginTargets& targets,
                                               bool nonneg_association_only, std::size_t cap) {
  require_valid(targets, "enumerate_tables");
  if (targets.row_totals.size() != 2 || targets.col_totals.size() != 2) {
    throw DimensionError("enumerate_tables: targets must be 2x2");
  }
  double vals[4] = {targets.row_totals[0], targets.row_totals[1], targets.col_totals[0],
                    targets.col_totals[1]};
  for (double v : vals) {
    if (std::abs(v - std::round(v)) > 1e-9) {
      throw DomainError("enumerate_tables: targets must be integers");
    }
    if (v > 1e9) {
      throw DomainError("enumerate_tables: margins too large to enumerate");
    }
  }
  long long r1 = std::llround(vals[0]), r2 = std::llround(vals[1]);
  long long c1 = std::llround(vals[2]), c2 = std::llround(vals[3]);
  long long n = r1 + r2;
  if (n != c1 + c2) throw DomainError("enumerate_tables: margin totals disagree");

  // Feasible H,H (bottom-right) cells run from max(0, r2 + c2 - n) to
  // min(r2, c2); the other three cells follow from the margins.
  long long lo = std::max(0LL, r2 + c2 - n);
  long long hi = std::min(r2, c2);
  if (nonneg_association_only) {
    long long int_r = static_cast<long long>(r2 * c2 / n);  // floor for nonnegative ints
    lo = std::max(lo, int_r);
  }
  if (hi < lo) return {};
  if (static_cast<unsigned long long>(hi - lo + 1) > cap) {
    std::ostringstream msg;
    msg << "enumerate_tables: " << (hi - lo + 1) << " tables exceed the cap of " << cap;
    throw DomainError(msg.str());
  }

  std::vector<ContingencyTable> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long long hh = lo; hh <= hi; ++hh) {
    double n21 = static_cast<double>(r2 - hh);
    double n12 = static_cast<double>(c2 - hh);
    double n11 = static_cast<double>(r1 - (c2 - hh));
    out.push_back(ContingencyTable(2, 2, {n11, n12, n21, static_cast<double>(hh)}));
  }
  return out;
}

const ContingencyTable& pick_uniform(const std::vector<ContingencyTable>& tables,
                                     std::uint64_t rng_seed) {
  if (tables.empty()) throw DomainError("pick_uniform: empty table set");
  std::mt19937_64 gen(rng_seed);
  double u = uniform53(gen);
  std::size_t idx = static_cast<std::size_t>(u * static_cast<double>(tables.size()));
  if (idx >= tables.size()) idx = tables.size() - 1;
  return tables[idx];
}

namespace {

// Golden-section maximizer for a unimodal function on [lo, hi]. Function
// evaluations only; accuracy is limited by the objective's flatness near the
// peak (~1e-8 here), well inside the 1e-5 reporting tolerance.
template <typename F>
double golden_section_max(F f, double lo, double hi) {
  const double inv_phi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

MleCheck mle_check(const ContingencyTable& population, const SampleDraw& draw) {
  require_valid(population, "mle_check");
  require_valid(draw.sample, "mle_check");
  if (population.rows != 2 || population.cols != 2 || draw.sample.rows != 2 ||
      draw.sample.cols != 2) {
    throw DimensionError("mle_check: population and sample must be 2x2");
  }

  MleCheck out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.ipf_free_cell = nan;
  out.mle_free_cell = nan;
  out.discrepancy = nan;
  for (double v : draw.sample.cells) {
    if (v == 0.0) out.sample_has_zero_cell = true;
  }

  MarginTargets pop_margins = margins(population);
  double pop_total = pop_margins.grand_total();

  try {
    IpfConfig config;
    TransformResult fit = ipf_fit(draw.sample, pop_margins, config);
    out.ipf_iterations = fit.iterations;
    if (fit.converged) out.ipf_free_cell = fit.table.at(0, 0) / pop_total;
  } catch (const Error&) {
    // zero-pattern infeasibility; reported via the NaN field and the flag
  }

  // Likelihood of the sample counts over tables with the population margins,
  // parameterized by the normalized free cell t:
  //   p(t) = (t, rA - t, cT - t, 1 - rA - cT + t)
  //   log L(t) = sum_k n_k * ln p_k(t)
  // Concave in t; maximized by golden section inside the feasibility bracket.
  double r_a = pop_margins.row_totals[0] / pop_total;
  double c_t = pop_margins.col_totals[0] / pop_total;
  double lo = std::max(0.0, r_a + c_t - 1.0);
  double hi = std::min(r_a, c_t);
  if (hi > lo) {
    const std::vector<double>& counts = draw.sample.cells;
    auto log_lik = [&](double t) {
      double p[4] = {t, r_a - t, c_t - t, 1.0 - r_a - c_t + t};
      double sum = 0.0;
      for (int k = 0; k < 4; ++k) {
        if (counts[k] == 0.0) continue;
        if (p[k] <= 0.0) return -std::numeric_limits<double>::infinity();
        sum += counts[k] * std::log(p[k]);
      }
      return sum;
    };
    double width = hi - lo;
    out.mle_free_cell = golden_section_max(log_lik, lo + 1e-12 * width, hi - 1e-12 * width);
  }

  if (std::isfinite(out.ipf_free_cell) && std::isfinite(out.mle_free_cell)) {
    out.discrepancy = std::abs(out.ipf_free_cell - out.mle_free_cell);
    out.within_tolerance = out.discrepancy <= 1e-5;
  }
  return out;
}

}  // namespace tabfit
