#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "tabfit/table.hpp"

namespace tabfit {

// Fixed uniform mapping used by every randomized operation in the project:
// the top 53 bits of a mt19937_64 output scaled into [0, 1). The mt19937_64
// sequence is pinned by the C++ standard, so seeded draws reproduce bit-exact
// across platforms (std::*_distribution would not).
inline double uniform53(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// A multinomial sample of `size` units from the population's cell
// distribution (with replacement), together with its provenance.
struct SampleDraw {
  ContingencyTable sample;      // integer-valued cells summing to size
  ContingencyTable population;  // the table sampled from
  std::size_t size = 0;
  std::uint64_t rng_seed = 0;
};

// Draws cell indices by inverse-CDF walk over the row-major cumulative cell
// probabilities, one uniform53 variate per unit. Deterministic given the
// seed. Batch experiments derive per-draw seeds as base_seed + draw_index.
SampleDraw draw_sample(const ContingencyTable& population, std::size_t size,
                       std::uint64_t rng_seed);

// All nonnegative integer 2x2 tables with the given integer margins, in
// ascending order of the H,H (bottom-right) cell, the natural ranking.
// With nonneg_association_only, restricted to tables whose H,H cell is at
// least the independence floor int(R). Throws when targets are not integer
// 2x2 or more than `cap` tables would be produced.
std::vector<ContingencyTable> enumerate_tables(const MarginTargets& targets,
                                               bool nonneg_association_only = false,
                                               std::size_t cap = 10000);

// Uniform selection over an enumerated set, using the project RNG pairing.
const ContingencyTable& pick_uniform(const std::vector<ContingencyTable>& tables,
                                     std::uint64_t rng_seed);

// Comparison of the two population-table estimators on one sample: the IPF
// fit of the sample onto the population margins versus the direct
// constrained-likelihood maximizer over the single free cell (1-D search).
// Free cells are reported in normalized (probability) units so the two are
// commensurable. A zero sample cell is reported, not thrown; fields that
// cannot be computed are NaN.
struct MleCheck {
  double ipf_free_cell = 0.0;
  double mle_free_cell = 0.0;
  double discrepancy = 0.0;        // |ipf_free_cell - mle_free_cell|
  bool within_tolerance = false;   // discrepancy <= 1e-5
  bool sample_has_zero_cell = false;
  std::size_t ipf_iterations = 0;
};

MleCheck mle_check(const ContingencyTable& population, const SampleDraw& draw);

}  // namespace tabfit
