#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tabfit/ipf.hpp"
#include "tabfit/table.hpp"

namespace tabfit {

enum class TransformMethod { Ipf, Nm };

// Scalar statistic evaluated on (counterfactual) tables.
using OutcomeFn = std::function<double(const ContingencyTable&)>;

enum class OutcomeStatistic { Heterogamy, Homogamy, Hypergamy, Hypogamy };

// Off-diagonal / triangle / diagonal shares of a square couples table
// (rows = husbands, columns = wives). hypergamy counts couples where the
// husband's category exceeds the wife's (below the diagonal), hypogamy the
// opposite. heterogamy = hypergamy + hypogamy, homogamy + heterogamy = 1.
struct ShareStatistics {
  double heterogamy = 0.0;
  double hypergamy = 0.0;
  double hypogamy = 0.0;
  double homogamy = 0.0;
};

double heterogamy_share(const ContingencyTable& table);
ShareStatistics share_statistics(const ContingencyTable& table);
OutcomeFn outcome_function(OutcomeStatistic which);
const char* outcome_name(OutcomeStatistic which);

// Additive decomposition of the change in an outcome statistic between two
// periods into availability (margins), preference (association) and
// interaction components. With f(A,P) = outcome of the counterfactual table
// carrying period-A margins and period-P association:
//
//   total        = f(A1,P1) - f(A0,P0)
//   availability = f(A1,P0) - f(A0,P0)
//   preference   = f(A0,P1) - f(A0,P0)
//   interaction  = total - availability - preference
struct DecompositionResult {
  double total_change = 0.0;
  double availability_effect = 0.0;
  double preference_effect = 0.0;
  double interaction_effect = 0.0;
  ContingencyTable counterfactual_a1_p0;  // period-1 margins, period-0 association
  ContingencyTable counterfactual_a0_p1;  // period-0 margins, period-1 association
  TransformMethod method = TransformMethod::Nm;
};

// The counterfactual table with the given margins and the association
// structure of preference_table. When availability already equals the
// table's own margins the table itself is returned. With the Ipf method a
// non-converged fit is an error (the counterfactual would not have the
// requested margins).
ContingencyTable counterfactual(const ContingencyTable& preference_table,
                                const MarginTargets& availability, TransformMethod method,
                                const IpfConfig& ipf_config = {});

DecompositionResult decompose(const ContingencyTable& table_0, const ContingencyTable& table_1,
                              const OutcomeFn& outcome, TransformMethod method,
                              const IpfConfig& ipf_config = {});
DecompositionResult decompose(const ContingencyTable& table_0, const ContingencyTable& table_1,
                              OutcomeStatistic outcome, TransformMethod method,
                              const IpfConfig& ipf_config = {});

// Counterfactual outcome series over a time-ordered list of tables, holding
// availability fixed at the reference year and accumulating only the
// adjacent-pair preference effects: value[reference] is the historical
// outcome; forward values add the preference effect of each adjacent
// decomposition, values before the reference subtract it.
std::vector<double> cumulative_preference_path(const std::vector<ContingencyTable>& tables,
                                               std::size_t reference_index,
                                               const OutcomeFn& outcome, TransformMethod method,
                                               const IpfConfig& ipf_config = {});

}  // namespace tabfit
