#include "tabfit/decompose.hpp"

#include <cmath>
#include <sstream>

#include "tabfit/nm.hpp"

namespace tabfit {

double heterogamy_share(const ContingencyTable& table) {
  require_valid(table, "heterogamy_share");
  if (table.rows != table.cols) {
    throw DimensionError("heterogamy_share: table must be square");
  }
  double off = 0.0, total = 0.0;
  for (std::size_t r = 0; r < table.rows; ++r) {
    for (std::size_t c = 0; c < table.cols; ++c) {
      total += table.at(r, c);
      if (r != c) off += table.at(r, c);
    }
  }
  return off / total;
}

ShareStatistics share_statistics(const ContingencyTable& table) {
  require_valid(table, "share_statistics");
  if (table.rows != table.cols) {
    throw DimensionError("share_statistics: table must be square");
  }
  double total = 0.0, lower = 0.0, upper = 0.0, diag = 0.0;
  for (std::size_t r = 0; r < table.rows; ++r) {
    for (std::size_t c = 0; c < table.cols; ++c) {
      double v = table.at(r, c);
      total += v;
      if (r > c) lower += v;       // husband's category above the wife's
      else if (r < c) upper += v;  // wife's category above the husband's
      else diag += v;
    }
  }
  ShareStatistics out;
  out.hypergamy = lower / total;
  out.hypogamy = upper / total;
  out.homogamy = diag / total;
  out.heterogamy = out.hypergamy + out.hypogamy;
  return out;
}

OutcomeFn outcome_function(OutcomeStatistic which) {
  switch (which) {
    case OutcomeStatistic::Heterogamy:
      return [](const ContingencyTable& t) { return share_statistics(t).heterogamy; };
    case OutcomeStatistic::Homogamy:
      return [](const ContingencyTable& t) { return share_statistics(t).homogamy; };
    case OutcomeStatistic::Hypergamy:
      return [](const ContingencyTable& t) { return share_statistics(t).hypergamy; };
    case OutcomeStatistic::Hypogamy:
      return [](const ContingencyTable& t) { return share_statistics(t).hypogamy; };
  }
  throw DomainError("outcome_function: unknown statistic");
}

const char* outcome_name(OutcomeStatistic which) {
  switch (which) {
    case OutcomeStatistic::Heterogamy: return "heterogamy";
    case OutcomeStatistic::Homogamy: return "homogamy";
    case OutcomeStatistic::Hypergamy: return "hypergamy";
    case OutcomeStatistic::Hypogamy: return "hypogamy";
  }
  return "unknown";
}

ContingencyTable counterfactual(const ContingencyTable& preference_table,
                                const MarginTargets& availability, TransformMethod method,
                                const IpfConfig& ipf_config) {
  require_valid(preference_table, "counterfactual");
  require_valid(availability, "counterfactual");
  require_compatible(preference_table, availability, "counterfactual");

  // Same-period case: the requested margins are already the table's own.
  MarginTargets own = margins(preference_table);
  double scale = availability.grand_total();
  bool same = true;
  for (std::size_t r = 0; r < own.row_totals.size() && same; ++r) {
    same = std::abs(own.row_totals[r] - availability.row_totals[r]) <= 1e-12 * scale;
  }
  for (std::size_t c = 0; c < own.col_totals.size() && same; ++c) {
    same = std::abs(own.col_totals[c] - availability.col_totals[c]) <= 1e-12 * scale;
  }
  if (same) return preference_table;

  if (method == TransformMethod::Nm) {
    return nm_fit(preference_table, availability).table;
  }
  TransformResult result = ipf_fit(preference_table, availability, ipf_config);
  if (!result.converged) {
    std::ostringstream msg;
    msg << "counterfactual: IPF did not converge within " << ipf_config.max_iterations
        << " iterations (residual " << result.margin_residual << ")";
    throw Error(msg.str());
  }
  return result.table;
}

DecompositionResult decompose(const ContingencyTable& table_0, const ContingencyTable& table_1,
                              const OutcomeFn& outcome, TransformMethod method,
                              const IpfConfig& ipf_config) {
  require_valid(table_0, "decompose");
  require_valid(table_1, "decompose");
  if (!table_0.same_shape(table_1)) {
    throw DimensionError("decompose: tables must have the same shape");
  }

  DecompositionResult out;
  out.method = method;
  MarginTargets margins_0 = margins(table_0);
  MarginTargets margins_1 = margins(table_1);
  try {
    out.counterfactual_a1_p0 = counterfactual(table_0, margins_1, method, ipf_config);
  } catch (const Error& e) {
    throw Error(std::string("decompose: availability counterfactual g(A1,P0) failed: ") +
                e.what());
  }
  try {
    out.counterfactual_a0_p1 = counterfactual(table_1, margins_0, method, ipf_config);
  } catch (const Error& e) {
    throw Error(std::string("decompose: preference counterfactual g(A0,P1) failed: ") +
                e.what());
  }

  double f00 = outcome(table_0);
  double f11 = outcome(table_1);
  double f10 = outcome(out.counterfactual_a1_p0);
  double f01 = outcome(out.counterfactual_a0_p1);
  out.total_change = f11 - f00;
  out.availability_effect = f10 - f00;
  out.preference_effect = f01 - f00;
  out.interaction_effect = out.total_change - out.availability_effect - out.preference_effect;
  return out;
}

DecompositionResult decompose(const ContingencyTable& table_0, const ContingencyTable& table_1,
                              OutcomeStatistic outcome, TransformMethod method,
                              const IpfConfig& ipf_config) {
  return decompose(table_0, table_1, outcome_function(outcome), method, ipf_config);
}

std::vector<double> cumulative_preference_path(const std::vector<ContingencyTable>& tables,
                                               std::size_t reference_index,
                                               const OutcomeFn& outcome, TransformMethod method,
                                               const IpfConfig& ipf_config) {
  if (tables.size() < 2) {
    throw DomainError("cumulative_preference_path: need at least two tables");
  }
  if (reference_index >= tables.size()) {
    throw DomainError("cumulative_preference_path: reference index out of range");
  }
  std::vector<double> path(tables.size(), 0.0);
  path[reference_index] = outcome(tables[reference_index]);
  for (std::size_t k = reference_index; k + 1 < tables.size(); ++k) {
    DecompositionResult d = decompose(tables[k], tables[k + 1], outcome, method, ipf_config);
    path[k + 1] = path[k] + d.preference_effect;
  }
  for (std::size_t k = reference_index; k > 0; --k) {
    DecompositionResult d = decompose(tables[k - 1], tables[k], outcome, method, ipf_config);
    path[k - 1] = path[k] - d.preference_effect;
  }
  return path;
}

}  // namespace tabfit
