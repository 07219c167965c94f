// tabfit: contingency-table transforms (IPF and the rank-preserving NM
// method), sorting indicators, counterfactual decompositions, binomial
// survey estimates and sampling experiments over CSV tables.
//
// Data goes to stdout, diagnostics to stderr; exit status is nonzero on any
// error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tabfit/csv.hpp"
#include "tabfit/decompose.hpp"
#include "tabfit/indicators.hpp"
#include "tabfit/ipf.hpp"
#include "tabfit/nm.hpp"
#include "tabfit/sim.hpp"
#include "tabfit/survey.hpp"
#include "tabfit/table.hpp"

namespace {

using nlohmann::json;
using namespace tabfit;

json table_to_json(const ContingencyTable& table) {
  json cells = json::array();
  for (std::size_t r = 0; r < table.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < table.cols; ++c) row.push_back(table.at(r, c));
    cells.push_back(row);
  }
  json out = {{"rows", table.rows}, {"cols", table.cols}, {"cells", cells}};
  if (!table.row_labels.empty()) out["row_labels"] = table.row_labels;
  if (!table.col_labels.empty()) out["col_labels"] = table.col_labels;
  return out;
}

json ll_matrix_to_json(const LLMatrix& ll) {
  json values = json::array();
  for (std::size_t i = 1; i <= ll.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 1; j <= ll.cols; ++j) row.push_back(ll.at(i, j).value);
    values.push_back(row);
  }
  return values;
}

MarginTargets targets_from_options(const std::string& targets_path, const std::string& rows_list,
                                   const std::string& cols_list) {
  if (!targets_path.empty()) {
    if (!rows_list.empty() || !cols_list.empty()) {
      throw DomainError("give either --targets or --rows/--cols, not both");
    }
    return margins(read_table_csv_file(targets_path));
  }
  if (rows_list.empty() || cols_list.empty()) {
    throw DomainError("targets required: --targets table.csv or --rows a,b --cols c,d");
  }
  MarginTargets targets;
  targets.row_totals = parse_number_list(rows_list);
  targets.col_totals = parse_number_list(cols_list);
  require_valid(targets, "targets");
  return targets;
}

void print_transform_diagnostics(const TransformResult& result, const std::string& method) {
  std::cerr << "method: " << method << "\n"
            << "iterations: " << result.iterations << "\n"
            << "margin_residual: " << result.margin_residual << "\n"
            << "converged: " << (result.converged ? "true" : "false") << "\n";
  const PreservedDiagnostics& d = result.preserved;
  if (d.seed_odds_ratio && d.output_odds_ratio) {
    std::cerr << "odds_ratio: seed " << *d.seed_odds_ratio << ", output "
              << *d.output_odds_ratio << "\n";
  }
  if (d.seed_ll && d.output_ll) {
    for (std::size_t i = 1; i <= d.seed_ll->rows; ++i) {
      for (std::size_t j = 1; j <= d.seed_ll->cols; ++j) {
        std::cerr << "liu_lu[" << i << "," << j << "]: seed " << d.seed_ll->at(i, j).value
                  << ", output " << d.output_ll->at(i, j).value << "\n";
      }
    }
  }
}

int cmd_transform(const std::string& seed_path, const std::string& targets_path,
                  const std::string& rows_list, const std::string& cols_list,
                  const std::string& method, double tol, std::size_t max_iter, bool round_out,
                  bool trace, const std::string& format) {
  ContingencyTable seed = read_table_csv_file(seed_path);
  MarginTargets targets = targets_from_options(targets_path, rows_list, cols_list);

  TransformResult result;
  if (method == "nm") {
    result = nm_fit(seed, targets);
  } else {
    IpfConfig config;
    config.tolerance = tol;
    config.max_iterations = max_iter;
    config.record_trajectory = trace;
    result = ipf_fit(seed, targets, config);
    if (!result.converged) {
      std::cerr << "warning: not converged after " << result.iterations
                << " iterations, residual " << result.margin_residual << "\n";
    }
  }
  if (trace) {
    for (const TrajectoryPoint& point : result.trajectory) {
      std::cerr << "after " << point.step << " step:\n"
                << table_to_csv(point.table, 8) << "\n";
    }
  }
  print_transform_diagnostics(result, method);
  if (format == "json") {
    json out = {{"method", method},
                {"iterations", result.iterations},
                {"margin_residual", result.margin_residual},
                {"converged", result.converged},
                {"table", table_to_json(result.table)}};
    std::cout << out.dump(2) << "\n";
  } else {
    write_table_csv(std::cout, result.table, 12, round_out);
  }
  return result.converged ? 0 : 3;
}

int cmd_indicators(const std::string& table_path, const std::string& format) {
  ContingencyTable table = read_table_csv_file(table_path);
  require_valid(table, "indicators");

  json out;
  std::ostringstream text;
  bool any_failed = false;

  if (table.rows == 2 && table.cols == 2) {
    try {
      double value = odds_ratio(table);
      text << "odds_ratio: " << value << "\n";
      out["odds_ratio"] = value;
    } catch (const Error& e) {
      text << "odds_ratio: unavailable (" << e.what() << ")\n";
      any_failed = true;
    }
  }
  try {
    LLMatrix ll = liu_lu_generalized(table);
    for (std::size_t i = 1; i <= ll.rows; ++i) {
      for (std::size_t j = 1; j <= ll.cols; ++j) {
        const LLValue& v = ll.at(i, j);
        text << "liu_lu[" << i << "," << j << "]: " << v.value << " (numerator " << v.numerator
             << ", denominator " << v.denominator << ", expected_hh " << v.expected_hh << ")\n";
      }
    }
    out["liu_lu"] = ll_matrix_to_json(ll);
  } catch (const Error& e) {
    text << "liu_lu: unavailable (" << e.what() << ")\n";
    any_failed = true;
  }
  if (table.rows == table.cols) {
    ShareStatistics shares = share_statistics(table);
    text << "heterogamy: " << shares.heterogamy << "\n"
         << "hypergamy: " << shares.hypergamy << "\n"
         << "hypogamy: " << shares.hypogamy << "\n"
         << "homogamy: " << shares.homogamy << "\n";
    out["heterogamy"] = shares.heterogamy;
    out["hypergamy"] = shares.hypergamy;
    out["hypogamy"] = shares.hypogamy;
    out["homogamy"] = shares.homogamy;
    // per-category row/column margin ratios (e.g. men per women in each bracket)
    json ratios = json::array();
    for (std::size_t k = 0; k < table.rows; ++k) {
      try {
        double ratio = margin_ratios(table, {k}, {k});
        text << "margin_ratio[" << k + 1 << "]: " << ratio << "\n";
        ratios.push_back(ratio);
      } catch (const Error&) {
        ratios.push_back(nullptr);
      }
    }
    out["margin_ratios"] = ratios;
  }

  if (format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  if (any_failed) std::cerr << "some indicators were unavailable\n";
  return 0;
}

int cmd_decompose(const std::vector<std::string>& table_paths, const std::string& method_name,
                  const std::string& outcome_str, std::size_t reference_index, double tol,
                  std::size_t max_iter, const std::string& format) {
  std::vector<ContingencyTable> tables;
  for (const std::string& path : table_paths) tables.push_back(read_table_csv_file(path));
  TransformMethod method = method_name == "nm" ? TransformMethod::Nm : TransformMethod::Ipf;
  OutcomeStatistic outcome;
  if (outcome_str == "heterogamy") outcome = OutcomeStatistic::Heterogamy;
  else if (outcome_str == "homogamy") outcome = OutcomeStatistic::Homogamy;
  else if (outcome_str == "hypergamy") outcome = OutcomeStatistic::Hypergamy;
  else if (outcome_str == "hypogamy") outcome = OutcomeStatistic::Hypogamy;
  else throw DomainError("unknown outcome: " + outcome_str);
  IpfConfig config;
  config.tolerance = tol;
  config.max_iterations = max_iter;

  DecompositionResult d = decompose(tables[0], tables[1], outcome, method, config);
  json out = {{"method", method_name},
              {"outcome", outcome_str},
              {"total_change", d.total_change},
              {"availability_effect", d.availability_effect},
              {"preference_effect", d.preference_effect},
              {"interaction_effect", d.interaction_effect},
              {"counterfactual_a1_p0", table_to_json(d.counterfactual_a1_p0)},
              {"counterfactual_a0_p1", table_to_json(d.counterfactual_a0_p1)}};
  if (tables.size() > 2) {
    std::vector<double> path = cumulative_preference_path(
        tables, reference_index, outcome_function(outcome), method, config);
    out["cumulative_preference_path"] = path;
  }

  if (format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "method," << method_name << "\n"
              << "outcome," << outcome_str << "\n"
              << "total_change," << d.total_change << "\n"
              << "availability_effect," << d.availability_effect << "\n"
              << "preference_effect," << d.preference_effect << "\n"
              << "interaction_effect," << d.interaction_effect << "\n";
    if (out.contains("cumulative_preference_path")) {
      std::cout << "cumulative_preference_path";
      for (double v : out["cumulative_preference_path"].get<std::vector<double>>()) {
        std::cout << ',' << v;
      }
      std::cout << "\n";
    }
    std::cout << "# counterfactual with period-1 margins and period-0 association\n"
              << table_to_csv(d.counterfactual_a1_p0)
              << "# counterfactual with period-0 margins and period-1 association\n"
              << table_to_csv(d.counterfactual_a0_p1);
  }
  return 0;
}

int cmd_survey(std::optional<std::int64_t> x, std::optional<std::int64_t> n,
               const std::string& counts_path, double alpha, bool raw_share_width,
               const std::string& format) {
  struct Group {
    std::string label;
    std::int64_t x, n;
  };
  std::vector<Group> groups;
  if (x && n) {
    groups.push_back({"", *x, *n});
  } else if (!counts_path.empty()) {
    // counts CSV: optional header, rows of (label,x,n) or (x,n)
    std::ifstream in(counts_path);
    if (!in) throw Error("cannot open " + counts_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      std::vector<double> nums;
      std::string label;
      std::vector<std::string> fields;
      {
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
      }
      if (fields.size() < 2 || fields.size() > 3) {
        throw ParseError("expected (label,x,n) or (x,n)", line_no, 1);
      }
      std::size_t first_num = fields.size() == 3 ? 1 : 0;
      if (fields.size() == 3) label = fields[0];
      bool numeric = true;
      for (std::size_t k = first_num; k < fields.size(); ++k) {
        try {
          nums.push_back(std::stod(fields[k]));
        } catch (...) {
          numeric = false;
          break;
        }
      }
      if (!numeric) {
        if (line_no == 1) continue;  // header row
        throw ParseError("expected numeric counts", line_no, first_num + 1);
      }
      groups.push_back({label, std::llround(nums[0]), std::llround(nums[1])});
    }
    if (groups.empty()) throw Error(counts_path + ": no data rows");
  } else {
    throw DomainError("give --x and --n, or --counts counts.csv");
  }

  std::vector<ProportionEstimate> estimates;
  for (const Group& g : groups) {
    estimates.push_back(agresti_coull(g.x, g.n, alpha, raw_share_width));
  }

  if (format == "json") {
    json out = json::array();
    for (std::size_t k = 0; k < groups.size(); ++k) {
      const ProportionEstimate& e = estimates[k];
      json row = {{"x", e.x},           {"n", e.n},
                  {"estimate", e.estimate}, {"half_width", e.half_width},
                  {"lower", e.lower},   {"upper", e.upper},
                  {"alpha", e.alpha},   {"z", e.z}};
      if (!groups[k].label.empty()) row["label"] = groups[k].label;
      if (k > 0) {
        row["disjoint_from_previous"] =
            estimates[k].lower > estimates[k - 1].upper ||
            estimates[k].upper < estimates[k - 1].lower;
      }
      out.push_back(row);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "label,x,n,estimate,half_width,lower,upper,disjoint_from_previous\n";
    for (std::size_t k = 0; k < groups.size(); ++k) {
      const ProportionEstimate& e = estimates[k];
      std::cout << groups[k].label << ',' << e.x << ',' << e.n << ',' << e.estimate << ','
                << e.half_width << ',' << e.lower << ',' << e.upper << ',';
      if (k > 0) {
        bool disjoint = estimates[k].lower > estimates[k - 1].upper ||
                        estimates[k].upper < estimates[k - 1].lower;
        std::cout << (disjoint ? "true" : "false");
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_simulate(const std::string& population_path, std::size_t size, std::size_t draws,
                 std::uint64_t seed, bool check_mle, const std::string& enum_rows,
                 const std::string& enum_cols, bool positive_association,
                 std::optional<std::uint64_t> pick_seed) {
  if (!enum_rows.empty() || !enum_cols.empty()) {
    if (enum_rows.empty() || enum_cols.empty()) {
      throw DomainError("enumeration needs both --enum-rows and --enum-cols");
    }
    MarginTargets targets;
    targets.row_totals = parse_number_list(enum_rows);
    targets.col_totals = parse_number_list(enum_cols);
    std::vector<ContingencyTable> tables = enumerate_tables(targets, positive_association);
    std::cerr << tables.size() << " tables\n";
    std::cout << "hh_cell,n11,n12,n21,n22\n";
    if (pick_seed) {
      const ContingencyTable& t = pick_uniform(tables, *pick_seed);
      std::cout << t.at(1, 1) << ',' << t.at(0, 0) << ',' << t.at(0, 1) << ',' << t.at(1, 0)
                << ',' << t.at(1, 1) << "\n";
      return 0;
    }
    for (const ContingencyTable& t : tables) {
      std::cout << t.at(1, 1) << ',' << t.at(0, 0) << ',' << t.at(0, 1) << ',' << t.at(1, 0)
                << ',' << t.at(1, 1) << "\n";
    }
    return 0;
  }

  if (population_path.empty()) {
    throw DomainError("simulate needs a population table (or --enum-rows/--enum-cols)");
  }
  ContingencyTable population = read_table_csv_file(population_path);
  require_valid(population, "simulate");

  // one row per draw: per-draw seed, sample cells, estimator comparison
  std::cout << "draw,seed";
  for (std::size_t r = 0; r < population.rows; ++r) {
    for (std::size_t c = 0; c < population.cols; ++c) {
      std::cout << ",cell_" << r + 1 << "_" << c + 1;
    }
  }
  if (check_mle) std::cout << ",ipf_free_share,mle_free_share,discrepancy,zero_cell";
  std::cout << "\n";
  for (std::size_t k = 0; k < draws; ++k) {
    std::uint64_t draw_seed = seed + k;  // documented per-draw splitting rule
    SampleDraw draw = draw_sample(population, size, draw_seed);
    std::cout << k << ',' << draw_seed;
    for (double v : draw.sample.cells) std::cout << ',' << v;
    if (check_mle) {
      MleCheck check = mle_check(population, draw);
      std::cout << ',' << check.ipf_free_cell << ',' << check.mle_free_cell << ','
                << check.discrepancy << ',' << (check.sample_has_zero_cell ? "true" : "false");
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contingency-table transforms, indicators and decompositions"};
  app.require_subcommand(1);

  std::string format = "csv";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));

  // transform
  auto* transform = app.add_subcommand("transform", "fit a table to target margins");
  std::string seed_path, targets_path, rows_list, cols_list, method = "ipf";
  double tol = 1e-10;
  std::size_t max_iter = 1000;
  bool round_out = false, trace = false;
  transform->add_option("seed", seed_path, "seed table CSV")->required();
  transform->add_option("--targets", targets_path, "table whose margins are the targets");
  transform->add_option("--rows", rows_list, "target row totals, comma separated");
  transform->add_option("--cols", cols_list, "target column totals, comma separated");
  transform->add_option("--method", method, "ipf or nm")->check(CLI::IsMember({"ipf", "nm"}));
  transform->add_option("--tol", tol, "IPF stopping tolerance");
  transform->add_option("--max-iter", max_iter, "IPF iteration cap");
  transform->add_flag("--round", round_out, "print integer-rounded cells");
  transform->add_flag("--trace", trace, "print each scaling step to stderr");

  // indicators
  auto* indicators = app.add_subcommand("indicators", "association measures of one table");
  std::string table_path;
  indicators->add_option("table", table_path, "table CSV")->required();

  // decompose
  auto* decompose_cmd = app.add_subcommand("decompose", "split an outcome change into effects");
  std::vector<std::string> decompose_paths;
  std::string outcome_str = "heterogamy", d_method = "nm";
  std::size_t reference_index = 0;
  double d_tol = 1e-10;
  std::size_t d_max_iter = 1000;
  decompose_cmd->add_option("tables", decompose_paths, "two or more table CSVs, time-ordered")
      ->required()
      ->expected(2, -1);
  decompose_cmd->add_option("--method", d_method, "ipf or nm")
      ->check(CLI::IsMember({"ipf", "nm"}));
  decompose_cmd->add_option("--outcome", outcome_str, "outcome statistic")
      ->check(CLI::IsMember({"heterogamy", "homogamy", "hypergamy", "hypogamy"}));
  decompose_cmd->add_option("--reference-index", reference_index,
                            "anchor year for the cumulative path");
  decompose_cmd->add_option("--tol", d_tol, "IPF stopping tolerance");
  decompose_cmd->add_option("--max-iter", d_max_iter, "IPF iteration cap");

  // survey
  auto* survey = app.add_subcommand("survey", "binomial share estimates with intervals");
  std::optional<std::int64_t> survey_x, survey_n;
  std::string counts_path;
  double alpha = 0.05;
  bool raw_share_width = false;
  survey->add_option("--x", survey_x, "successes");
  survey->add_option("--n", survey_n, "trials");
  survey->add_option("--counts", counts_path, "CSV of (label,x,n) or (x,n) rows");
  survey->add_option("--alpha", alpha, "two-sided significance level");
  survey->add_flag("--raw-share-width", raw_share_width,
                   "use x/n instead of the adjusted estimate inside the width");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "sampling experiments and enumeration");
  std::string population_path, enum_rows, enum_cols;
  std::size_t size = 1000, draws = 1;
  std::uint64_t sim_seed = 0;
  bool no_mle = false, positive_association = false;
  std::optional<std::uint64_t> pick_seed;
  simulate->add_option("population", population_path, "population table CSV");
  simulate->add_option("--size", size, "sample size per draw");
  simulate->add_option("--draws", draws, "number of draws");
  simulate->add_option("--seed", sim_seed, "base RNG seed (per-draw seed = base + index)");
  simulate->add_flag("--no-mle", no_mle, "skip the estimator comparison columns");
  simulate->add_option("--enum-rows", enum_rows, "enumerate integer tables: row totals");
  simulate->add_option("--enum-cols", enum_cols, "enumerate integer tables: column totals");
  simulate->add_flag("--positive-association", positive_association,
                     "restrict enumeration to H,H >= int(R)");
  simulate->add_option("--pick", pick_seed, "print one uniformly selected table (seed)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*transform) {
      return cmd_transform(seed_path, targets_path, rows_list, cols_list, method, tol, max_iter,
                           round_out, trace, format);
    }
    if (*indicators) {
      return cmd_indicators(table_path, format);
    }
    if (*decompose_cmd) {
      return cmd_decompose(decompose_paths, d_method, outcome_str, reference_index, d_tol,
                           d_max_iter, format);
    }
    if (*survey) {
      return cmd_survey(survey_x, survey_n, counts_path, alpha, raw_share_width, format);
    }
    if (*simulate) {
      return cmd_simulate(population_path, size, draws, sim_seed, !no_mle, enum_rows, enum_cols,
                          positive_association, pick_seed);
    }
  } catch (const tabfit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
