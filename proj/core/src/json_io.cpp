#include "rkhs/json_io.hpp"

#include <json.hpp>

#include "rkhs/error.hpp"

namespace rkhs::json {

namespace {

using nlohmann::json;

json rule_json(const QuadratureRule& rule) {
  json nodes = json::array();
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const Point x = node_row(rule.nodes, i);
    nodes.push_back(std::vector<double>(x.begin(), x.end()));
  }
  return {{"nodes", nodes}, {"weights", std::vector<double>(rule.weights.begin(), rule.weights.end())}};
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::usage, std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw Error(ErrorKind::usage, std::string("JSON object lacks field \"") + name + "\"");
  }
  return j.at(name);
}

template <class T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::usage, std::string("bad JSON value for ") + what + ": " + e.what());
  }
}

QuadratureRule rule_from(const json& j) {
  const auto nodes = as<std::vector<std::vector<double>>>(field(j, "nodes"), "nodes");
  const auto weights = as<std::vector<double>>(field(j, "weights"), "weights");
  if (nodes.size() != weights.size()) {
    throw Error(ErrorKind::usage, "rule has " + std::to_string(nodes.size()) + " nodes but " +
                                      std::to_string(weights.size()) + " weights");
  }
  const std::size_t d = nodes.empty() ? 0 : nodes.front().size();
  QuadratureRule rule;
  rule.nodes.resize(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(d));
  rule.weights.resize(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].size() != d) throw Error(ErrorKind::usage, "rule nodes are ragged");
    for (std::size_t k = 0; k < d; ++k) {
      rule.nodes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = nodes[i][k];
    }
    rule.weights(static_cast<Eigen::Index>(i)) = weights[i];
  }
  return rule;
}

}  // namespace

std::string dump(const KernelSpec& spec) {
  return json{{"family", std::string(to_string(spec.family()))}, {"params", spec.params()}}.dump();
}

std::string dump(const QuadratureRule& rule) { return rule_json(rule).dump(); }

std::string dump(const SamplingMethod& method) {
  json j = rule_json(QuadratureRule{method.nodes, Eigen::VectorXd::Zero(method.size())});
  j.erase("weights");
  j["index_set"] = method.index_set.indices();
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < method.coeffs.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(method.coeffs.cols()));
    for (Eigen::Index k = 0; k < method.coeffs.cols(); ++k) row[static_cast<std::size_t>(k)] = method.coeffs(i, k);
    coeffs.push_back(row);
  }
  j["coeffs"] = coeffs;
  return j.dump();
}

std::string dump(const CostModel& model) {
  if (model.mode() == CostModel::Mode::unit) return json{{"mode", "unit"}}.dump();
  if (model.table().empty()) {
    throw Error(ErrorKind::usage, "only table-based dollar cost models serialize");
  }
  return json{{"mode", "dollar"}, {"table", model.table()}}.dump();
}

std::string dump(const MdmPlan& plan) {
  json sets = json::array();
  for (const Coords& u : plan.active_sets) {
    std::vector<std::size_t> one_based;
    for (std::size_t j : u) one_based.push_back(j + 1);
    sets.push_back(one_based);
  }
  return json{{"active_sets", sets},
              {"levels", plan.levels},
              {"budgets", plan.budgets},
              {"flattened", rule_json(plan.flattened)},
              {"cost", plan.cost},
              {"dedup_anchor", plan.dedup_anchor}}
      .dump();
}

KernelSpec parse_kernel(std::string_view text) {
  const json j = parse_text(text);
  const auto family = as<std::string>(field(j, "family"), "family");
  const auto params = as<std::vector<double>>(field(j, "params"), "params");
  if (family == "gaussian") return KernelSpec::gaussian(params);
  if (family == "hermite") return KernelSpec::hermite(params);
  throw Error(ErrorKind::usage, "unknown kernel family \"" + family + "\"");
}

QuadratureRule parse_rule(std::string_view text) { return rule_from(parse_text(text)); }

SamplingMethod parse_method(std::string_view text) {
  const json j = parse_text(text);
  json as_rule = j;
  const auto nodes = as<std::vector<std::vector<double>>>(field(j, "nodes"), "nodes");
  as_rule["weights"] = std::vector<double>(nodes.size(), 0.0);
  const QuadratureRule rule = rule_from(as_rule);
  auto indices = as<std::vector<std::vector<int>>>(field(j, "index_set"), "index_set");
  const auto coeffs = as<std::vector<std::vector<double>>>(field(j, "coeffs"), "coeffs");
  MultiIndexSet set(static_cast<std::size_t>(rule.dimension()), std::move(indices));
  // Coefficient columns follow the order of "index_set" as given; re-sort
  // them into the canonical order of the set.
  const auto given = as<std::vector<std::vector<int>>>(field(j, "index_set"), "index_set");
  if (coeffs.size() != nodes.size()) throw Error(ErrorKind::usage, "one coefficient row per node");
  Eigen::MatrixXd table(static_cast<Eigen::Index>(coeffs.size()), static_cast<Eigen::Index>(set.size()));
  if (given.size() != set.size()) throw Error(ErrorKind::usage, "index_set has duplicates");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].size() != given.size()) {
      throw Error(ErrorKind::usage, "coefficient rows must have |index_set| entries");
    }
    for (std::size_t k = 0; k < given.size(); ++k) {
      const std::size_t pos = *set.find(given[k]);
      table(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(pos)) = coeffs[i][k];
    }
  }
  return SamplingMethod{rule.nodes, table, std::move(set)};
}

CostModel parse_cost_model(std::string_view text) {
  const json j = parse_text(text);
  const auto mode = as<std::string>(field(j, "mode"), "mode");
  if (mode == "unit") return CostModel::unit();
  if (mode == "dollar") return CostModel::dollar_table(as<std::vector<double>>(field(j, "table"), "table"));
  throw Error(ErrorKind::usage, "unknown cost mode \"" + mode + "\"");
}

MdmPlan parse_plan(std::string_view text) {
  const json j = parse_text(text);
  MdmPlan plan;
  for (const auto& u : as<std::vector<std::vector<std::size_t>>>(field(j, "active_sets"), "active_sets")) {
    Coords zero_based;
    for (std::size_t c : u) {
      if (c == 0) throw Error(ErrorKind::usage, "active_sets coordinates are 1-based");
      zero_based.push_back(c - 1);
    }
    plan.active_sets.push_back(zero_based);
  }
  plan.levels = as<std::vector<int>>(field(j, "levels"), "levels");
  plan.budgets = as<std::vector<std::size_t>>(field(j, "budgets"), "budgets");
  plan.flattened = rule_from(field(j, "flattened"));
  plan.cost = as<double>(field(j, "cost"), "cost");
  plan.dedup_anchor = j.value("dedup_anchor", false);
  if (plan.levels.size() != plan.active_sets.size() || plan.budgets.size() != plan.active_sets.size()) {
    throw Error(ErrorKind::usage, "active_sets, levels and budgets must have equal lengths");
  }
  return plan;
}

}  // namespace rkhs::json
