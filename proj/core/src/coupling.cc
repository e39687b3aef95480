// Copyright 2026 The ipfpp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipfpp/coupling.h"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ipfpp/errors.h"

namespace ipfpp {

bool check_ip_contains_fpp(const InvasionRecord& rec, const FppResult& res, const Region& region) {
  const auto invaded = invaded_before_boundary(rec, region);
  for (const SettledVertex& s : res.settled) {
    if (s.vertex == res.first_boundary_vertex) break;
    if (!invaded[s.vertex]) return false;
  }
  return true;
}

bool check_fpp_contains_ip(const InvasionRecord& rec, const FppResult& res, const Region& region,
                           std::int64_t inner_r) {
  for (const InvadedVertex& iv : rec.vertices) {
    if (l1_norm(region.vertex(iv.vertex)) <= inner_r && !beats_boundary(res, iv.vertex)) return false;
  }
  return true;
}

OrderAgreement check_order_agreement(const InvasionRecord& rec, const FppResult& res, const Region& region,
                                     const EdgeWeights& weights, double k) {
  const std::vector<EdgeId> ip_order = ip_edge_order(rec);
  OrderAgreement agreement;

  const FppEdgeOrder invaded_sorted = fpp_edge_order(res, region, weights, k, ip_order);
  agreement.pairwise = invaded_sorted.edges == ip_order;

  std::vector<EdgeId> all(region.edge_count());
  std::iota(all.begin(), all.end(), 0);
  const FppEdgeOrder full = fpp_edge_order(res, region, weights, k, all);
  agreement.fpp_order_ties = full.ties;
  agreement.prefix = std::equal(ip_order.begin(), ip_order.end(), full.edges.begin());
  return agreement;
}

bool check_late_invasion(const InvasionRecord& rec, const Region& region, std::int64_t inner_r) {
  const auto invaded = invaded_before_boundary(rec, region);
  for (std::size_t v = 0; v < region.vertex_count(); ++v) {
    if (!invaded[v] && l1_norm(region.vertex(static_cast<VertexId>(v))) <= inner_r) return true;
  }
  return false;
}

CoupledTrial run_coupled_trial(const EdgeWeights& weights, const Region& region, std::int64_t inner_r,
                               const CouplingParams& params) {
  if (params.edge_count != static_cast<std::int64_t>(region.edge_count())) {
    throw ConfigError(fmt::format("coupling parameters were derived for {} edges but region {} has {}",
                                  params.edge_count, region.description(), region.edge_count()));
  }
  if (inner_r < 0 || inner_r >= region.boundary_distance()) {
    throw ConfigError(fmt::format("inner radius {} must lie in [0, {}) for region {}", inner_r,
                                  region.boundary_distance(), region.description()));
  }

  CoupledTrial trial;
  trial.invasion = invade(weights, region);
  trial.fpp = dijkstra(weights, region, params.k);

  CoupledOutcome& out = trial.outcome;
  out.params = params;
  out.inner_radius = inner_r;
  out.min_gap = min_gap(weights.values());
  out.t_delta_holds = out.min_gap >= params.delta;
  out.ip_contains_fpp = check_ip_contains_fpp(trial.invasion, trial.fpp, region);
  out.fpp_contains_ip_on_inner = check_fpp_contains_ip(trial.invasion, trial.fpp, region, inner_r);
  const OrderAgreement agreement = check_order_agreement(trial.invasion, trial.fpp, region, weights, params.k);
  out.order_agreement = agreement.pairwise;
  out.order_prefix = agreement.prefix;
  out.late_invasion_in_inner = check_late_invasion(trial.invasion, region, inner_r);

  out.diagnostics.weight_ties = count_weight_ties(weights.values());
  out.diagnostics.invasion_ties = trial.invasion.weight_ties;
  out.diagnostics.fpp_time_ties = trial.fpp.time_ties;
  out.diagnostics.fpp_order_ties = agreement.fpp_order_ties;
  out.diagnostics.settled_count = trial.fpp.settled.size();
  out.diagnostics.invaded_count = trial.invasion.vertices.size();
  return trial;
}

CoupledOutcome run_coupled(const EdgeWeights& weights, const Region& region, std::int64_t inner_r,
                           const CouplingParams& params) {
  return run_coupled_trial(weights, region, inner_r, params).outcome;
}

CoupledOutcome run_coupled(const Configuration& cfg, const Region& region, std::int64_t inner_r,
                           const CouplingParams& params) {
  return run_coupled(EdgeWeights::FromConfiguration(cfg, region), region, inner_r, params);
}

std::vector<std::string> hard_implication_violations(const CoupledOutcome& o) {
  std::vector<std::string> violations;
  if (!o.params.theorem_k || !o.t_delta_holds) return violations;
  if (!o.ip_contains_fpp) violations.emplace_back("gap event holds but IP does not contain FPP");
  if (!o.order_agreement) violations.emplace_back("gap event holds but IP and FPP edge orders disagree");
  if (!o.order_prefix) violations.emplace_back("gap event holds but invaded edges are not a prefix of the FPP order");
  if (!o.late_invasion_in_inner && !o.fpp_contains_ip_on_inner) {
    violations.emplace_back("gap event holds without late inner invasion but FPP does not contain IP");
  }
  return violations;
}

std::string dump_trial(const CoupledTrial& trial, const Region& region, const EdgeWeights& weights,
                       std::optional<TrialId> id) {
  using nlohmann::json;
  const CoupledOutcome& o = trial.outcome;
  json doc;
  if (id) {
    doc["master_seed"] = id->master_seed;
    doc["trial_index"] = id->trial_index;
  }
  doc["region"] = region.description();
  doc["dimension"] = region.dim();
  doc["edge_count"] = region.edge_count();
  doc["K"] = o.params.k;
  doc["theorem_k"] = o.params.theorem_k;
  doc["epsilon"] = o.params.epsilon;
  doc["delta"] = o.params.delta;
  doc["min_gap"] = o.min_gap;
  doc["inner_radius"] = o.inner_radius;
  doc["flags"] = {{"t_delta", o.t_delta_holds},
                  {"ip_contains_fpp", o.ip_contains_fpp},
                  {"fpp_contains_ip", o.fpp_contains_ip_on_inner},
                  {"order_agreement", o.order_agreement},
                  {"order_prefix", o.order_prefix},
                  {"late_invasion", o.late_invasion_in_inner}};
  doc["violations"] = hard_implication_violations(o);

  json ip = json::array();
  for (const InvadedEdge& ie : trial.invasion.edges) {
    ip.push_back({{"step", ie.step}, {"edge", region.edge(ie.edge).ToString()}, {"weight", ie.weight}});
  }
  doc["ip_order"] = std::move(ip);

  std::vector<EdgeId> all(region.edge_count());
  std::iota(all.begin(), all.end(), 0);
  const FppEdgeOrder full = fpp_edge_order(trial.fpp, region, weights, o.params.k, all);
  json fpp = json::array();
  for (EdgeId e : full.edges) {
    const EdgeTime t = edge_time(trial.fpp, region, weights, o.params.k, e);
    fpp.push_back({{"edge", region.edge(e).ToString()},
                   {"weight", weights[e]},
                   {"log_time", t.time.log_value()},
                   {"lower_bound", t.lower_bound}});
  }
  doc["fpp_order"] = std::move(fpp);
  return doc.dump(2);
}

void enforce_hard_implications(const CoupledTrial& trial, const Region& region, const EdgeWeights& weights,
                               std::optional<TrialId> id) {
  if (hard_implication_violations(trial.outcome).empty()) return;
  throw InvariantViolation(dump_trial(trial, region, weights, id));
}

}  // namespace ipfpp
