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


// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "ipfpp/coupling.h"
#include "ipfpp/experiments.h"
#include "ipfpp/experiments_io.h"
#include "ipfpp/fpp.h"
#include "ipfpp/invasion.h"
#include "ipfpp/lattice.h"
#include "ipfpp/randomness.h"
#include "support/oracles.h"

namespace ipfpp {
namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

// First established at d = 2, l1:100, n = 1000, master seed 0, theorem K with
// epsilon/2 = 0.01. The run is deterministic, so it is pinned tightly.
constexpr double kDeskAlpha = 0.29187676829684867;
constexpr double kDeskAlphaTolerance = 1e-9;

unsigned Workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::int64_t EdgeCount(const Region& region) { return static_cast<std::int64_t>(region.edge_count()); }

Verdict GapEventLaw() {
  const Region region = build_region(L1Ball{3}, 2);
  const std::int64_t n = EdgeCount(region);
  const std::uint64_t trials = 100000;
  bool pass = true;
  std::string detail;
  for (double eps : {0.1, 0.5}) {
    const GapEventEstimate est = estimate_gap_event(region, eps, trials, 0, Workers());
    const double exact = std::pow(1.0 - static_cast<double>(n - 1) * est.delta, static_cast<double>(n));
    const double sigma = std::sqrt(eps * (1.0 - eps) / static_cast<double>(trials));
    const double z = (est.frequency() - exact) / sigma;
    pass = pass && std::abs(z) <= 3.0;
    detail += fmt::format("eps={} freq={:.5f} law={:.5f} z={:+.2f}; ", eps, est.frequency(), exact, z);
  }
  return {pass, detail};
}

Verdict DijkstraMatchesEnumeration() {
  double worst = 0.0;
  std::size_t runs = 0;
  for (const auto& [kind, dim] : testing::small_regions()) {
    const Region region = build_region(kind, dim);
    if (region.vertex_count() > 13) continue;
    for (double k : {1.0, 10.0, 100.0}) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(seed, 0), region);
        const FppResult res = dijkstra(w, region, k);
        const std::vector<long double> exact = testing::path_enumeration_log_times(region, w, k);
        for (const SettledVertex& s : res.settled) {
          if (s.vertex == 0) continue;
          worst = std::max(worst, static_cast<double>(std::abs(static_cast<long double>(s.time.log_value()) - exact[s.vertex])));
        }
        ++runs;
      }
    }
  }
  return {worst <= 1e-12, fmt::format("{} runs at K in {{1,10,100}}, max |dlog|={:.3g} (tol 1e-12)", runs, worst)};
}

double AdjacentEdgeMinimum(const FppResult& res, const Region& region, const EdgeWeights& w, double k, EdgeId e) {
  const auto [a, b] = region.endpoints(e);
  double best = std::numeric_limits<double>::infinity();
  for (VertexId end : {a, b}) {
    for (int j = 0; j < 2 * region.dim(); ++j) {
      const EdgeId f = region.incident_edge(end, j);
      if (f == kNoEdge || f == e) continue;
      best = std::min(best, edge_time(res, region, w, k, f).time.log_value());
    }
  }
  return best;
}

Verdict EdgeTimeRecursion() {
  const Region region = build_region(L1Ball{5}, 2);
  const double k = CouplingParams::Theorem(EdgeCount(region), 0.1).k;
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(1, t), region);
    const FppResult res = dijkstra(w, region, k);
    for (std::size_t i = 0; i < region.edge_count(); ++i) {
      const auto e = static_cast<EdgeId>(i);
      const auto [a, b] = region.endpoints(e);
      if (a == 0 || b == 0 || !res.is_settled(a) || !res.is_settled(b)) continue;
      const double expected =
          logtime_add(LogTime::FromLog(AdjacentEdgeMinimum(res, region, w, k, e)), tau(w[e], k)).log_value();
      worst = std::max(worst, std::abs(edge_time(res, region, w, k, e).time.log_value() - expected));
      ++checked;
    }
  }
  return {worst <= 1e-12, fmt::format("K={:.6g}, {} edges over 1000 trials, max |dlog|={:.3g} (tol 1e-12)", k,
                                      checked, worst)};
}

Verdict VertexToEdge() {
  const Region region = build_region(L1Ball{5}, 2);
  const double k = CouplingParams::Theorem(EdgeCount(region), 0.1).k;
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(2, t), region);
    const FppResult res = dijkstra(w, region, k);
    for (const SettledVertex& s : res.settled) {
      if (s.vertex == 0) continue;
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < 2 * region.dim(); ++j) {
        const EdgeId e = region.incident_edge(s.vertex, j);
        if (e == kNoEdge) continue;
        const EdgeTime et = edge_time(res, region, w, k, e);
        if (!et.lower_bound) best = std::min(best, et.time.log_value());
      }
      worst = std::max(worst, std::abs(best - s.time.log_value()));
      ++checked;
    }
  }
  return {worst <= 1e-12, fmt::format("K={:.6g}, {} settled vertices over 1000 trials, max |dlog|={:.3g} (tol 1e-12)",
                                      k, checked, worst)};
}

// Coupled trials at d = 2, epsilon = 0.1, K = k_param(|E|, 0.05), inner radius 1.
struct CoupledTally {
  std::int64_t radius = 0;
  std::uint64_t trials = 0;
  std::uint64_t t_delta = 0;
  std::uint64_t ip_contains_fpp = 0;
  std::uint64_t backbone_violations = 0;
  std::uint64_t containment_violations = 0;
  std::uint64_t inner_violations = 0;
  std::uint64_t late = 0;
  std::vector<std::uint8_t> late_by_trial;
};

CoupledTally RunCoupled(std::int64_t radius, std::uint64_t trials) {
  const Region region = build_region(L1Ball{radius}, 2);
  const CouplingParams params = CouplingParams::Theorem(EdgeCount(region), 0.1);
  CoupledTally tally;
  tally.radius = radius;
  tally.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const CoupledOutcome o = run_coupled(Configuration(3, t), region, 1, params);
    tally.t_delta += o.t_delta_holds;
    tally.ip_contains_fpp += o.ip_contains_fpp;
    tally.late += o.late_invasion_in_inner;
    tally.late_by_trial.push_back(o.late_invasion_in_inner);
    if (!o.t_delta_holds) continue;
    tally.backbone_violations += !(o.order_agreement && o.order_prefix);
    tally.containment_violations += !o.ip_contains_fpp;
    tally.inner_violations += !o.late_invasion_in_inner && !o.fpp_contains_ip_on_inner;
  }
  return tally;
}

const std::vector<CoupledTally>& CoupledRuns() {
  static const std::vector<CoupledTally> runs = {RunCoupled(5, 2000), RunCoupled(10, 2000), RunCoupled(20, 2000)};
  return runs;
}

Verdict Backbone() {
  const CoupledTally& t = CoupledRuns()[0];
  return {t.backbone_violations == 0,
          fmt::format("R=5: {} gap-event trials of {}, {} without order agreement and prefix", t.t_delta, t.trials,
                      t.backbone_violations)};
}

Verdict IpContainsFpp() {
  const CoupledTally& t = CoupledRuns()[0];
  const bool pass = t.containment_violations == 0 && t.ip_contains_fpp >= t.t_delta;
  return {pass, fmt::format("R=5: {} violations; P[IP contains FPP]={:.4f} >= P[gap event]={:.4f}",
                            t.containment_violations, static_cast<double>(t.ip_contains_fpp) / t.trials,
                            static_cast<double>(t.t_delta) / t.trials)};
}

Verdict FppContainsIp() {
  bool pass = true;
  std::string detail;
  const auto& runs = CoupledRuns();
  for (const CoupledTally& t : runs) {
    pass = pass && t.inner_violations == 0;
    detail += fmt::format("R={}: violations={} P[late]={:.4f}; ", t.radius, t.inner_violations,
                          static_cast<double>(t.late) / t.trials);
  }
  std::uint64_t nesting_breaks = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    for (std::size_t k = 0; k < runs[i].late_by_trial.size(); ++k) {
      nesting_breaks += runs[i].late_by_trial[k] && !runs[i - 1].late_by_trial[k];
    }
    pass = pass && runs[i].late <= runs[i - 1].late;
  }
  pass = pass && nesting_breaks == 0;
  detail += fmt::format("per-trial inclusion breaks={}", nesting_breaks);
  return {pass, detail};
}

bool GridEndpointsHold(const ExperimentResult& result, std::string& why) {
  const Region& region = *result.grid.region;
  if (result.grid.counts[0] != result.grid.trials) {
    why = fmt::format("{}: origin count {} of {}", region.description(), result.grid.counts[0], result.grid.trials);
    return false;
  }
  for (VertexId b : region.boundary()) {
    if (result.grid.counts[b] != 0) {
      why = fmt::format("{}: boundary vertex {} has count {}", region.description(), region.vertex(b).ToString(),
                        result.grid.counts[b]);
      return false;
    }
  }
  const ProportionField field = ProportionField::FromGrid(result.grid);
  std::vector<std::int32_t> outside(static_cast<std::size_t>(region.dim()), 0);
  outside[0] = static_cast<std::int32_t>(region.max_abs_coordinate() + 1);
  if (field.at(Vertex(std::span<const std::int32_t>(outside))) != 0.0) {
    why = fmt::format("{}: nonzero outside the region", region.description());
    return false;
  }
  return true;
}

Verdict ExteriorZeroAndEndpoints(const ExperimentResult& desk) {
  std::vector<std::pair<std::string, int>> plans = {{"l1:20", 2}, {"l1:12", 1}, {"lopsided:6", 2}, {"linf:5", 2},
                                                    {"l1:5", 3}};
  std::size_t checked = 0;
  std::string why;
  for (const auto& [region, dim] : plans) {
    ExperimentPlan plan;
    plan.region = region;
    plan.dimension = dim;
    plan.trials = 300;
    plan.workers = Workers();
    plan.coupling_stats = dim == 2 && region.starts_with("l1");
    if (!GridEndpointsHold(run_experiment(plan), why)) return {false, why};
    ++checked;
  }
  if (!GridEndpointsHold(desk, why)) return {false, why};
  return {true, fmt::format("{} experiments including the desk-scale grid", checked + 1)};
}

Verdict RegressionEngine() {
  double worst_alpha = 0.0, worst_r = 0.0;
  for (double alpha : {0.1, 0.23, 0.5, 0.9}) {
    std::vector<SlicePoint> pts;
    for (int k = -100; k <= 100; ++k) {
      const double x = k / 100.0;
      pts.push_back({x, 1.0 - std::pow(std::abs(x), alpha)});
    }
    const FitResult fit = fit_alpha(pts);
    worst_alpha = std::max(worst_alpha, std::abs(fit.alpha - alpha));
    worst_r = std::max(worst_r, std::abs(fit.r - 1.0));
  }
  return {worst_alpha <= 1e-10 && worst_r <= 1e-10,
          fmt::format("max |dalpha|={:.3g}, max |r-1|={:.3g} (tol 1e-10)", worst_alpha, worst_r)};
}

ExperimentPlan DeskPlan() {
  ExperimentPlan plan;
  plan.dimension = 2;
  plan.region = "l1:100";
  plan.trials = 1000;
  plan.master_seed = 0;
  plan.workers = Workers();
  return plan;
}

Verdict DeskScale(const ExperimentResult& desk) {
  const FitResult fit = fit_alpha(slice(ProportionField::FromGrid(desk.grid)));
  const bool pass = fit.r >= 0.97 && std::abs(fit.alpha - kDeskAlpha) <= kDeskAlphaTolerance;
  return {pass, fmt::format("K={:.6g} alpha={:.17g} r={:.6f} points={} (reference alpha {:.17g}, r >= 0.97)",
                            desk.params.k, fit.alpha, fit.r, fit.points_used, kDeskAlpha)};
}

std::string Serialized(const ExperimentPlan& plan) {
  const ExperimentResult result = run_experiment(plan);
  std::ostringstream out;
  write_grid_csv(out, result.grid);
  nlohmann::json summary = summary_json(plan, result);
  summary.erase("wall_seconds");
  summary["plan"].erase("workers");
  out << summary.dump();
  return out.str();
}

Verdict Determinism() {
  ExperimentPlan plan;
  plan.region = "l1:30";
  plan.trials = 400;
  plan.master_seed = 11;
  plan.coupling_stats = true;
  plan.workers = 1;
  const std::string reference = Serialized(plan);
  std::size_t runs = 1, mismatches = 0;
  for (unsigned workers : {1u, 8u}) {
    plan.workers = workers;
    for (int rep = 0; rep < (workers == 1 ? 2 : 3); ++rep, ++runs) mismatches += Serialized(plan) != reference;
  }
  return {mismatches == 0, fmt::format("{} runs (3 at 1 worker, 3 at 8 workers), {} differ", runs, mismatches)};
}

}  // namespace
}  // namespace ipfpp

int main() {
  using namespace ipfpp;
  const ExperimentResult desk = run_experiment(DeskPlan());
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"gap_event_law", GapEventLaw},
      {"dijkstra_vs_path_enumeration", DijkstraMatchesEnumeration},
      {"edge_time_recursion", EdgeTimeRecursion},
      {"backbone_order_agreement", Backbone},
      {"ip_contains_fpp_on_gap_event", IpContainsFpp},
      {"fpp_contains_ip_and_late_invasion_nesting", FppContainsIp},
      {"vertex_time_is_edge_minimum", VertexToEdge},
      {"exterior_zero_and_endpoints", [&] { return ExteriorZeroAndEndpoints(desk); }},
      {"regression_engine", RegressionEngine},
      {"desk_scale_fit", [&] { return DeskScale(desk); }},
      {"determinism_across_workers", Determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    fmt::print("{} {}: {} [{:.1f}s]\n", v.pass ? "PASS" : "FAIL", name, v.detail, secs);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
