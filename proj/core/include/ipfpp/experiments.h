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

// Monte Carlo experiments over many seeded trials: per-vertex proportion
// grids of the event T(0, x) < T(0, boundary), coupling event frequencies,
// and the post-processing used on those grids (slices, power-law fit, level
// curves).

#ifndef IPFPP_EXPERIMENTS_H_
#define IPFPP_EXPERIMENTS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ipfpp/lattice.h"
#include "ipfpp/randomness.h"

namespace ipfpp {

// How K is derived when not overridden: K = ln|E| / delta(|E|, epsilon_half).
struct DerivedParams {
  std::int64_t edge_count = 0;
  double epsilon_half = 0.0;
  double delta = 0.0;  // delta(edge_count, epsilon_half)
  double k = 0.0;
  bool theorem_k = true;
  std::string k_policy;  // "theorem" or "override"
};

DerivedParams derive_params(const Region& region, double epsilon_half, std::optional<double> k_override);

struct ExperimentPlan {
  int dimension = 2;
  std::string region = "l1:100";
  std::int64_t inner_radius = 1;
  double epsilon_half = 0.01;
  std::optional<double> k_override;
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  // Also run the invasion on every trial and aggregate coupling events.
  bool coupling_stats = false;
};

// Exact per-vertex counts of the beats-boundary event.
struct ProportionGrid {
  std::shared_ptr<const Region> region;
  std::vector<std::uint64_t> counts;  // by VertexId
  std::uint64_t trials = 0;

  double proportion(VertexId v) const {
    return trials == 0 ? 0.0 : static_cast<double>(counts[v]) / static_cast<double>(trials);
  }
};

// Event counters; all integer so parallel merges are exact.
struct EventCounts {
  std::uint64_t trials = 0;
  std::uint64_t t_delta = 0;
  std::uint64_t ip_contains_fpp = 0;
  std::uint64_t fpp_contains_ip = 0;
  std::uint64_t order_agreement = 0;
  std::uint64_t order_prefix = 0;
  std::uint64_t late_invasion = 0;
  std::uint64_t weight_ties = 0;
  std::uint64_t invasion_ties = 0;
  std::uint64_t fpp_time_ties = 0;
  std::uint64_t fpp_order_ties = 0;

  EventCounts& operator+=(const EventCounts& other);
};

struct ExperimentResult {
  ProportionGrid grid;
  EventCounts events;
  DerivedParams params;
  bool coupling_stats = false;
  double wall_seconds = 0.0;
};

// Runs trials 0..n-1 of the plan, split into contiguous blocks across
// workers. Results do not depend on the worker count. With coupling stats, a
// failed hard implication throws InvariantViolation carrying the dump of the
// lowest-indexed offending trial.
ExperimentResult run_experiment(const ExperimentPlan& plan);
ExperimentResult run_experiment(const ExperimentPlan& plan, std::shared_ptr<const Region> region);

// Frequency of the gap event {min gap >= delta(|E|, epsilon)} over weight-only
// trials on the region's edges.
struct GapEventEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double delta = 0.0;
  double frequency() const { return static_cast<double>(hits) / static_cast<double>(trials); }
  double standard_error() const;
};

GapEventEstimate estimate_gap_event(const Region& region, double epsilon, std::uint64_t trials,
                                    std::uint64_t master_seed, unsigned workers = 1);

// Proportions over a finite set of lattice points; missing points read as 0.
class ProportionField {
 public:
  ProportionField(int dim, std::vector<Vertex> points, std::vector<double> values,
                  std::optional<std::int64_t> l1_radius = std::nullopt);
  static ProportionField FromGrid(const ProportionGrid& grid);

  int dim() const { return dim_; }
  std::span<const Vertex> points() const { return points_; }
  std::span<const double> values() const { return values_; }
  std::optional<std::int64_t> l1_radius() const { return l1_radius_; }
  bool contains(const Vertex& v) const { return index_.contains(v); }
  double at(const Vertex& v) const;

 private:
  int dim_;
  std::vector<Vertex> points_;
  std::vector<double> values_;
  std::optional<std::int64_t> l1_radius_;
  std::unordered_map<Vertex, std::size_t, VertexHash> index_;
};

struct SlicePoint {
  double x_scaled;
  double proportion;
};

// (k / R, P(k, 0)) for k = -R..R. Requires a planar l1-ball field.
std::vector<SlicePoint> slice(const ProportionField& field);

inline constexpr const char* kFitExclusionRule = "0<P<1 and x!=0";

struct FitResult {
  double alpha = 0.0;
  double r = 0.0;
  std::size_t points_used = 0;
  std::string exclusion_rule = kFitExclusionRule;
};

// Least squares through the origin for alpha * log|x| = log(1 - P), using
// only points with 0 < P < 1 and x != 0; r is the Pearson correlation of
// log|x| and log(1 - P). Throws FitError with fewer than 2 usable points.
FitResult fit_alpha(std::span<const SlicePoint> points);

struct LevelCurve {
  std::vector<std::pair<double, double>> points;
  // Mean crossing distance along the 4 axis rays over the mean along the 4
  // diagonal rays; NaN when either is unavailable.
  double isotropy_ratio = 0.0;
};

// Crossings of the level along grid rows and columns, linearly interpolated
// between adjacent points of the field. Empty when the level lies outside the
// observed range of values. Planar fields only.
LevelCurve level_curve(const ProportionField& field, double level);

// Origin cluster of the subgraph of region edges with weight < p, as sorted
// VertexIds.
std::vector<VertexId> cluster_at_level(const EdgeWeights& weights, const Region& region, double p);

}  // namespace ipfpp

#endif  // IPFPP_EXPERIMENTS_H_
