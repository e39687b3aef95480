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

#include "ipfpp/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "ipfpp/coupling.h"
#include "ipfpp/errors.h"
#include "ipfpp/fpp.h"
#include "ipfpp/invasion.h"

namespace ipfpp {
namespace {

struct Block {
  std::uint64_t begin;
  std::uint64_t end;
};

Block BlockFor(unsigned worker, unsigned workers, std::uint64_t n) {
  return {n * worker / workers, n * (worker + 1) / workers};
}

// Runs fn(worker, block) on `workers` threads and rethrows the exception of
// the lowest-numbered failing worker.
template <typename Fn>
void ForEachBlock(unsigned workers, std::uint64_t n, Fn fn) {
  workers = std::max(1u, workers);
  std::vector<std::exception_ptr> errors(workers);
  if (workers == 1) {
    fn(0u, BlockFor(0, 1, n));
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        fn(w, BlockFor(w, workers, n));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

EventCounts& EventCounts::operator+=(const EventCounts& o) {
  trials += o.trials;
  t_delta += o.t_delta;
  ip_contains_fpp += o.ip_contains_fpp;
  fpp_contains_ip += o.fpp_contains_ip;
  order_agreement += o.order_agreement;
  order_prefix += o.order_prefix;
  late_invasion += o.late_invasion;
  weight_ties += o.weight_ties;
  invasion_ties += o.invasion_ties;
  fpp_time_ties += o.fpp_time_ties;
  fpp_order_ties += o.fpp_order_ties;
  return *this;
}

DerivedParams derive_params(const Region& region, double epsilon_half, std::optional<double> k_override) {
  DerivedParams p;
  p.edge_count = static_cast<std::int64_t>(region.edge_count());
  p.epsilon_half = epsilon_half;
  p.delta = delta(p.edge_count, epsilon_half);
  const double theorem_k = k_param(p.edge_count, epsilon_half);
  if (k_override) {
    if (!(*k_override > 0.0) || !std::isfinite(*k_override)) {
      throw DomainError(fmt::format("K override must be positive and finite, got {}", *k_override));
    }
    p.k = *k_override;
    p.theorem_k = *k_override == theorem_k;
  } else {
    p.k = theorem_k;
    p.theorem_k = true;
  }
  p.k_policy = p.theorem_k ? "theorem" : "override";
  return p;
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  auto region = std::make_shared<const Region>(build_region(parse_region_kind(plan.region), plan.dimension));
  return run_experiment(plan, std::move(region));
}

ExperimentResult run_experiment(const ExperimentPlan& plan, std::shared_ptr<const Region> region) {
  if (plan.trials < 1) throw ConfigError("an experiment needs at least one trial");
  if (plan.workers < 1) throw ConfigError("an experiment needs at least one worker");
  const auto start = std::chrono::steady_clock::now();

  ExperimentResult result;
  result.params = derive_params(*region, plan.epsilon_half, plan.k_override);
  result.coupling_stats = plan.coupling_stats;

  std::optional<CouplingParams> coupling;
  if (plan.coupling_stats) {
    const double epsilon = 2.0 * plan.epsilon_half;
    if (!(epsilon < 1.0)) throw ConfigError("coupling statistics need epsilon = 2 * epsilon_half < 1");
    coupling = CouplingParams::Theorem(result.params.edge_count, epsilon);
    coupling->k = result.params.k;
    coupling->theorem_k = result.params.theorem_k;
    if (plan.inner_radius < 0 || plan.inner_radius >= region->boundary_distance()) {
      throw ConfigError(fmt::format("inner radius {} must lie in [0, {})", plan.inner_radius,
                                    region->boundary_distance()));
    }
  }

  const unsigned workers = plan.workers;
  std::vector<std::vector<std::uint64_t>> counts(workers);
  std::vector<EventCounts> events(workers);
  const double k = result.params.k;

  ForEachBlock(workers, plan.trials, [&](unsigned w, Block block) {
    std::vector<std::uint64_t>& local = counts[w];
    local.assign(region->vertex_count(), 0);
    EventCounts& ev = events[w];
    PassageTimeSolver solver(*region);
    auto tally = [&](const FppResult& res) {
      ev.fpp_time_ties += res.time_ties;
      for (const SettledVertex& s : res.settled) {
        if (s.vertex == res.first_boundary_vertex) break;
        ++local[s.vertex];
      }
    };
    for (std::uint64_t t = block.begin; t < block.end; ++t) {
      const Configuration cfg(plan.master_seed, t);
      const EdgeWeights weights = EdgeWeights::FromConfiguration(cfg, *region);
      ++ev.trials;
      if (coupling) {
        const CoupledTrial trial = run_coupled_trial(weights, *region, plan.inner_radius, *coupling);
        const CoupledOutcome& o = trial.outcome;
        ev.t_delta += o.t_delta_holds;
        ev.ip_contains_fpp += o.ip_contains_fpp;
        ev.fpp_contains_ip += o.fpp_contains_ip_on_inner;
        ev.order_agreement += o.order_agreement;
        ev.order_prefix += o.order_prefix;
        ev.late_invasion += o.late_invasion_in_inner;
        ev.weight_ties += o.diagnostics.weight_ties;
        ev.invasion_ties += o.diagnostics.invasion_ties;
        ev.fpp_order_ties += o.diagnostics.fpp_order_ties;
        enforce_hard_implications(trial, *region, weights, TrialId{plan.master_seed, t});
        tally(trial.fpp);
      } else {
        tally(solver.Run(weights, k));
      }
    }
  });

  result.grid.region = region;
  result.grid.trials = plan.trials;
  result.grid.counts.assign(region->vertex_count(), 0);
  for (unsigned w = 0; w < workers; ++w) {
    for (std::size_t v = 0; v < region->vertex_count(); ++v) result.grid.counts[v] += counts[w][v];
    result.events += events[w];
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double GapEventEstimate::standard_error() const {
  const double f = frequency();
  return std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
}

GapEventEstimate estimate_gap_event(const Region& region, double epsilon, std::uint64_t trials,
                                    std::uint64_t master_seed, unsigned workers) {
  GapEventEstimate estimate;
  estimate.trials = trials;
  estimate.delta = delta(static_cast<std::int64_t>(region.edge_count()), epsilon);
  workers = std::max(1u, workers);
  std::vector<std::uint64_t> hits(workers, 0);
  ForEachBlock(workers, trials, [&](unsigned w, Block block) {
    for (std::uint64_t t = block.begin; t < block.end; ++t) {
      const EdgeWeights weights = EdgeWeights::FromConfiguration(Configuration(master_seed, t), region);
      hits[w] += min_gap(weights.values()) >= estimate.delta ? 1 : 0;
    }
  });
  for (std::uint64_t h : hits) estimate.hits += h;
  return estimate;
}

ProportionField::ProportionField(int dim, std::vector<Vertex> points, std::vector<double> values,
                                 std::optional<std::int64_t> l1_radius)
    : dim_(dim), points_(std::move(points)), values_(std::move(values)), l1_radius_(l1_radius) {
  if (points_.size() != values_.size()) throw ConfigError("proportion field needs one value per point");
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() != dim_) throw DomainError("proportion field points must share one dimension");
    index_.emplace(points_[i], i);
  }
}

ProportionField ProportionField::FromGrid(const ProportionGrid& grid) {
  const Region& region = *grid.region;
  std::vector<double> values(region.vertex_count());
  for (std::size_t v = 0; v < values.size(); ++v) values[v] = grid.proportion(static_cast<VertexId>(v));
  return ProportionField(region.dim(), std::vector<Vertex>(region.vertices().begin(), region.vertices().end()),
                         std::move(values), region.l1_radius());
}

double ProportionField::at(const Vertex& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? 0.0 : values_[it->second];
}

std::vector<SlicePoint> slice(const ProportionField& field) {
  if (field.dim() != 2 || !field.l1_radius()) throw DomainError("slices are defined for planar l1-ball grids");
  const std::int64_t radius = *field.l1_radius();
  if (radius < 1) throw DomainError("slices need a radius of at least 1");
  std::vector<SlicePoint> out;
  out.reserve(2 * radius + 1);
  for (std::int64_t k = -radius; k <= radius; ++k) {
    const Vertex v{static_cast<std::int32_t>(k), 0};
    out.push_back({static_cast<double>(k) / static_cast<double>(radius), field.at(v)});
  }
  return out;
}

FitResult fit_alpha(std::span<const SlicePoint> points) {
  std::vector<double> xs, ys;
  for (const SlicePoint& p : points) {
    if (p.x_scaled == 0.0 || !(p.proportion > 0.0 && p.proportion < 1.0)) continue;
    xs.push_back(std::log(std::abs(p.x_scaled)));
    ys.push_back(std::log1p(-p.proportion));
  }
  if (xs.size() < 2) throw FitError(fmt::format("fit needs at least 2 usable points, got {}", xs.size()));

  const double n = static_cast<double>(xs.size());
  double sxy = 0.0, sxx = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += xs[i] * ys[i];
    sxx += xs[i] * xs[i];
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double cxy = 0.0, cxx = 0.0, cyy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cxy += (xs[i] - mx) * (ys[i] - my);
    cxx += (xs[i] - mx) * (xs[i] - mx);
    cyy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw FitError("fit is degenerate: every usable point has |x| = 1");

  FitResult fit;
  fit.alpha = sxy / sxx;
  fit.r = (cxx > 0.0 && cyy > 0.0) ? std::clamp(cxy / std::sqrt(cxx * cyy), -1.0, 1.0)
                                   : std::numeric_limits<double>::quiet_NaN();
  fit.points_used = xs.size();
  return fit;
}

LevelCurve level_curve(const ProportionField& field, double level) {
  if (field.dim() != 2) throw DomainError("level curves are defined for planar grids");
  LevelCurve curve;
  curve.isotropy_ratio = std::numeric_limits<double>::quiet_NaN();
  if (field.values().empty()) return curve;
  const auto [lo, hi] = std::minmax_element(field.values().begin(), field.values().end());
  if (level < *lo || level > *hi) return curve;

  const auto points = field.points();
  const auto values = field.values();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vertex& v = points[i];
    const double pv = values[i];
    for (int axis = 0; axis < 2; ++axis) {
      Vertex u = v;
      u[axis] += 1;
      if (!field.contains(u)) continue;
      const double pu = field.at(u);
      if ((pv < level) == (pu < level)) continue;
      const double t = (level - pv) / (pu - pv);
      const double x = v[0] + (axis == 0 ? t : 0.0);
      const double y = v[1] + (axis == 1 ? t : 0.0);
      curve.points.emplace_back(x, y);
    }
  }

  // Outward crossing distance along a ray k * (dx, dy), k = 0, 1, ...
  auto ray_crossing = [&](int dx, int dy) -> std::optional<double> {
    const double step = std::sqrt(static_cast<double>(dx * dx + dy * dy));
    for (std::int32_t k = 0;; ++k) {
      const Vertex here{k * dx, k * dy};
      const Vertex next{(k + 1) * dx, (k + 1) * dy};
      if (!field.contains(here) || !field.contains(next)) return std::nullopt;
      const double a = field.at(here);
      const double b = field.at(next);
      if (a >= level && b < level) return (k + (a - level) / (a - b)) * step;
    }
  };
  auto mean_over = [&](std::initializer_list<std::pair<int, int>> dirs) -> std::optional<double> {
    double sum = 0.0;
    int found = 0;
    for (auto [dx, dy] : dirs) {
      if (auto d = ray_crossing(dx, dy)) {
        sum += *d;
        ++found;
      }
    }
    if (found == 0) return std::nullopt;
    return sum / found;
  };
  const auto axes = mean_over({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  const auto diagonals = mean_over({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  if (axes && diagonals && *diagonals > 0.0) curve.isotropy_ratio = *axes / *diagonals;
  return curve;
}

std::vector<VertexId> cluster_at_level(const EdgeWeights& weights, const Region& region, double p) {
  if (weights.size() != region.edge_count()) throw ConfigError("edge weights do not match the region");
  std::vector<std::uint8_t> seen(region.vertex_count(), 0);
  std::vector<VertexId> stack{0}, cluster;
  seen[0] = 1;
  const int degree = 2 * region.dim();
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    cluster.push_back(v);
    for (int k = 0; k < degree; ++k) {
      const EdgeId e = region.incident_edge(v, k);
      if (e == kNoEdge || !(weights[e] < p)) continue;
      const VertexId u = region.neighbor(v, k);
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  std::sort(cluster.begin(), cluster.end());
  return cluster;
}

}  // namespace ipfpp
