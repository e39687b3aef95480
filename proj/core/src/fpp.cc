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


#include "ipfpp/fpp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <tuple>

#include <fmt/format.h>

#include "ipfpp/errors.h"

namespace ipfpp {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline double Lse(double a, double b) { return logtime_add(LogTime::FromLog(a), LogTime::FromLog(b)).log_value(); }

// Rounding budget for a log value built from `adds` log-sum-exp steps.
// Zero when either side is exactly zero time, which compares exactly.
inline double Budget(double x, double y, std::int64_t adds) {
  if (std::isinf(x) || std::isinf(y)) return 0.0;
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return 4.0 * kEps * scale * static_cast<double>(adds + 2);
}

}  // namespace

void PathTree::Reset(std::size_t vertex_count) {
  if (n_ != vertex_count) {
    n_ = vertex_count;
    levels_ = std::max(1, static_cast<int>(std::bit_width(vertex_count)));
    log_time_.assign(n_, 0.0);
    depth_.assign(n_, 0);
    up_.assign(static_cast<std::size_t>(levels_) * n_, kNoVertex);
    segment_.assign(static_cast<std::size_t>(levels_) * n_, kNoExtra);
  }
}

void PathTree::Attach(VertexId v, VertexId parent, double edge_log, double log_time) {
  log_time_[v] = log_time;
  depth_[v] = parent == kNoVertex ? 0 : depth_[parent] + 1;
  up_[v] = parent;
  segment_[v] = edge_log;
  for (int j = 1; j < levels_; ++j) {
    const VertexId mid = Up(j - 1, v);
    const std::size_t slot = static_cast<std::size_t>(j) * n_ + v;
    if (mid == kNoVertex || Up(j - 1, mid) == kNoVertex) {
      up_[slot] = kNoVertex;
      continue;
    }
    up_[slot] = Up(j - 1, mid);
    segment_[slot] = Lse(Segment(j - 1, v), Segment(j - 1, mid));
  }
}

std::partial_ordering PathTree::Compare(VertexId a, double extra_a, VertexId b, double extra_b) const {
  const double la = Lse(log_time_[a], extra_a);
  const double lb = Lse(log_time_[b], extra_b);
  const double budget = Budget(la, lb, depth_[a] + depth_[b]);
  if (la + budget < lb) return std::partial_ordering::less;
  if (lb + budget < la) return std::partial_ordering::greater;

  // Sum the two segments hanging below the lowest common ancestor.
  double left = kNoExtra, right = kNoExtra;
  auto lift = [&](VertexId& v, std::int32_t steps, double& acc) {
    for (int j = 0; steps != 0; ++j, steps >>= 1) {
      if (steps & 1) {
        acc = Lse(acc, Segment(j, v));
        v = Up(j, v);
      }
    }
  };
  if (depth_[a] > depth_[b]) lift(a, depth_[a] - depth_[b], left);
  if (depth_[b] > depth_[a]) lift(b, depth_[b] - depth_[a], right);
  if (a != b) {
    for (int j = levels_ - 1; j >= 0; --j) {
      if (Up(j, a) != Up(j, b)) {
        left = Lse(left, Segment(j, a));
        right = Lse(right, Segment(j, b));
        a = Up(j, a);
        b = Up(j, b);
      }
    }
    left = Lse(left, Segment(0, a));
    right = Lse(right, Segment(0, b));
  }
  left = Lse(left, extra_a);
  right = Lse(right, extra_b);
  if (left == right) return std::partial_ordering::equivalent;
  const double exact_budget = Budget(left, right, 4 * levels_);
  if (left + exact_budget < right) return std::partial_ordering::less;
  if (right + exact_budget < left) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::optional<LogTime> FppResult::time_of(VertexId v) const {
  const std::int32_t rank = settle_rank[v];
  if (rank < 0) return std::nullopt;
  return settled[rank].time;
}

PassageTimeSolver::PassageTimeSolver(const Region& region)
    : region_(region),
      best_source_(region.vertex_count(), kNoVertex),
      best_edge_log_(region.vertex_count(), kNoExtra),
      stamp_(region.vertex_count(), 0) {
  result_.settle_rank.assign(region.vertex_count(), -1);
  result_.tree.Reset(region.vertex_count());
}

const FppResult& PassageTimeSolver::Run(const EdgeWeights& weights, double k) {
  if (weights.size() != region_.edge_count()) throw ConfigError("edge weights do not match the region");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError(fmt::format("K must be positive and finite, got {}", k));

  for (const SettledVertex& s : result_.settled) result_.settle_rank[s.vertex] = -1;
  result_.settled.clear();
  result_.time_ties = 0;
  result_.first_boundary_vertex = kNoVertex;
  result_.boundary_time = LogTime::Zero();
  heap_.clear();
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }

  PathTree& tree = result_.tree;
  // Min-heap order: exact time, then lexicographic rank of the target.
  auto later = [&](const Entry& x, const Entry& y) {
    const auto c = tree.Compare(x.source, x.edge_log, y.source, y.edge_log);
    if (c != 0) return c > 0;
    return std::pair(region_.lex_rank(x.target), x.source) > std::pair(region_.lex_rank(y.target), y.source);
  };

  const int degree = 2 * region_.dim();
  auto settle = [&](VertexId v, VertexId source, double edge_log, double log_value) {
    result_.settle_rank[v] = static_cast<std::int32_t>(result_.settled.size());
    result_.settled.push_back({v, LogTime::FromLog(log_value), source});
    tree.Attach(v, source, edge_log, log_value);
    if (region_.is_boundary(v)) {
      result_.first_boundary_vertex = v;
      result_.boundary_time = LogTime::FromLog(log_value);
      return;
    }
    // v is interior, so all of its neighbors lie in the region.
    for (int j = 0; j < degree; ++j) {
      const VertexId u = region_.neighbor(v, j);
      if (result_.settle_rank[u] >= 0) continue;
      const double edge = tau(weights[region_.incident_edge(v, j)], k).log_value();
      if (stamp_[u] == generation_) {
        const auto c = tree.Compare(v, edge, best_source_[u], best_edge_log_[u]);
        if (c == 0) ++result_.time_ties;
        if (c >= 0) continue;
      }
      stamp_[u] = generation_;
      best_source_[u] = v;
      best_edge_log_[u] = edge;
      heap_.push_back({Lse(log_value, edge), v, edge, u});
      std::push_heap(heap_.begin(), heap_.end(), later);
    }
  };

  settle(0, kNoVertex, kNoExtra, kNoExtra);
  while (result_.first_boundary_vertex == kNoVertex && !heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), later);
    const Entry top = heap_.back();
    heap_.pop_back();
    if (result_.settle_rank[top.target] >= 0) continue;
    if (tree.Compare(result_.settled.back().vertex, kNoExtra, top.source, top.edge_log) == 0) ++result_.time_ties;
    settle(top.target, top.source, top.edge_log, top.log_value);
  }
  return result_;
}

FppResult dijkstra(const EdgeWeights& weights, const Region& region, double k) {
  PassageTimeSolver solver(region);
  return solver.Run(weights, k);
}

FppResult dijkstra(const Configuration& cfg, const Region& region, double k) {
  return dijkstra(EdgeWeights::FromConfiguration(cfg, region), region, k);
}

EdgeTime edge_time(const FppResult& res, const Region& region, const EdgeWeights& weights, double k, EdgeId e) {
  auto [a, b] = region.endpoints(e);
  if (!res.is_settled(a) && !res.is_settled(b)) return {res.boundary_time, true, kNoVertex, kNoExtra};
  // An unsettled endpoint has time >= boundary_time >= any settled time.
  if (!res.is_settled(a) || (res.is_settled(b) && res.settle_rank[b] < res.settle_rank[a])) std::swap(a, b);
  // A tree edge reaches its far endpoint exactly at that endpoint's time.
  if (res.is_settled(b) && res.settled[res.settle_rank[b]].predecessor == a) {
    return {res.settled[res.settle_rank[b]].time, false, b, kNoExtra};
  }
  const LogTime step = tau(weights[e], k);
  return {logtime_add(res.settled[res.settle_rank[a]].time, step), false, a, step.log_value()};
}

std::partial_ordering compare_edge_times(const FppResult& res, const EdgeTime& a, const EdgeTime& b) {
  return res.tree.Compare(a.anchor, a.edge_log, b.anchor, b.edge_log);
}

FppEdgeOrder fpp_edge_order(const FppResult& res, const Region& region, const EdgeWeights& weights, double k,
                            std::span<const EdgeId> edges) {
  struct Keyed {
    EdgeTime time;
    EdgeId edge;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(edges.size());
  for (EdgeId e : edges) keyed.push_back({edge_time(res, region, weights, k, e), e});
  std::sort(keyed.begin(), keyed.end(), [&](const Keyed& x, const Keyed& y) {
    if (x.time.lower_bound != y.time.lower_bound) return y.time.lower_bound;
    if (!x.time.lower_bound) {
      const auto c = compare_edge_times(res, x.time, y.time);
      if (c != 0) return c < 0;
    }
    return x.edge < y.edge;
  });
  FppEdgeOrder order;
  order.edges.reserve(keyed.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    const Keyed& cur = keyed[i];
    if (i > 0 && !cur.time.lower_bound && !keyed[i - 1].time.lower_bound &&
        compare_edge_times(res, keyed[i - 1].time, cur.time) == 0) {
      ++order.ties;
    }
    order.edges.push_back(cur.edge);
  }
  return order;
}

bool beats_boundary(const FppResult& res, VertexId x) {
  const std::int32_t rank = res.settle_rank[x];
  if (rank < 0 || rank >= res.settle_rank[res.first_boundary_vertex]) return false;
  return res.tree.Compare(x, kNoExtra, res.first_boundary_vertex, kNoExtra) < 0;
}

bool beats_boundary(const FppResult& res, const Region& region, const Vertex& x) {
  const auto id = region.index_of(x);
  return id && beats_boundary(res, *id);
}

}  // namespace ipfpp
