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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ipfpp/errors.h"
#include "ipfpp/fpp_high_precision.h"
#include "oracles.h"

namespace ipfpp {
namespace {

using testing::E1;

VertexId Id(const Region& region, const Vertex& v) { return *region.index_of(v); }

std::vector<EdgeId> AllEdges(const Region& region) {
  std::vector<EdgeId> out(region.edge_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<EdgeId>(i);
  return out;
}

TEST(Dijkstra, WorkedLineExampleAtUnitK) {
  const auto [region, weights] = testing::worked_example();
  const FppResult res = dijkstra(weights, region, 1.0);
  ASSERT_EQ(res.settled.size(), 4u);
  const std::vector<Vertex> order = {Vertex{0}, Vertex{1}, Vertex{-1}, Vertex{2}};
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(region.vertex(res.settled[i].vertex), order[i]);
  EXPECT_TRUE(res.settled[0].time.is_zero());
  EXPECT_NEAR(std::exp(res.time_of(Id(region, Vertex{1}))->log_value()), 1.105170918075647631, 1e-15);
  EXPECT_NEAR(std::exp(res.time_of(Id(region, Vertex{-1}))->log_value()), 1.349858807576003089, 1e-15);
  EXPECT_NEAR(std::exp(res.boundary_time.log_value()), 2.326573676235817478, 1e-15);
  EXPECT_EQ(region.vertex(res.first_boundary_vertex), Vertex{2});
  EXPECT_FALSE(res.is_settled(Id(region, Vertex{-2})));
  EXPECT_EQ(res.time_of(Id(region, Vertex{-2})), std::nullopt);
}

TEST(Dijkstra, SettleTimesStrictlyIncrease) {
  const Region region = build_region(L1Ball{8}, 2);
  PassageTimeSolver solver(region);
  for (double k : {40.0, k_param(static_cast<std::int64_t>(region.edge_count()), 0.005)}) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const FppResult& res = solver.Run(EdgeWeights::FromConfiguration(Configuration(21, t), region), k);
      for (std::size_t i = 1; i < res.settled.size(); ++i) {
        EXPECT_LE(res.settled[i - 1].time, res.settled[i].time);
        EXPECT_TRUE(res.tree.Compare(res.settled[i - 1].vertex, kNoExtra, res.settled[i].vertex, kNoExtra) < 0);
      }
      EXPECT_EQ(res.settled.back().vertex, res.first_boundary_vertex);
      EXPECT_EQ(res.time_ties, 0u);
    }
  }
}

TEST(Dijkstra, SolverReuseMatchesFreshRuns) {
  const Region region = build_region(L1Ball{6}, 2);
  PassageTimeSolver solver(region);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(22, t), region);
    const FppResult& reused = solver.Run(w, 3.0);
    const FppResult fresh = dijkstra(w, region, 3.0);
    ASSERT_EQ(reused.settled.size(), fresh.settled.size());
    for (std::size_t i = 0; i < fresh.settled.size(); ++i) {
      EXPECT_EQ(reused.settled[i].vertex, fresh.settled[i].vertex);
      EXPECT_EQ(reused.settled[i].time.log_value(), fresh.settled[i].time.log_value());
    }
    EXPECT_EQ(reused.settle_rank, fresh.settle_rank);
  }
}

TEST(Dijkstra, MatchesPathEnumeration) {
  const Region region = build_region(L1Ball{2}, 2);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(23, t), region);
    for (double k : {0.5, 5.0, 60.0}) {
      const FppResult res = dijkstra(w, region, k);
      const auto oracle = testing::path_enumeration_log_times(region, w, k);
      for (const SettledVertex& s : res.settled) {
        if (s.vertex == 0) continue;
        EXPECT_NEAR(s.time.log_value(), static_cast<double>(oracle[s.vertex]), 1e-12) << "trial " << t << " K " << k;
      }
    }
  }
}

// K = 100 keeps every relative gap above the 50-digit resolution.
TEST(Dijkstra, MatchesHighPrecision) {
  for (const auto& [kind, dim] : testing::small_regions()) {
    const Region region = build_region(kind, dim);
    for (std::uint64_t t = 0; t < 20; ++t) {
      const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(24, t), region);
      for (double k : {1.0, 30.0, 100.0}) {
        const FppResult res = dijkstra(w, region, k);
        const auto wide = dijkstra_high_precision(w, region, k);
        ASSERT_EQ(wide.size(), res.settled.size()) << region.description();
        for (std::size_t i = 0; i < wide.size(); ++i) {
          EXPECT_EQ(wide[i].vertex, res.settled[i].vertex);
          if (i == 0) continue;
          EXPECT_NEAR(res.settled[i].time.log_value(), wide[i].log_value, 1e-13 * std::abs(wide[i].log_value));
        }
      }
    }
  }
}

TEST(Dijkstra, HighPrecisionModeIsBounded) {
  const Region region = build_region(L1Ball{5}, 2);
  const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(0, 0), region);
  EXPECT_THROW(dijkstra_high_precision(w, region, 1.0), RegionError);
}

TEST(Dijkstra, HugeKStaysFinite) {
  const Region region = build_region(L1Ball{20}, 2);
  const FppResult res = dijkstra(Configuration(25, 0), region, 3.5e12);
  EXPECT_TRUE(std::isfinite(res.boundary_time.log_value()));
  EXPECT_GT(res.boundary_time.log_value(), 0.0);
}

TEST(Dijkstra, RejectsBadK) {
  const auto [region, weights] = testing::worked_example();
  EXPECT_THROW(dijkstra(weights, region, 0.0), DomainError);
  EXPECT_THROW(dijkstra(weights, region, std::numeric_limits<double>::infinity()), DomainError);
}

TEST(EdgeTime, WorkedLineExample) {
  const auto [region, weights] = testing::worked_example();
  const FppResult res = dijkstra(weights, region, 1.0);
  const EdgeTime right = edge_time(res, region, weights, 1.0, *region.edge_index(E1(1, 2)));
  EXPECT_FALSE(right.lower_bound);
  EXPECT_NEAR(std::exp(right.time.log_value()), 2.326573676235817478, 1e-15);
  const EdgeTime far_left = edge_time(res, region, weights, 1.0, *region.edge_index(E1(-2, -1)));
  EXPECT_NEAR(std::exp(far_left.time.log_value()), 2.401129903952027132, 1e-15);
  // Edges at the origin cost exactly their own passage time.
  const EdgeTime at_origin = edge_time(res, region, weights, 1.0, *region.edge_index(E1(-1, 0)));
  EXPECT_EQ(at_origin.time.log_value(), 0.3);
}

TEST(EdgeTime, UnsettledEdgesAreLowerBounds) {
  const auto [region, weights] = testing::worked_example();
  const double k = std::log(4.0) / 0.05;
  const FppResult res = dijkstra(weights, region, k);
  ASSERT_EQ(res.settled.size(), 3u);
  const EdgeTime far_left = edge_time(res, region, weights, k, *region.edge_index(E1(-2, -1)));
  EXPECT_TRUE(far_left.lower_bound);
  EXPECT_EQ(far_left.time.log_value(), res.boundary_time.log_value());
}

TEST(FppEdgeOrder, WorkedLineExample) {
  const auto [region, weights] = testing::worked_example();
  const auto edges = AllEdges(region);
  auto names = [&](const FppEdgeOrder& order) {
    std::vector<Edge> out;
    for (EdgeId e : order.edges) out.push_back(region.edge(e));
    return out;
  };
  EXPECT_EQ(names(fpp_edge_order(dijkstra(weights, region, 1.0), region, weights, 1.0, edges)),
            (std::vector<Edge>{E1(0, 1), E1(-1, 0), E1(1, 2), E1(-2, -1)}));
  const double k = std::log(4.0) / 0.05;
  EXPECT_NEAR(k, 27.72588722239781, 1e-12);
  EXPECT_EQ(names(fpp_edge_order(dijkstra(weights, region, k), region, weights, k, edges)),
            (std::vector<Edge>{E1(0, 1), E1(1, 2), E1(-1, 0), E1(-2, -1)}));
  const std::vector<EdgeId> one = {edges[2]};
  EXPECT_EQ(fpp_edge_order(dijkstra(weights, region, 1.0), region, weights, 1.0, one).edges, one);
}

TEST(BeatsBoundary, WorkedLineExample) {
  const auto [region, weights] = testing::worked_example();
  const FppResult res = dijkstra(weights, region, 1.0);
  EXPECT_TRUE(beats_boundary(res, 0));
  EXPECT_TRUE(beats_boundary(res, region, Vertex{1}));
  EXPECT_TRUE(beats_boundary(res, region, Vertex{-1}));
  EXPECT_FALSE(beats_boundary(res, region, Vertex{2}));
  EXPECT_FALSE(beats_boundary(res, region, Vertex{-2}));
  EXPECT_FALSE(beats_boundary(res, region, Vertex{3}));
}

// Every settled vertex other than the origin is reached through its
// cheapest incident edge.
TEST(EdgeTime, VertexTimeIsMinimumOverIncidentEdges) {
  const Region region = build_region(L1Ball{5}, 2);
  const double k = k_param(static_cast<std::int64_t>(region.edge_count()), 0.05);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(26, t), region);
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
      EXPECT_NEAR(best, s.time.log_value(), 1e-12 * std::max(1.0, std::abs(best)));
    }
  }
}

// Edge times follow the recursion through adjacent edges.
TEST(EdgeTime, RecursionThroughAdjacentEdges) {
  const Region region = build_region(L1Ball{5}, 2);
  const double k = k_param(static_cast<std::int64_t>(region.edge_count()), 0.05);
  std::size_t checked = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(27, t), region);
    const FppResult res = dijkstra(w, region, k);
    for (std::size_t i = 0; i < region.edge_count(); ++i) {
      const auto e = static_cast<EdgeId>(i);
      const auto [a, b] = region.endpoints(e);
      if (a == 0 || b == 0 || !res.is_settled(a) || !res.is_settled(b)) continue;
      double best = std::numeric_limits<double>::infinity();
      for (VertexId end : {a, b}) {
        for (int j = 0; j < 2 * region.dim(); ++j) {
          const EdgeId f = region.incident_edge(end, j);
          if (f == kNoEdge || f == e) continue;
          best = std::min(best, edge_time(res, region, w, k, f).time.log_value());
        }
      }
      const double expected = logtime_add(LogTime::FromLog(best), tau(w[e], k)).log_value();
      EXPECT_NEAR(edge_time(res, region, w, k, e).time.log_value(), expected, 1e-12 * std::abs(expected));
      ++checked;
    }
  }
  EXPECT_GT(checked, 0u);
}

// On gap-event trials the order margins dwarf any rounding in the log
// domain: shifting every edge's log passage time by the error budget for
// long paths changes neither the settle order nor the edge order.
TEST(Dijkstra, OrderDecisionsSurviveLogPerturbation) {
  const Region region = build_region(L1Ball{5}, 2);
  const auto n = static_cast<std::int64_t>(region.edge_count());
  const double k = k_param(n, 0.05);
  const double gap = delta(n, 0.1);
  const auto all = AllEdges(region);
  std::size_t gap_trials = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(28, t), region);
    if (min_gap(w.values()) < gap) continue;
    ++gap_trials;
    const double budget = 1e6 * std::numeric_limits<double>::epsilon() * k;
    std::vector<double> shifted(w.values().begin(), w.values().end());
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += (i % 2 == 0 ? budget : -budget) / k;
    const EdgeWeights v = EdgeWeights::FromValues(region, shifted);
    const FppResult a = dijkstra(w, region, k);
    const FppResult b = dijkstra(v, region, k);
    ASSERT_EQ(a.settled.size(), b.settled.size());
    for (std::size_t i = 0; i < a.settled.size(); ++i) EXPECT_EQ(a.settled[i].vertex, b.settled[i].vertex);
    EXPECT_EQ(fpp_edge_order(a, region, w, k, all).edges, fpp_edge_order(b, region, v, k, all).edges);
  }
  EXPECT_GT(gap_trials, 150u);
}

}  // namespace
}  // namespace ipfpp
