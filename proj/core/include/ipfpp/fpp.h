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


// First passage percolation with edge passage times tau = e^{K w}.
//
// Shortest passage times from the origin are computed in the log domain and
// the search stops as soon as the first boundary vertex is settled. Every
// lattice path leaving the region crosses the boundary and every edge takes
// time at least 1, so times of vertices settled up to that point do not
// depend on anything outside the region. Vertices never settled are only
// known to have time >= boundary_time.
//
// At large K a rounded log value cannot tell apart two times that share
// their dominant edge: the difference sits e^{-K dw} below the total. Such
// comparisons are settled on the tree of shortest paths instead. Below the
// lowest common ancestor of the two paths the sums agree exactly, so only
// the two diverging segments are compared.

#ifndef IPFPP_FPP_H_
#define IPFPP_FPP_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ipfpp/lattice.h"
#include "ipfpp/log_time.h"
#include "ipfpp/randomness.h"

namespace ipfpp {

inline constexpr double kNoExtra = -std::numeric_limits<double>::infinity();

// Shortest-path tree over the settled vertices, with binary-lifting tables
// holding the log-sum-exp of every 2^j-edge segment.
class PathTree {
 public:
  void Reset(std::size_t vertex_count);
  // The origin is attached with parent kNoVertex.
  void Attach(VertexId v, VertexId parent, double edge_log, double log_time);

  double log_time(VertexId v) const { return log_time_[v]; }
  std::int32_t depth(VertexId v) const { return depth_[v]; }

  // Compares T(0, a) + e^{extra_a} with T(0, b) + e^{extra_b}; kNoExtra adds
  // nothing. Both vertices must be attached. Returns equivalent only for
  // times that agree to working precision after cancelling the shared path.
  std::partial_ordering Compare(VertexId a, double extra_a, VertexId b, double extra_b) const;

 private:
  VertexId Up(int level, VertexId v) const { return up_[static_cast<std::size_t>(level) * n_ + v]; }
  double Segment(int level, VertexId v) const { return segment_[static_cast<std::size_t>(level) * n_ + v]; }

  std::size_t n_ = 0;
  int levels_ = 0;
  std::vector<double> log_time_;
  std::vector<std::int32_t> depth_;
  std::vector<VertexId> up_;
  std::vector<double> segment_;
};

struct SettledVertex {
  VertexId vertex;
  LogTime time;          // rounded; exact comparisons go through the tree
  VertexId predecessor;  // kNoVertex for the origin
};

struct FppResult {
  std::vector<SettledVertex> settled;  // in settle order, origin first
  LogTime boundary_time;
  VertexId first_boundary_vertex = kNoVertex;
  // Per region vertex: position in `settled`, or -1.
  std::vector<std::int32_t> settle_rank;
  std::size_t time_ties = 0;
  PathTree tree;

  bool is_settled(VertexId v) const { return settle_rank[v] >= 0; }
  // Time of a settled vertex; nullopt means "at least boundary_time".
  std::optional<LogTime> time_of(VertexId v) const;
};

// Reusable truncated Dijkstra over one region. Keeps its buffers between
// runs, so a worker can process many trials without reallocating.
class PassageTimeSolver {
 public:
  explicit PassageTimeSolver(const Region& region);

  const FppResult& Run(const EdgeWeights& weights, double k);
  const FppResult& result() const { return result_; }

 private:
  struct Entry {
    double log_value;
    VertexId source;
    double edge_log;
    VertexId target;
  };

  const Region& region_;
  FppResult result_;
  std::vector<Entry> heap_;
  std::vector<VertexId> best_source_;
  std::vector<double> best_edge_log_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

FppResult dijkstra(const EdgeWeights& weights, const Region& region, double k);
FppResult dijkstra(const Configuration& cfg, const Region& region, double k);

// Passage time to an edge: min over its endpoints of T(0, v), plus tau(e).
// If neither endpoint is settled the value is a lower bound equal to
// boundary_time. `anchor` is the earlier settled endpoint.
struct EdgeTime {
  LogTime time;
  bool lower_bound = false;
  VertexId anchor = kNoVertex;
  double edge_log = kNoExtra;
};

EdgeTime edge_time(const FppResult& res, const Region& region, const EdgeWeights& weights, double k, EdgeId e);

// Exact comparison of two edge times that are not lower bounds.
std::partial_ordering compare_edge_times(const FppResult& res, const EdgeTime& a, const EdgeTime& b);

struct FppEdgeOrder {
  std::vector<EdgeId> edges;
  std::size_t ties = 0;
};

// Sorts edges by edge_time; lower bounds go last, ties fall back to
// canonical edge order and are counted.
FppEdgeOrder fpp_edge_order(const FppResult& res, const Region& region, const EdgeWeights& weights, double k,
                            std::span<const EdgeId> edges);

// True iff T(0, x) < T(0, boundary).
bool beats_boundary(const FppResult& res, VertexId x);
bool beats_boundary(const FppResult& res, const Region& region, const Vertex& x);

}  // namespace ipfpp

#endif  // IPFPP_FPP_H_
