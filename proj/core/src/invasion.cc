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

#include "ipfpp/invasion.h"

#include <functional>
#include <queue>
#include <utility>

#include "ipfpp/errors.h"

namespace ipfpp {

InvasionRecord invade(const EdgeWeights& weights, const Region& region) {
  if (weights.size() != region.edge_count()) throw ConfigError("edge weights do not match the region");
  if (region.is_boundary(0)) throw RegionError("the origin lies on the region boundary");

  using Entry = std::pair<double, EdgeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  std::vector<std::uint8_t> invaded(region.vertex_count(), 0);
  const int degree = 2 * region.dim();

  InvasionRecord rec;
  auto absorb = [&](VertexId v, std::size_t step) {
    invaded[v] = 1;
    rec.vertices.push_back({v, step});
    if (region.is_boundary(v)) return;
    // Every neighbor of a non-boundary vertex lies in the region. An edge
    // whose far end is already invaded is in the queue from that side.
    for (int k = 0; k < degree; ++k) {
      const VertexId u = region.neighbor(v, k);
      if (!invaded[u]) {
        const EdgeId e = region.incident_edge(v, k);
        frontier.emplace(weights[e], e);
      }
    }
  };

  absorb(0, 0);
  while (!frontier.empty()) {
    const auto [w, e] = frontier.top();
    frontier.pop();
    if (!frontier.empty() && frontier.top().first == w) ++rec.weight_ties;

    const std::size_t step = rec.edges.size() + 1;
    rec.edges.push_back({e, step, w});
    const auto [a, b] = region.endpoints(e);
    const VertexId fresh = invaded[a] ? (invaded[b] ? kNoVertex : b) : a;
    if (fresh == kNoVertex) continue;
    absorb(fresh, step);
    if (region.is_boundary(fresh)) {
      rec.first_boundary_vertex = fresh;
      rec.halted = true;
      break;
    }
  }
  return rec;
}

InvasionRecord invade(const Configuration& cfg, const Region& region) {
  return invade(EdgeWeights::FromConfiguration(cfg, region), region);
}

std::vector<std::uint8_t> invaded_before_boundary(const InvasionRecord& rec, const Region& region) {
  std::vector<std::uint8_t> mask(region.vertex_count(), 0);
  for (const InvadedVertex& iv : rec.vertices) {
    if (iv.vertex == rec.first_boundary_vertex) break;
    mask[iv.vertex] = 1;
  }
  return mask;
}

std::vector<EdgeId> ip_edge_order(const InvasionRecord& rec) {
  std::vector<EdgeId> order;
  order.reserve(rec.edges.size());
  for (const InvadedEdge& ie : rec.edges) order.push_back(ie.edge);
  return order;
}

}  // namespace ipfpp
