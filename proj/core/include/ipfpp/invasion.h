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

#ifndef IPFPP_INVASION_H_
#define IPFPP_INVASION_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ipfpp/lattice.h"
#include "ipfpp/randomness.h"

namespace ipfpp {

// Tag written into every output derived from a halted invasion: the event
// "x is invaded" is approximated by "x is invaded before the first boundary
// vertex".
inline constexpr const char* kInvasionProxyTag = "invaded_before_first_boundary_vertex";

struct InvadedEdge {
  EdgeId edge;
  std::size_t step;  // 1-based
  double weight;
};

struct InvadedVertex {
  VertexId vertex;
  std::size_t step;  // 0 for the origin
};

// Trace of invasion percolation from the origin, halted right after the step
// that first invades a boundary vertex. Within a step the edge precedes the
// vertex it brings in.
struct InvasionRecord {
  std::vector<InvadedEdge> edges;
  std::vector<InvadedVertex> vertices;
  VertexId first_boundary_vertex = kNoVertex;
  bool halted = false;
  std::size_t weight_ties = 0;

  std::size_t steps() const { return edges.size(); }
};

// Greedy growth by minimal frontier weight. Ties are broken by canonical edge
// order (EdgeId) and counted.
InvasionRecord invade(const EdgeWeights& weights, const Region& region);
InvasionRecord invade(const Configuration& cfg, const Region& region);

// Vertices invaded strictly before the first boundary vertex, as a
// membership mask over the region's VertexIds.
std::vector<std::uint8_t> invaded_before_boundary(const InvasionRecord& rec, const Region& region);

// The invaded edges in invasion order.
std::vector<EdgeId> ip_edge_order(const InvasionRecord& rec);

}  // namespace ipfpp

#endif  // IPFPP_INVASION_H_
