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

// Geometry of the integer lattice Z^d with nearest-neighbor edges, and
// finite regions around the origin with their boundary and edge set.

#ifndef IPFPP_LATTICE_H_
#define IPFPP_LATTICE_H_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace ipfpp {

inline constexpr int kMaxDimension = 8;

// A point of Z^d. Ordering and equality are lexicographic on the coordinates;
// vertices of different dimension never compare equal.
class Vertex {
 public:
  Vertex() = default;
  Vertex(std::initializer_list<std::int32_t> coords);
  explicit Vertex(std::span<const std::int32_t> coords);

  static Vertex Origin(int dim);

  int dim() const { return dim_; }
  std::int32_t operator[](int axis) const { return coords_[axis]; }
  std::int32_t& operator[](int axis) { return coords_[axis]; }
  std::span<const std::int32_t> coords() const { return {coords_.data(), static_cast<std::size_t>(dim_)}; }

  bool is_origin() const;

  // Unused trailing coordinates are always zero, so the defaulted comparison
  // is lexicographic on the live coordinates once dimensions agree.
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
  friend bool operator==(const Vertex&, const Vertex&) = default;

  std::string ToString() const;

 private:
  std::uint8_t dim_ = 0;
  std::array<std::int32_t, kMaxDimension> coords_{};
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept;
};

// An undirected nearest-neighbor edge in canonical orientation (lo < hi).
struct Edge {
  Vertex lo;
  Vertex hi;

  // Coordinate along which lo and hi differ.
  int axis() const;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;

  std::string ToString() const;
};

std::int64_t l1_norm(const Vertex& v);

// The 2d nearest neighbors of v in (axis, sign) order: -e_0, +e_0, -e_1, ...
std::vector<Vertex> neighbors(const Vertex& v);

// Throws AdjacencyError unless u and v are nearest neighbors.
Edge canonical_edge(const Vertex& u, const Vertex& v);

bool are_adjacent(const Vertex& u, const Vertex& v);

// ---------------------------------------------------------------------------
// Region kinds.

// {v : |v|_1 <= radius}.
struct L1Ball {
  std::int64_t radius = 0;
};

// d = 2 only: {-x + |y| <= radius for x <= 0, 2x + |y| <= radius for x > 0}.
struct Lopsided {
  std::int64_t radius = 0;
};

// Arbitrary membership predicate. When scan_radius is set, the build also
// scans the l-infinity box of that radius for members not connected to the
// origin and reports them as a warning.
struct CustomRegion {
  std::string name;
  std::function<bool(const Vertex&)> contains;
  std::optional<std::int64_t> scan_radius;
};

using RegionKind = std::variant<L1Ball, Lopsided, CustomRegion>;

// Parses "l1:R", "lopsided:R" or the built-in "linf:R" (the cube
// max_i |v_i| <= R). Throws RegionError on malformed input.
RegionKind parse_region_kind(std::string_view text);

std::string describe(const RegionKind& kind);

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

struct RegionOptions {
  // Hard cap on the number of vertices; guards unbounded custom predicates.
  std::size_t vertex_cap = std::size_t{1} << 26;
};

// A finite connected set of lattice vertices containing the origin.
//
// Vertices are numbered in breadth-first layer order from the origin, and
// lexicographically within a layer, so vertex 0 is always the origin. Edges
// are all nearest-neighbor pairs with both endpoints inside, numbered in
// canonical (lo, hi) lexicographic order. Immutable once built.
class Region {
 public:
  static Region Build(const RegionKind& kind, int dim, const RegionOptions& options = {});

  int dim() const { return dim_; }
  const std::string& description() const { return description_; }
  bool is_l1_ball() const { return l1_radius_.has_value(); }
  // Radius of the l1 ball, if this region is one.
  std::optional<std::int64_t> l1_radius() const { return l1_radius_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const VertexId> boundary() const { return boundary_; }

  const Vertex& vertex(VertexId id) const { return vertices_[id]; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }
  bool is_boundary(VertexId id) const { return is_boundary_[id] != 0; }
  bool contains(const Vertex& v) const { return index_.contains(v); }
  std::optional<VertexId> index_of(const Vertex& v) const;
  std::optional<EdgeId> edge_index(const Edge& e) const;

  // Neighbor of `id` in direction k (same order as neighbors()); kNoVertex
  // when that neighbor lies outside the region.
  VertexId neighbor(VertexId id, int k) const { return adjacency_[static_cast<std::size_t>(id) * 2 * dim_ + k]; }
  // Region edge joining `id` to neighbor(id, k), or kNoEdge.
  EdgeId incident_edge(VertexId id, int k) const {
    return incident_[static_cast<std::size_t>(id) * 2 * dim_ + k];
  }
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return endpoints_[e]; }
  // Position of the vertex in the global lexicographic order.
  std::int32_t lex_rank(VertexId id) const { return lex_rank_[id]; }

  // Smallest l1 norm over boundary vertices.
  std::int64_t boundary_distance() const { return boundary_distance_; }
  // Largest absolute coordinate over the region.
  std::int64_t max_abs_coordinate() const { return max_abs_coordinate_; }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Region() = default;

  int dim_ = 0;
  std::string description_;
  std::optional<std::int64_t> l1_radius_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<VertexId> boundary_;
  std::vector<std::uint8_t> is_boundary_;
  std::vector<VertexId> adjacency_;
  std::vector<EdgeId> incident_;
  std::vector<std::pair<VertexId, VertexId>> endpoints_;
  std::vector<std::int32_t> lex_rank_;
  std::unordered_map<Vertex, VertexId, VertexHash> index_;
  std::int64_t boundary_distance_ = 0;
  std::int64_t max_abs_coordinate_ = 0;
  std::vector<std::string> warnings_;
};

// Convenience wrapper around Region::Build.
Region build_region(const RegionKind& kind, int dim, const RegionOptions& options = {});

}  // namespace ipfpp

#endif  // IPFPP_LATTICE_H_
