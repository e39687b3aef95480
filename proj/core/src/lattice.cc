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

#include "ipfpp/lattice.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

#include "ipfpp/errors.h"

namespace ipfpp {
namespace {

// Coordinates stay well inside int32 so neighbor arithmetic never overflows.
constexpr std::int64_t kCoordinateLimit = std::int64_t{1} << 30;

void CheckDimension(int dim) {
  if (dim < 1 || dim > kMaxDimension) {
    throw DomainError(fmt::format("dimension must be in [1, {}], got {}", kMaxDimension, dim));
  }
}

std::int64_t ParseRadius(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value < 0) {
    throw RegionError(fmt::format("invalid region radius in '{}'", whole));
  }
  return value;
}

bool LopsidedContains(const Vertex& v, std::int64_t radius) {
  const std::int64_t x = v[0];
  const std::int64_t y = std::abs(static_cast<std::int64_t>(v[1]));
  return x <= 0 ? (-x + y <= radius) : (2 * x + y <= radius);
}

}  // namespace

Vertex::Vertex(std::initializer_list<std::int32_t> coords)
    : Vertex(std::span<const std::int32_t>(coords.begin(), coords.size())) {}

Vertex::Vertex(std::span<const std::int32_t> coords) {
  CheckDimension(static_cast<int>(coords.size()));
  dim_ = static_cast<std::uint8_t>(coords.size());
  std::copy(coords.begin(), coords.end(), coords_.begin());
}

Vertex Vertex::Origin(int dim) {
  CheckDimension(dim);
  Vertex v;
  v.dim_ = static_cast<std::uint8_t>(dim);
  return v;
}

bool Vertex::is_origin() const {
  return std::all_of(coords_.begin(), coords_.begin() + dim_, [](std::int32_t c) { return c == 0; });
}

std::string Vertex::ToString() const {
  std::string out = "(";
  for (int i = 0; i < dim_; ++i) {
    if (i > 0) out += ",";
    out += std::to_string(coords_[i]);
  }
  out += ")";
  return out;
}

std::size_t VertexHash::operator()(const Vertex& v) const noexcept {
  // FNV-1a over the live coordinates.
  std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(v.dim());
  for (std::int32_t c : v.coords()) {
    h ^= static_cast<std::uint32_t>(c);
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

int Edge::axis() const {
  for (int i = 0; i < lo.dim(); ++i) {
    if (lo[i] != hi[i]) return i;
  }
  return -1;
}

std::string Edge::ToString() const { return lo.ToString() + "-" + hi.ToString(); }

std::int64_t l1_norm(const Vertex& v) {
  std::int64_t sum = 0;
  for (std::int32_t c : v.coords()) sum += std::abs(static_cast<std::int64_t>(c));
  return sum;
}

std::vector<Vertex> neighbors(const Vertex& v) {
  std::vector<Vertex> out;
  out.reserve(2 * static_cast<std::size_t>(v.dim()));
  for (int axis = 0; axis < v.dim(); ++axis) {
    Vertex down = v;
    down[axis] -= 1;
    out.push_back(down);
    Vertex up = v;
    up[axis] += 1;
    out.push_back(up);
  }
  return out;
}

bool are_adjacent(const Vertex& u, const Vertex& v) {
  if (u.dim() != v.dim()) return false;
  std::int64_t distance = 0;
  for (int i = 0; i < u.dim(); ++i) {
    distance += std::abs(static_cast<std::int64_t>(u[i]) - v[i]);
  }
  return distance == 1;
}

Edge canonical_edge(const Vertex& u, const Vertex& v) {
  if (!are_adjacent(u, v)) {
    throw AdjacencyError(fmt::format("{} and {} are not nearest neighbors", u.ToString(), v.ToString()));
  }
  return u < v ? Edge{u, v} : Edge{v, u};
}

RegionKind parse_region_kind(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw RegionError(fmt::format("region spec '{}' must look like l1:R, lopsided:R or linf:R", text));
  }
  const std::string_view name = text.substr(0, colon);
  const std::int64_t radius = ParseRadius(text.substr(colon + 1), text);
  if (name == "l1") return L1Ball{radius};
  if (name == "lopsided") return Lopsided{radius};
  if (name == "linf") {
    return CustomRegion{
        fmt::format("linf:{}", radius),
        [radius](const Vertex& v) {
          return std::all_of(v.coords().begin(), v.coords().end(),
                             [radius](std::int32_t c) { return std::abs(static_cast<std::int64_t>(c)) <= radius; });
        },
        radius};
  }
  throw RegionError(fmt::format("unknown region kind '{}' in '{}'", name, text));
}

std::string describe(const RegionKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, L1Ball>) {
          return fmt::format("l1:{}", k.radius);
        } else if constexpr (std::is_same_v<T, Lopsided>) {
          return fmt::format("lopsided:{}", k.radius);
        } else {
          return k.name.empty() ? std::string("custom") : k.name;
        }
      },
      kind);
}

std::optional<VertexId> Region::index_of(const Vertex& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Region::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

Region Region::Build(const RegionKind& kind, int dim, const RegionOptions& options) {
  CheckDimension(dim);

  std::function<bool(const Vertex&)> inside;
  std::optional<std::int64_t> scan_radius;
  Region region;
  region.dim_ = dim;
  region.description_ = describe(kind);

  if (const auto* ball = std::get_if<L1Ball>(&kind)) {
    const std::int64_t radius = ball->radius;
    inside = [radius](const Vertex& v) { return l1_norm(v) <= radius; };
    region.l1_radius_ = radius;
  } else if (const auto* lop = std::get_if<Lopsided>(&kind)) {
    if (dim != 2) throw RegionError("lopsided regions are defined for d = 2 only");
    const std::int64_t radius = lop->radius;
    inside = [radius](const Vertex& v) { return LopsidedContains(v, radius); };
  } else {
    const auto& custom = std::get<CustomRegion>(kind);
    if (!custom.contains) throw RegionError("custom region has no membership predicate");
    inside = custom.contains;
    scan_radius = custom.scan_radius;
  }

  const Vertex origin = Vertex::Origin(dim);
  if (!inside(origin)) throw RegionError(fmt::format("region {} does not contain the origin", region.description_));

  // Breadth-first expansion, one layer at a time; each layer is sorted
  // lexicographically before it is numbered.
  std::vector<Vertex> layer{origin};
  region.index_.emplace(origin, 0);
  region.vertices_.push_back(origin);
  while (!layer.empty()) {
    std::vector<Vertex> next;
    for (const Vertex& v : layer) {
      for (const Vertex& u : neighbors(v)) {
        if (region.index_.contains(u) || !inside(u)) continue;
        for (std::int32_t c : u.coords()) {
          if (std::abs(static_cast<std::int64_t>(c)) >= kCoordinateLimit) {
            throw RegionError(fmt::format("region {} exceeds the coordinate limit", region.description_));
          }
        }
        region.index_.emplace(u, kNoVertex);
        next.push_back(u);
      }
    }
    std::sort(next.begin(), next.end());
    for (const Vertex& u : next) {
      if (region.vertices_.size() >= options.vertex_cap) {
        throw RegionError(fmt::format("region {} exceeds the vertex cap of {}", region.description_, options.vertex_cap));
      }
      region.index_[u] = static_cast<VertexId>(region.vertices_.size());
      region.vertices_.push_back(u);
    }
    layer = std::move(next);
  }

  const std::size_t n = region.vertices_.size();
  const int degree = 2 * dim;
  region.is_boundary_.assign(n, 0);
  region.adjacency_.assign(n * degree, kNoVertex);
  region.incident_.assign(n * degree, kNoEdge);

  struct RawEdge {
    Edge edge;
    VertexId lo;
    VertexId hi;
  };
  std::vector<RawEdge> raw;
  raw.reserve(n * dim);
  for (std::size_t id = 0; id < n; ++id) {
    const Vertex& v = region.vertices_[id];
    const std::vector<Vertex> nbrs = neighbors(v);
    for (int k = 0; k < degree; ++k) {
      auto it = region.index_.find(nbrs[k]);
      if (it == region.index_.end()) {
        region.is_boundary_[id] = 1;
        continue;
      }
      region.adjacency_[id * degree + k] = it->second;
      if (k % 2 == 1) raw.push_back({Edge{v, nbrs[k]}, static_cast<VertexId>(id), it->second});
    }
    for (std::int32_t c : v.coords()) {
      region.max_abs_coordinate_ = std::max(region.max_abs_coordinate_, std::abs(static_cast<std::int64_t>(c)));
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) { return a.edge < b.edge; });
  region.edges_.reserve(raw.size());
  region.endpoints_.reserve(raw.size());
  for (std::size_t e = 0; e < raw.size(); ++e) {
    region.edges_.push_back(raw[e].edge);
    region.endpoints_.emplace_back(raw[e].lo, raw[e].hi);
    const int axis = raw[e].edge.axis();
    region.incident_[static_cast<std::size_t>(raw[e].lo) * degree + 2 * axis + 1] = static_cast<EdgeId>(e);
    region.incident_[static_cast<std::size_t>(raw[e].hi) * degree + 2 * axis] = static_cast<EdgeId>(e);
  }

  region.boundary_distance_ = std::numeric_limits<std::int64_t>::max();
  for (std::size_t id = 0; id < n; ++id) {
    if (region.is_boundary_[id]) {
      region.boundary_.push_back(static_cast<VertexId>(id));
      region.boundary_distance_ = std::min(region.boundary_distance_, l1_norm(region.vertices_[id]));
    }
  }
  if (region.boundary_.empty()) throw RegionError("region has no boundary");

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](VertexId a, VertexId b) { return region.vertices_[a] < region.vertices_[b]; });
  region.lex_rank_.assign(n, 0);
  for (std::size_t rank = 0; rank < n; ++rank) region.lex_rank_[order[rank]] = static_cast<std::int32_t>(rank);

  if (scan_radius) {
    // Count members of the predicate in the scan box that the expansion
    // never reached.
    std::size_t unreachable = 0;
    std::vector<std::int32_t> coords(dim, static_cast<std::int32_t>(-*scan_radius));
    const auto r = static_cast<std::int32_t>(*scan_radius);
    while (true) {
      const Vertex v{std::span<const std::int32_t>(coords)};
      if (inside(v) && !region.index_.contains(v)) ++unreachable;
      int axis = 0;
      while (axis < dim && coords[axis] == r) coords[axis++] = -r;
      if (axis == dim) break;
      ++coords[axis];
    }
    if (unreachable > 0) {
      region.warnings_.push_back(fmt::format(
          "region {}: discarded {} vertices not connected to the origin", region.description_, unreachable));
    }
  }
  return region;
}

Region build_region(const RegionKind& kind, int dim, const RegionOptions& options) {
  return Region::Build(kind, dim, options);
}

}  // namespace ipfpp
