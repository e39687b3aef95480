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

#include <set>

#include <gtest/gtest.h>

#include "ipfpp/errors.h"

namespace ipfpp {
namespace {

TEST(L1Norm, Examples) {
  EXPECT_EQ(l1_norm(Vertex{0, 0}), 0);
  EXPECT_EQ(l1_norm(Vertex{3, -2}), 5);
  EXPECT_EQ(l1_norm(Vertex{1, 1, 1}), 3);
}

TEST(Neighbors, FixedOrder) {
  EXPECT_EQ(neighbors(Vertex{0}), (std::vector<Vertex>{Vertex{-1}, Vertex{1}}));
  EXPECT_EQ(neighbors(Vertex{0, 0}),
            (std::vector<Vertex>{Vertex{-1, 0}, Vertex{1, 0}, Vertex{0, -1}, Vertex{0, 1}}));
  EXPECT_EQ(neighbors(Vertex{2, 0}),
            (std::vector<Vertex>{Vertex{1, 0}, Vertex{3, 0}, Vertex{2, -1}, Vertex{2, 1}}));
}

TEST(CanonicalEdge, SymmetricAndRejectsNonNeighbors) {
  const Edge e = canonical_edge(Vertex{1, 0}, Vertex{0, 0});
  EXPECT_EQ(e.lo, (Vertex{0, 0}));
  EXPECT_EQ(e.hi, (Vertex{1, 0}));
  EXPECT_EQ(canonical_edge(Vertex{0, 0}, Vertex{1, 0}), e);
  EXPECT_EQ(e.axis(), 0);
  EXPECT_THROW(canonical_edge(Vertex{0, 0}, Vertex{1, 1}), AdjacencyError);
  EXPECT_THROW(canonical_edge(Vertex{0, 0}, Vertex{0, 0}), AdjacencyError);
  EXPECT_THROW(canonical_edge(Vertex{0, 0}, Vertex{0, 0, 1}), AdjacencyError);
}

TEST(Region, SmallBallCounts) {
  Region a = build_region(L1Ball{1}, 2);
  EXPECT_EQ(a.vertex_count(), 5u);
  EXPECT_EQ(a.boundary().size(), 4u);
  EXPECT_EQ(a.edge_count(), 4u);

  Region b = build_region(L1Ball{2}, 2);
  EXPECT_EQ(b.vertex_count(), 13u);
  EXPECT_EQ(b.boundary().size(), 8u);
  EXPECT_EQ(b.edge_count(), 16u);

  Region c = build_region(L1Ball{2}, 1);
  EXPECT_EQ(c.vertex_count(), 5u);
  EXPECT_EQ(c.boundary().size(), 2u);
  EXPECT_EQ(c.edge_count(), 4u);
}

TEST(Region, PlanarClosedForm) {
  for (std::int64_t r = 1; r <= 50; ++r) {
    Region region = build_region(L1Ball{r}, 2);
    EXPECT_EQ(region.vertex_count(), static_cast<std::size_t>(2 * r * r + 2 * r + 1)) << r;
    EXPECT_EQ(region.edge_count(), static_cast<std::size_t>(4 * r * r)) << r;
    EXPECT_EQ(region.boundary().size(), static_cast<std::size_t>(4 * r)) << r;
    EXPECT_EQ(region.boundary_distance(), r);
  }
}

void ExpectMatchesEnumeration(const Region& region, int dim, std::int64_t box,
                              const std::function<bool(const Vertex&)>& inside) {
  std::set<Vertex> members;
  std::vector<std::int32_t> c(dim, static_cast<std::int32_t>(-box));
  while (true) {
    const Vertex v{std::span<const std::int32_t>(c)};
    if (inside(v)) members.insert(v);
    int i = 0;
    while (i < dim && c[i] == box) c[i++] = static_cast<std::int32_t>(-box);
    if (i == dim) break;
    ++c[i];
  }
  ASSERT_EQ(region.vertex_count(), members.size());
  std::set<Edge> edges;
  std::size_t boundary = 0;
  for (const Vertex& v : members) {
    EXPECT_TRUE(region.contains(v));
    bool is_boundary = false;
    for (const Vertex& n : neighbors(v)) {
      if (members.contains(n)) {
        edges.insert(canonical_edge(v, n));
      } else {
        is_boundary = true;
      }
    }
    boundary += is_boundary;
    EXPECT_EQ(region.is_boundary(*region.index_of(v)), is_boundary) << v.ToString();
  }
  EXPECT_EQ(region.boundary().size(), boundary);
  ASSERT_EQ(region.edge_count(), edges.size());
  // Canonical order and endpoint tables.
  std::size_t i = 0;
  for (const Edge& e : edges) {
    EXPECT_EQ(region.edge(static_cast<EdgeId>(i)), e);
    const auto [lo, hi] = region.endpoints(static_cast<EdgeId>(i));
    EXPECT_EQ(region.vertex(lo), e.lo);
    EXPECT_EQ(region.vertex(hi), e.hi);
    ++i;
  }
}

TEST(Region, BallsMatchExhaustiveEnumeration) {
  for (int dim = 1; dim <= 3; ++dim) {
    for (std::int64_t r = 1; r <= 10; ++r) {
      SCOPED_TRACE(testing::Message() << "d=" << dim << " R=" << r);
      Region region = build_region(L1Ball{r}, dim);
      ExpectMatchesEnumeration(region, dim, r, [r](const Vertex& v) { return l1_norm(v) <= r; });
    }
  }
}

TEST(Region, LopsidedMatchesEnumeration) {
  for (std::int64_t r = 1; r <= 8; ++r) {
    Region region = build_region(Lopsided{r}, 2);
    ExpectMatchesEnumeration(region, 2, r, [r](const Vertex& v) {
      const std::int64_t y = v[1] < 0 ? -v[1] : v[1];
      return v[0] <= 0 ? -v[0] + y <= r : 2 * v[0] + y <= r;
    });
  }
}

TEST(Region, VertexOrderIsLayeredAndLexRankIsGlobal) {
  Region region = build_region(L1Ball{4}, 2);
  EXPECT_TRUE(region.vertex(0).is_origin());
  for (std::size_t i = 1; i < region.vertex_count(); ++i) {
    const Vertex& a = region.vertex(static_cast<VertexId>(i - 1));
    const Vertex& b = region.vertex(static_cast<VertexId>(i));
    EXPECT_TRUE(l1_norm(a) < l1_norm(b) || (l1_norm(a) == l1_norm(b) && a < b));
  }
  for (std::size_t i = 0; i < region.vertex_count(); ++i) {
    for (std::size_t j = 0; j < region.vertex_count(); ++j) {
      const auto vi = static_cast<VertexId>(i), vj = static_cast<VertexId>(j);
      EXPECT_EQ(region.lex_rank(vi) < region.lex_rank(vj), region.vertex(vi) < region.vertex(vj));
    }
  }
}

TEST(Region, AdjacencyTablesAgreeWithNeighbors) {
  Region region = build_region(L1Ball{3}, 3);
  for (std::size_t i = 0; i < region.vertex_count(); ++i) {
    const auto id = static_cast<VertexId>(i);
    const auto ns = neighbors(region.vertex(id));
    for (int k = 0; k < 2 * region.dim(); ++k) {
      const VertexId n = region.neighbor(id, k);
      const EdgeId e = region.incident_edge(id, k);
      if (region.contains(ns[k])) {
        ASSERT_NE(n, kNoVertex);
        EXPECT_EQ(region.vertex(n), ns[k]);
        EXPECT_EQ(region.edge(e), canonical_edge(region.vertex(id), ns[k]));
      } else {
        EXPECT_EQ(n, kNoVertex);
        EXPECT_EQ(e, kNoEdge);
      }
    }
  }
}

TEST(Region, ParseKinds) {
  EXPECT_EQ(build_region(parse_region_kind("l1:3"), 2).vertex_count(), 25u);
  EXPECT_EQ(build_region(parse_region_kind("linf:1"), 2).vertex_count(), 9u);
  EXPECT_EQ(build_region(parse_region_kind("lopsided:2"), 2).vertex_count(), 10u);
  EXPECT_THROW(parse_region_kind("ball:3"), RegionError);
  EXPECT_THROW(parse_region_kind("l1:"), RegionError);
  EXPECT_THROW(parse_region_kind("l1:-2"), RegionError);
  EXPECT_THROW(build_region(Lopsided{3}, 3), RegionError);
}

TEST(Region, CustomRegionMustContainOrigin) {
  CustomRegion off_origin{"shifted", [](const Vertex& v) { return v[0] >= 1 && v[0] <= 3 && v[1] == 0; }, 4};
  EXPECT_THROW(build_region(off_origin, 2), RegionError);
}

TEST(Region, CustomRegionWarnsAboutDetachedMembers) {
  CustomRegion two_pieces{"pieces", [](const Vertex& v) { return v[1] == 0 && (v[0] == 0 || v[0] == 1 || v[0] == 3); },
                          4};
  Region region = build_region(two_pieces, 2);
  EXPECT_EQ(region.vertex_count(), 2u);
  EXPECT_FALSE(region.warnings().empty());
}

TEST(Region, VertexCapIsEnforced) {
  RegionOptions options;
  options.vertex_cap = 100;
  EXPECT_THROW(build_region(L1Ball{10}, 2, options), RegionError);
}

}  // namespace
}  // namespace ipfpp
