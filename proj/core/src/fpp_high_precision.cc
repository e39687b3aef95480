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

#include "ipfpp/fpp_high_precision.h"

#include <cstdint>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

#include "ipfpp/errors.h"

namespace ipfpp {
namespace {

namespace mp = boost::multiprecision;

using WideFloat = mp::number<
    mp::cpp_bin_float<50, mp::digit_base_10, void, std::int64_t, -(std::int64_t{1} << 40), (std::int64_t{1} << 40)>,
    mp::et_off>;

}  // namespace

std::vector<HighPrecisionSettled> dijkstra_high_precision(const EdgeWeights& weights, const Region& region, double k) {
  if (region.vertex_count() > kHighPrecisionVertexLimit) {
    throw RegionError(fmt::format("high-precision mode supports at most {} vertices, region {} has {}",
                                  kHighPrecisionVertexLimit, region.description(), region.vertex_count()));
  }
  if (weights.size() != region.edge_count()) throw ConfigError("edge weights do not match the region");

  const std::size_t n = region.vertex_count();
  std::vector<WideFloat> best(n);
  std::vector<std::uint8_t> reached(n, 0), done(n, 0);
  std::vector<HighPrecisionSettled> out;
  reached[0] = 1;  // best[0] == 0

  const int degree = 2 * region.dim();
  // O(n^2) selection is plenty at this size and avoids a heap of wide floats.
  while (true) {
    VertexId pick = kNoVertex;
    for (std::size_t v = 0; v < n; ++v) {
      if (!reached[v] || done[v]) continue;
      if (pick == kNoVertex || best[v] < best[pick] ||
          (best[v] == best[pick] && region.lex_rank(static_cast<VertexId>(v)) < region.lex_rank(pick))) {
        pick = static_cast<VertexId>(v);
      }
    }
    if (pick == kNoVertex) break;
    done[pick] = 1;
    const double log_value = pick == 0 ? -std::numeric_limits<double>::infinity() : static_cast<double>(mp::log(best[pick]));
    out.push_back({pick, log_value});
    if (region.is_boundary(pick)) break;
    for (int j = 0; j < degree; ++j) {
      const VertexId u = region.neighbor(pick, j);
      if (done[u]) continue;
      const WideFloat candidate = best[pick] + mp::exp(WideFloat(k) * WideFloat(weights[region.incident_edge(pick, j)]));
      if (!reached[u] || candidate < best[u]) {
        reached[u] = 1;
        best[u] = candidate;
      }
    }
  }
  return out;
}

}  // namespace ipfpp
