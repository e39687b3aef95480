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

#ifndef IPFPP_FPP_HIGH_PRECISION_H_
#define IPFPP_FPP_HIGH_PRECISION_H_

#include <cstddef>
#include <vector>

#include "ipfpp/lattice.h"
#include "ipfpp/randomness.h"

namespace ipfpp {

inline constexpr std::size_t kHighPrecisionVertexLimit = 50;

struct HighPrecisionSettled {
  VertexId vertex;
  double log_value;  // natural log of the exact-ish linear time, rounded once
};

// Cross-check for the log-domain engine on small regions: the same truncated
// Dijkstra, but with passage times held as 50-digit binary floats on the
// linear scale (wide exponent range, so e^{K w} never overflows for the K
// values reachable on such regions). Throws RegionError above
// kHighPrecisionVertexLimit vertices.
std::vector<HighPrecisionSettled> dijkstra_high_precision(const EdgeWeights& weights, const Region& region, double k);

}  // namespace ipfpp

#endif  // IPFPP_FPP_HIGH_PRECISION_H_
