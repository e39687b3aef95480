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

#include "ipfpp/randomness.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ipfpp/errors.h"

namespace ipfpp {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void MulHiLo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline double ToOpenUnit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    MulHiLo(kPhiloxM0, ctr[0], hi0, lo0);
    MulHiLo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

int coordinate_bits(int dim) { return std::min(32, 64 / dim); }

std::array<std::uint32_t, 4> encode_edge(std::uint64_t trial_index, const Edge& e) {
  if (trial_index > kMaxTrialIndex) throw DomainError("trial index exceeds 2^48 - 1");
  const int dim = e.lo.dim();
  const int bits = coordinate_bits(dim);
  const std::int64_t offset = std::int64_t{1} << (bits - 1);
  std::uint64_t packed = 0;
  for (int i = 0; i < dim; ++i) {
    const std::int64_t shifted = static_cast<std::int64_t>(e.lo[i]) + offset;
    if (shifted < 0 || shifted >= 2 * offset) {
      throw DomainError(fmt::format("coordinate {} of {} does not fit the {}-bit edge encoding", e.lo[i],
                                    e.lo.ToString(), bits));
    }
    packed |= static_cast<std::uint64_t>(shifted) << (i * bits);
  }
  const auto axis = static_cast<std::uint32_t>(e.axis());
  return {static_cast<std::uint32_t>(trial_index),
          static_cast<std::uint32_t>(trial_index >> 32) | (axis << 16) | (static_cast<std::uint32_t>(dim) << 24),
          static_cast<std::uint32_t>(packed), static_cast<std::uint32_t>(packed >> 32)};
}

Configuration::Configuration(std::uint64_t master_seed, std::uint64_t trial_index)
    : master_seed_(master_seed), trial_index_(trial_index) {
  if (trial_index > kMaxTrialIndex) throw DomainError("trial index exceeds 2^48 - 1");
}

double Configuration::weight(const Edge& e) const {
  const auto out = philox4x32_10(
      encode_edge(trial_index_, e),
      {static_cast<std::uint32_t>(master_seed_), static_cast<std::uint32_t>(master_seed_ >> 32)});
  return ToOpenUnit(static_cast<std::uint64_t>(out[1]) << 32 | out[0]);
}

double weight(const Configuration& cfg, const Edge& e) { return cfg.weight(e); }

EdgeWeights EdgeWeights::FromConfiguration(const Configuration& cfg, const Region& region) {
  const int bits = coordinate_bits(region.dim());
  if (region.max_abs_coordinate() >= (std::int64_t{1} << (bits - 1))) {
    throw DomainError(fmt::format("region {} is too large for the {}-bit edge encoding", region.description(), bits));
  }
  std::vector<double> values(region.edge_count());
  const auto edges = region.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) values[i] = cfg.weight(edges[i]);
  return EdgeWeights(std::move(values));
}

EdgeWeights EdgeWeights::FromValues(const Region& region, std::vector<double> values) {
  if (values.size() != region.edge_count()) {
    throw ConfigError(fmt::format("expected {} edge weights, got {}", region.edge_count(), values.size()));
  }
  for (double w : values) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError(fmt::format("edge weight {} outside [0, 1]", w));
  }
  return EdgeWeights(std::move(values));
}

EdgeWeights EdgeWeights::FromFunction(const Region& region, const std::function<double(const Edge&)>& fn) {
  std::vector<double> values;
  values.reserve(region.edge_count());
  for (const Edge& e : region.edges()) values.push_back(fn(e));
  return FromValues(region, std::move(values));
}

double delta(std::int64_t edge_count, double epsilon) {
  if (edge_count < 2) throw DomainError(fmt::format("delta needs at least 2 edges, got {}", edge_count));
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError(fmt::format("epsilon must lie in (0, 1), got {}", epsilon));
  const double n = static_cast<double>(edge_count);
  // 1 - (1 - eps)^{1/n} = -expm1(log1p(-eps) / n)
  return -std::expm1(std::log1p(-epsilon) / n) / (n - 1.0);
}

double k_param(std::int64_t edge_count, double epsilon_half) {
  return std::log(static_cast<double>(edge_count)) / delta(edge_count, epsilon_half);
}

double min_gap(std::span<const double> weights) {
  if (weights.size() < 2) throw DomainError("min_gap needs at least 2 weights");
  std::vector<double> sorted(weights.begin(), weights.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  return gap;
}

double min_gap(const Configuration& cfg, std::span<const Edge> edges) {
  std::vector<double> weights;
  weights.reserve(edges.size());
  for (const Edge& e : edges) weights.push_back(cfg.weight(e));
  return min_gap(weights);
}

std::size_t count_weight_ties(std::span<const double> weights) {
  std::vector<double> sorted(weights.begin(), weights.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t ties = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) ties += sorted[i] == sorted[i - 1] ? 1 : 0;
  return ties;
}

LogTime tau(double weight, double k) { return LogTime::FromLog(k * weight); }

LogTime tau(const Configuration& cfg, const Edge& e, double k) { return tau(cfg.weight(e), k); }

CouplingParams CouplingParams::Theorem(std::int64_t edge_count, double epsilon) {
  CouplingParams params;
  params.epsilon = epsilon;
  params.delta = ipfpp::delta(edge_count, epsilon);
  params.k = k_param(edge_count, epsilon / 2.0);
  params.edge_count = edge_count;
  params.theorem_k = true;
  return params;
}

CouplingParams CouplingParams::WithK(std::int64_t edge_count, double epsilon, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError(fmt::format("K must be positive and finite, got {}", k));
  CouplingParams params = Theorem(edge_count, epsilon);
  params.theorem_k = params.k == k;
  params.k = k;
  return params;
}

}  // namespace ipfpp
