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

// Edge-weight configurations and the gap/temperature formulas of the coupling.
//
// Every edge weight is a pure function of (master_seed, trial_index, edge).
// The weight is the first 64 output bits of Philox4x32-10 keyed by the master
// seed, evaluated at a 128-bit counter that encodes the trial and the edge:
//
//   word 0  bits  0..31 of trial_index
//   word 1  bits 32..47 of trial_index | axis << 16 | dim << 24
//   word 2  low 32 bits of the packed lower endpoint
//   word 3  high 32 bits of the packed lower endpoint
//
// The lower endpoint is packed into 64 bits as d fields of b = min(32, 64/d)
// bits, coordinate i in bits [i*b, (i+1)*b), each stored as c + 2^(b-1).
// The output x = out1 << 32 | out0 maps to ((x >> 11) + 0.5) * 2^-53, which
// lies strictly inside (0, 1). This layout is frozen.

#ifndef IPFPP_RANDOMNESS_H_
#define IPFPP_RANDOMNESS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ipfpp/lattice.h"
#include "ipfpp/log_time.h"

namespace ipfpp {

// Philox4x32 with 10 rounds.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Number of bits per coordinate in the edge encoding.
int coordinate_bits(int dim);

// Counter words for an edge; throws DomainError if a coordinate does not fit.
std::array<std::uint32_t, 4> encode_edge(std::uint64_t trial_index, const Edge& e);

inline constexpr std::uint64_t kMaxTrialIndex = (std::uint64_t{1} << 48) - 1;

// One edge-weight assignment: sigma for a given (master_seed, trial_index).
class Configuration {
 public:
  Configuration(std::uint64_t master_seed, std::uint64_t trial_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t trial_index() const { return trial_index_; }

  double weight(const Edge& e) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::uint64_t master_seed_;
  std::uint64_t trial_index_;
};

double weight(const Configuration& cfg, const Edge& e);

// Weights of every edge of a region, indexed by EdgeId. This is what the
// invasion and passage-time engines read; building it from a Configuration
// is what makes both processes see the same sigma.
class EdgeWeights {
 public:
  static EdgeWeights FromConfiguration(const Configuration& cfg, const Region& region);
  // Explicit values by EdgeId; each must lie in [0, 1].
  static EdgeWeights FromValues(const Region& region, std::vector<double> values);
  static EdgeWeights FromFunction(const Region& region, const std::function<double(const Edge&)>& fn);

  double operator[](EdgeId e) const { return values_[e]; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  explicit EdgeWeights(std::vector<double> values) : values_(std::move(values)) {}

  std::vector<double> values_;
};

// (1 - (1 - eps)^{1/n}) / (n - 1): the gap for which n independent uniforms
// are pairwise at least that far apart with probability exactly 1 - eps.
double delta(std::int64_t edge_count, double epsilon);

// ln(n) / delta(n, epsilon_half).
double k_param(std::int64_t edge_count, double epsilon_half);

// Smallest pairwise distance among the weights.
double min_gap(std::span<const double> weights);
double min_gap(const Configuration& cfg, std::span<const Edge> edges);

// Number of adjacent equal values after sorting.
std::size_t count_weight_ties(std::span<const double> weights);

// tau = e^{K w}, as a log value K * w.
LogTime tau(double weight, double k);
LogTime tau(const Configuration& cfg, const Edge& e, double k);

// epsilon: the gap event uses delta(edge_count, epsilon).
// k: passage-time temperature; the theorem value is k_param(edge_count, epsilon / 2).
struct CouplingParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double k = 0.0;
  std::int64_t edge_count = 0;
  bool theorem_k = true;

  static CouplingParams Theorem(std::int64_t edge_count, double epsilon);
  static CouplingParams WithK(std::int64_t edge_count, double epsilon, double k);
};

}  // namespace ipfpp

#endif  // IPFPP_RANDOMNESS_H_
