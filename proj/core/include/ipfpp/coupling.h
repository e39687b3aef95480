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

// Invasion percolation and log-uniform first passage percolation run on one
// shared configuration, with per-trial checks of the containment events and
// of the order agreement between the two processes.

#ifndef IPFPP_COUPLING_H_
#define IPFPP_COUPLING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ipfpp/fpp.h"
#include "ipfpp/invasion.h"
#include "ipfpp/lattice.h"
#include "ipfpp/randomness.h"

namespace ipfpp {

struct CouplingDiagnostics {
  std::size_t weight_ties = 0;     // equal weights among region edges
  std::size_t invasion_ties = 0;   // equal weights at the top of the IP queue
  std::size_t fpp_time_ties = 0;   // equal tentative or settled times
  std::size_t fpp_order_ties = 0;  // equal edge times in the full FPP edge order
  std::size_t settled_count = 0;
  std::size_t invaded_count = 0;
};

struct CoupledOutcome {
  bool t_delta_holds = false;             // min gap >= params.delta
  bool ip_contains_fpp = false;           // on the whole region
  bool fpp_contains_ip_on_inner = false;  // on the l1 ball of inner_radius
  bool order_agreement = false;           // invaded edges sorted by edge time = IP order
  bool order_prefix = false;              // invaded edges are a prefix of the FPP edge order
  bool late_invasion_in_inner = false;    // some inner vertex not invaded by the halt
  double min_gap = 0.0;
  CouplingParams params;
  std::int64_t inner_radius = 0;
  CouplingDiagnostics diagnostics;
};

struct CoupledTrial {
  InvasionRecord invasion;
  FppResult fpp;
  CoupledOutcome outcome;
};

// Runs both processes. Throws ConfigError if params.edge_count differs from
// the region's edge count or inner_r is not below the boundary distance.
CoupledTrial run_coupled_trial(const EdgeWeights& weights, const Region& region, std::int64_t inner_r,
                               const CouplingParams& params);
CoupledOutcome run_coupled(const EdgeWeights& weights, const Region& region, std::int64_t inner_r,
                           const CouplingParams& params);
CoupledOutcome run_coupled(const Configuration& cfg, const Region& region, std::int64_t inner_r,
                           const CouplingParams& params);

// Every vertex that beats the boundary was invaded before the first boundary
// vertex.
bool check_ip_contains_fpp(const InvasionRecord& rec, const FppResult& res, const Region& region);

// Every invaded vertex with l1 norm <= inner_r beats the boundary.
bool check_fpp_contains_ip(const InvasionRecord& rec, const FppResult& res, const Region& region,
                           std::int64_t inner_r);

struct OrderAgreement {
  bool pairwise = false;
  bool prefix = false;
  std::size_t fpp_order_ties = 0;
};

OrderAgreement check_order_agreement(const InvasionRecord& rec, const FppResult& res, const Region& region,
                                     const EdgeWeights& weights, double k);

// Some vertex with l1 norm <= inner_r was not invaded before the first
// boundary vertex.
bool check_late_invasion(const InvasionRecord& rec, const Region& region, std::int64_t inner_r);

// Descriptions of the failed deterministic implications; empty when all hold
// or when K is not the theorem value.
std::vector<std::string> hard_implication_violations(const CoupledOutcome& outcome);

struct TrialId {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

// JSON document describing the trial: seed, region, K, flags and both orders.
std::string dump_trial(const CoupledTrial& trial, const Region& region, const EdgeWeights& weights,
                       std::optional<TrialId> id);

// Throws InvariantViolation carrying dump_trial() if any hard implication
// fails.
void enforce_hard_implications(const CoupledTrial& trial, const Region& region, const EdgeWeights& weights,
                               std::optional<TrialId> id);

}  // namespace ipfpp

#endif  // IPFPP_COUPLING_H_
