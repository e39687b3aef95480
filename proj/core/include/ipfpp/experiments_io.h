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

// File formats of the experiment outputs.
//
//   grid CSV     x,y,count,n,proportion   one row per region vertex, in region
//                                         order; planar grids. Other
//                                         dimensions use x / x,y,z / x0..x{d-1}.
//   slice CSV    x_scaled,proportion
//   level CSV    x,y
//   summary JSON plan echo, derived parameters, event frequencies with
//                standard errors, tie diagnostics, wall time
//   fit JSON     alpha, r, points_used, exclusion_rule
//
// Reals are printed in shortest round-trip form.

#ifndef IPFPP_EXPERIMENTS_IO_H_
#define IPFPP_EXPERIMENTS_IO_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ipfpp/experiments.h"

namespace ipfpp {

std::vector<std::string> coordinate_columns(int dim);

void write_grid_csv(std::ostream& out, const ProportionGrid& grid);
void write_slice_csv(std::ostream& out, std::span<const SlicePoint> points);
void write_level_curve_csv(std::ostream& out, const LevelCurve& curve);

nlohmann::json params_json(const DerivedParams& params);
nlohmann::json plan_json(const ExperimentPlan& plan);
nlohmann::json summary_json(const ExperimentPlan& plan, const ExperimentResult& result);
nlohmann::json fit_json(const FitResult& fit);

// Reads a grid CSV back into a proportion field. The l1 radius is taken as
// the largest l1 norm among the rows unless given.
ProportionField read_grid_csv(std::istream& in, std::optional<std::int64_t> l1_radius = std::nullopt);
std::vector<SlicePoint> read_slice_csv(std::istream& in);

}  // namespace ipfpp

#endif  // IPFPP_EXPERIMENTS_IO_H_
