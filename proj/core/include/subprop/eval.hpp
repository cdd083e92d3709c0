// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBPROP_EVAL_HPP_
#define SUBPROP_EVAL_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "subprop/pool.hpp"

namespace subprop {

// |a ∩ b| / |a ∪ b|. Throws Error(kValidation) on grid mismatch or when both
// masks are empty.
double jaccard(const RegionMask& a, const RegionMask& b);

// An object counts as recalled when its best overlap reaches this value.
inline constexpr double kRecallOverlap = 0.5;

struct CurvePoint {
  std::size_t k = 0;
  double recall_at_half = 0.0;
  double j_instance = 0.0;

  bool operator==(const CurvePoint&) const = default;
};

struct BudgetCurve {
  std::vector<CurvePoint> points;
  double auc_budget = 0.0;
};

struct Metrics {
  std::size_t budget = 0;
  std::map<std::int64_t, double> per_object_bss;  // best overlap per instance
  double j_instance = 0.0;                        // mean BSS over objects
  std::map<std::string, double> j_class;          // mean BSS per class
  double j_class_mean = 0.0;                      // mean over classes
  double recall_at_half = 0.0;
  double auc_budget = 0.0;
  std::vector<CurvePoint> budget_curve;           // k = 1..budget
};

// Scores the first `budget` proposals of `selection` against every
// ground-truth object. The budget curve is evaluated at every k up to the
// budget. Throws Error(kValidation) on unknown ids or a budget outside
// [1, |selection|].
Metrics score_selection(std::span<const SegmentId> selection, const SegmentPool& pool,
                        const GroundTruth& gt, std::size_t budget);

// recall@0.5 and J_i at k = step, 2*step, ..., k_max (k_max is always the
// last point). auc_budget is the trapezoidal area under recall versus
// k / k_max, divided by the covered span of k / k_max so it lies in [0, 1];
// a single-point curve reports that point's recall.
BudgetCurve budget_curve(std::span<const SegmentId> selection, const SegmentPool& pool,
                         const GroundTruth& gt, std::size_t k_max, std::size_t step);

// Trapezoidal summary used by budget_curve, exposed for direct testing.
double trapezoid_auc(std::span<const CurvePoint> points, std::size_t k_max);

nlohmann::json metrics_to_json(const Metrics& metrics);

// "k,recall_at_half,j_instance" header plus one row per point.
std::string curve_to_csv(const BudgetCurve& curve);

}  // namespace subprop

#endif  // SUBPROP_EVAL_HPP_
