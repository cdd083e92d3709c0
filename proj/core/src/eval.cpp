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

#include "subprop/eval.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "subprop/errors.hpp"
#include "subprop/mask.hpp"

namespace subprop {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Best overlap per object after each prefix of the selection:
// result[k-1][o] = max_{p < k} jaccard(proposal p, object o).
std::vector<std::vector<double>> prefix_bss(std::span<const SegmentId> selection,
                                            const SegmentPool& pool, const GroundTruth& gt,
                                            std::size_t k_max) {
  if (gt.grid() != pool.grid()) {
    fail(ErrorKind::kValidation, "ground truth and pool use different grids");
  }
  const auto objects = gt.objects();
  std::vector<std::vector<double>> out;
  out.reserve(k_max);
  std::vector<double> best(objects.size(), 0.0);
  for (std::size_t p = 0; p < k_max; ++p) {
    const auto index = pool.index_of(selection[p]);
    if (!index) {
      fail(ErrorKind::kValidation,
           "selection references unknown segment " + std::to_string(selection[p]));
    }
    const RegionMask& proposal = pool.segment(*index).mask;
    for (std::size_t o = 0; o < objects.size(); ++o) {
      best[o] = std::max(best[o], jaccard(proposal, objects[o].mask));
    }
    out.push_back(best);
  }
  return out;
}

CurvePoint summarize(std::size_t k, const std::vector<double>& bss) {
  CurvePoint pt;
  pt.k = k;
  std::size_t hits = 0;
  double total = 0.0;
  for (double b : bss) {
    total += b;
    if (b >= kRecallOverlap) ++hits;
  }
  pt.recall_at_half = static_cast<double>(hits) / static_cast<double>(bss.size());
  pt.j_instance = total / static_cast<double>(bss.size());
  return pt;
}

}  // namespace

double jaccard(const RegionMask& a, const RegionMask& b) {
  const std::int64_t inter = mask_intersection_area(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  if (uni == 0) fail(ErrorKind::kValidation, "jaccard of two empty masks is undefined");
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double trapezoid_auc(std::span<const CurvePoint> points, std::size_t k_max) {
  if (points.empty()) return 0.0;
  if (points.size() == 1) return points.front().recall_at_half;
  const auto km = static_cast<double>(k_max);
  double area = 0.0;
  for (std::size_t p = 1; p < points.size(); ++p) {
    const double dx = static_cast<double>(points[p].k - points[p - 1].k) / km;
    area += 0.5 * dx * (points[p].recall_at_half + points[p - 1].recall_at_half);
  }
  const double span = static_cast<double>(points.back().k - points.front().k) / km;
  return std::clamp(area / span, 0.0, 1.0);
}

BudgetCurve budget_curve(std::span<const SegmentId> selection, const SegmentPool& pool,
                         const GroundTruth& gt, std::size_t k_max, std::size_t step) {
  if (step < 1) fail(ErrorKind::kUsage, "curve step must be >= 1");
  if (k_max < 1) fail(ErrorKind::kUsage, "curve k_max must be >= 1");
  if (k_max > selection.size()) {
    fail(ErrorKind::kUsage, "k_max=" + std::to_string(k_max) + " exceeds the " +
                                std::to_string(selection.size()) + " selected proposals");
  }
  const auto bss = prefix_bss(selection, pool, gt, k_max);
  BudgetCurve curve;
  for (std::size_t k = step; k <= k_max; k += step) curve.points.push_back(summarize(k, bss[k - 1]));
  if (curve.points.empty() || curve.points.back().k != k_max) {
    curve.points.push_back(summarize(k_max, bss[k_max - 1]));
  }
  curve.auc_budget = trapezoid_auc(curve.points, k_max);
  return curve;
}

Metrics score_selection(std::span<const SegmentId> selection, const SegmentPool& pool,
                        const GroundTruth& gt, std::size_t budget) {
  if (budget < 1) fail(ErrorKind::kUsage, "budget must be >= 1");
  if (budget > selection.size()) {
    fail(ErrorKind::kUsage, "budget " + std::to_string(budget) + " exceeds the " +
                                std::to_string(selection.size()) + " selected proposals");
  }
  const auto bss = prefix_bss(selection, pool, gt, budget);
  const std::vector<double>& final_bss = bss.back();
  const auto objects = gt.objects();

  Metrics m;
  m.budget = budget;
  std::map<std::string, std::pair<double, std::size_t>> by_class;
  for (std::size_t o = 0; o < objects.size(); ++o) {
    m.per_object_bss[objects[o].instance] = final_bss[o];
    auto& acc = by_class[objects[o].class_label];
    acc.first += final_bss[o];
    ++acc.second;
  }
  const CurvePoint last = summarize(budget, final_bss);
  m.j_instance = last.j_instance;
  m.recall_at_half = last.recall_at_half;
  double class_total = 0.0;
  for (const auto& [label, acc] : by_class) {
    const double mean = acc.first / static_cast<double>(acc.second);
    m.j_class[label] = mean;
    class_total += mean;
  }
  m.j_class_mean = class_total / static_cast<double>(by_class.size());
  for (std::size_t k = 1; k <= budget; ++k) m.budget_curve.push_back(summarize(k, bss[k - 1]));
  m.auc_budget = trapezoid_auc(m.budget_curve, budget);
  return m;
}

json metrics_to_json(const Metrics& metrics) {
  json per_object = json::object();
  for (const auto& [id, v] : metrics.per_object_bss) per_object[std::to_string(id)] = v;
  json curve = json::array();
  for (const CurvePoint& p : metrics.budget_curve) {
    curve.push_back({p.k, p.recall_at_half, p.j_instance});
  }
  return json{{"budget", metrics.budget},
              {"per_object_bss", std::move(per_object)},
              {"j_instance", metrics.j_instance},
              {"j_class", metrics.j_class},
              {"j_class_mean", metrics.j_class_mean},
              {"recall_at_half", metrics.recall_at_half},
              {"auc_budget", metrics.auc_budget},
              {"budget_curve", std::move(curve)}};
}

std::string curve_to_csv(const BudgetCurve& curve) {
  std::string out = "k,recall_at_half,j_instance\n";
  for (const CurvePoint& p : curve.points) {
    out += std::to_string(p.k) + "," + format_double(p.recall_at_half) + "," +
           format_double(p.j_instance) + "\n";
  }
  return out;
}

}  // namespace subprop
