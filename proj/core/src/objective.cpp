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

#include "subprop/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "subprop/errors.hpp"

namespace subprop {

void ObjectiveParams::validate(std::size_t pool_size) const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    fail(ErrorKind::kUsage, "alpha must be a finite value >= 0");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    fail(ErrorKind::kUsage, "beta must be a finite value >= 0");
  }
  if (k < 1) fail(ErrorKind::kUsage, "k must be >= 1");
  if (k > pool_size) {
    fail(ErrorKind::kUsage, "k=" + std::to_string(k) + " exceeds the pool size " +
                                std::to_string(pool_size));
  }
}

double sqrt_gain(double base, double delta) {
  return std::sqrt(std::max(0.0, base + delta)) - std::sqrt(std::max(0.0, base));
}

Objective::Objective(const SegmentPool& pool, const SimilarityGraph& graph,
                     const ClusterAssignment& clusters, const ObjectiveParams& params)
    : graph_(&graph), params_(params) {
  const std::size_t n = pool.size();
  if (graph.size() != n || clusters.size() != n) {
    throw std::invalid_argument("Objective: pool, graph and clusters disagree in size");
  }
  params.validate(n);
  num_layers_ = static_cast<std::size_t>(pool.num_layers());
  num_slots_ = clusters.total_clusters();
  layer_.resize(n);
  slot_.resize(n);
  reward_.resize(n);
  mass_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Segment& s = pool.segment(j);
    layer_[j] = s.layer;
    slot_[j] = clusters.slot_of(j);
    reward_[j] = s.reward;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double within = 1.0;
    for (const Neighbor& nb : graph.neighbors(j)) {
      if (layer_[nb.index] == layer_[j]) within += nb.weight;
    }
    const auto layer_size = static_cast<double>(pool.layer_members(layer_[j]).size());
    mass_[j] = within / layer_size;
  }
}

TermValues Objective::evaluate_terms(std::span<const std::size_t> subset) const {
  const std::size_t n = size();
  std::vector<double> cover(n, 0.0);
  std::vector<double> slot_sum(num_slots_, 0.0);
  std::vector<double> layer_sum(num_layers_, 0.0);
  std::vector<bool> seen(n, false);
  for (std::size_t j : subset) {
    if (j >= n) throw std::out_of_range("Objective::evaluate_terms: index out of range");
    if (seen[j]) continue;
    seen[j] = true;
    cover[j] = 1.0;
    for (const Neighbor& nb : graph_->neighbors(j)) {
      cover[nb.index] = std::max(cover[nb.index], nb.weight);
    }
    slot_sum[slot_[j]] += mass_[j];
    layer_sum[static_cast<std::size_t>(layer_[j])] += reward_[j];
  }
  TermValues t;
  for (double c : cover) t.coverage += c;
  for (double s : slot_sum) t.diversity += std::sqrt(s);
  for (double u : layer_sum) t.reward += std::sqrt(u);
  return t;
}

SelectionState::SelectionState(const Objective& objective)
    : objective_(&objective),
      in_set_(objective.size(), false),
      cover_(objective.size(), 0.0),
      cluster_mass_(objective.num_cluster_slots(), 0.0),
      layer_reward_(objective.num_layers(), 0.0) {
  selected_.reserve(objective.params().k);
}

void SelectionState::check_candidate(std::size_t a) const {
  if (a >= in_set_.size()) throw std::out_of_range("candidate index out of range");
  if (in_set_[a]) {
    throw std::invalid_argument("candidate " + std::to_string(a) + " is already selected");
  }
}

double SelectionState::coverage_gain(std::size_t a) const {
  check_candidate(a);
  double total = std::max(0.0, 1.0 - cover_[a]);
  for (const Neighbor& nb : objective_->graph().neighbors(a)) {
    const double c = cover_[nb.index];
    if (nb.weight > c) total += nb.weight - c;
  }
  return total;
}

double SelectionState::diversity_gain(std::size_t a) const {
  check_candidate(a);
  return sqrt_gain(cluster_mass_[objective_->cluster_slot_of(a)],
                   objective_->diversity_mass(a));
}

double SelectionState::reward_gain(std::size_t a) const {
  check_candidate(a);
  return sqrt_gain(layer_reward_[static_cast<std::size_t>(objective_->layer_of(a))],
                   objective_->reward_of(a));
}

double SelectionState::gain(std::size_t a) const {
  const ObjectiveParams& p = objective_->params();
  double g = coverage_gain(a);
  if (p.alpha != 0.0) g += p.alpha * diversity_gain(a);
  if (p.beta != 0.0) g += p.beta * reward_gain(a);
  return g;
}

double SelectionState::coverage_value() const {
  double total = 0.0;
  for (double c : cover_) total += c;
  return total;
}

double SelectionState::diversity_value() const {
  double total = 0.0;
  for (double s : cluster_mass_) total += std::sqrt(std::max(0.0, s));
  return total;
}

double SelectionState::reward_value() const {
  double total = 0.0;
  for (double u : layer_reward_) total += std::sqrt(std::max(0.0, u));
  return total;
}

double SelectionState::value() const { return terms().total(objective_->params()); }

void SelectionState::apply(std::size_t a) {
  check_candidate(a);
  if (selected_.size() >= objective_->params().k) {
    throw std::out_of_range("selection already holds k=" +
                            std::to_string(objective_->params().k) + " elements");
  }
  in_set_[a] = true;
  selected_.push_back(a);
  cover_[a] = 1.0;
  for (const Neighbor& nb : objective_->graph().neighbors(a)) {
    cover_[nb.index] = std::max(cover_[nb.index], nb.weight);
  }
  cluster_mass_[objective_->cluster_slot_of(a)] += objective_->diversity_mass(a);
  layer_reward_[static_cast<std::size_t>(objective_->layer_of(a))] += objective_->reward_of(a);
}

}  // namespace subprop
