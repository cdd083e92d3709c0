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

#ifndef SUBPROP_OBJECTIVE_HPP_
#define SUBPROP_OBJECTIVE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "subprop/cluster.hpp"
#include "subprop/pool.hpp"
#include "subprop/simgraph.hpp"

namespace subprop {

// Weights and budget of F(A) = H(A) + alpha * D(A) + beta * R(A), |A| <= k.
struct ObjectiveParams {
  double alpha = 3.9;
  double beta = 2.0;
  std::size_t k = 100;

  // Throws Error(kUsage) unless alpha, beta >= 0 and 1 <= k <= pool_size.
  void validate(std::size_t pool_size) const;
};

struct TermValues {
  double coverage = 0.0;   // H
  double diversity = 0.0;  // D
  double reward = 0.0;     // R

  double total(const ObjectiveParams& p) const {
    return coverage + p.alpha * diversity + p.beta * reward;
  }
};

// Immutable problem data for the three-term objective over one pool.
//
//   H(A) = sum_i max_{j in A} w_ij                 weighted coverage
//   D(A) = sum_{t,l} sqrt(sum_{j in P_t^l ∩ A} q_j) exemplar-cluster diversity
//   R(A) = sum_l sqrt(sum_{j in V^l ∩ A} r_j)       per-layer reward
//
// with w_ii = 1 and q_j = (1 + sum_{i in V^l, i != j} w_ij) / |V^l|.
// Holds references to the graph; it must outlive the Objective.
class Objective {
 public:
  Objective(const SegmentPool& pool, const SimilarityGraph& graph,
            const ClusterAssignment& clusters, const ObjectiveParams& params);

  std::size_t size() const { return layer_.size(); }
  const ObjectiveParams& params() const { return params_; }
  const SimilarityGraph& graph() const { return *graph_; }

  std::int32_t layer_of(std::size_t i) const { return layer_[i]; }
  std::size_t cluster_slot_of(std::size_t i) const { return slot_[i]; }
  double reward_of(std::size_t i) const { return reward_[i]; }
  double diversity_mass(std::size_t i) const { return mass_[i]; }
  std::size_t num_layers() const { return num_layers_; }
  std::size_t num_cluster_slots() const { return num_slots_; }

  // From-scratch evaluation of an arbitrary subset of pool indices.
  TermValues evaluate_terms(std::span<const std::size_t> subset) const;
  double evaluate(std::span<const std::size_t> subset) const {
    return evaluate_terms(subset).total(params_);
  }

 private:
  const SimilarityGraph* graph_;
  ObjectiveParams params_;
  std::vector<std::int32_t> layer_;
  std::vector<std::size_t> slot_;
  std::vector<double> reward_;
  std::vector<double> mass_;
  std::size_t num_layers_ = 0;
  std::size_t num_slots_ = 0;
};

// Incremental caches for a growing selection A.
//
// Gains are O(deg(a)) pure reads and may run concurrently against a frozen
// state; apply() needs exclusive access.
class SelectionState {
 public:
  explicit SelectionState(const Objective& objective);

  std::span<const std::size_t> selected() const { return selected_; }
  bool contains(std::size_t i) const { return in_set_[i]; }

  double coverage_gain(std::size_t a) const;
  double diversity_gain(std::size_t a) const;
  double reward_gain(std::size_t a) const;
  // coverage_gain + alpha * diversity_gain + beta * reward_gain
  double gain(std::size_t a) const;

  double coverage_value() const;
  double diversity_value() const;
  double reward_value() const;
  double value() const;
  TermValues terms() const { return {coverage_value(), diversity_value(), reward_value()}; }

  // Adds a; throws std::out_of_range once k elements are selected.
  void apply(std::size_t a);

  double cover(std::size_t i) const { return cover_[i]; }
  double cluster_mass(std::size_t slot) const { return cluster_mass_[slot]; }
  double layer_reward(std::size_t layer) const { return layer_reward_[layer]; }

 private:
  void check_candidate(std::size_t a) const;

  const Objective* objective_;
  std::vector<std::size_t> selected_;
  std::vector<bool> in_set_;
  std::vector<double> cover_;
  std::vector<double> cluster_mass_;
  std::vector<double> layer_reward_;
};

// sqrt(x + delta) - sqrt(x) with both arguments clamped at 0 against rounding.
double sqrt_gain(double base, double delta);

}  // namespace subprop

#endif  // SUBPROP_OBJECTIVE_HPP_
