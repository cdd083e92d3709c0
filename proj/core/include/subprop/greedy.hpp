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

#ifndef SUBPROP_GREEDY_HPP_
#define SUBPROP_GREEDY_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "subprop/objective.hpp"

namespace subprop {

enum class Algorithm { kNaive, kLazy, kOracle };

std::string_view algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

struct SelectionResult {
  Algorithm algorithm = Algorithm::kLazy;
  std::vector<SegmentId> order;         // selected segment ids, in pick order
  std::vector<double> gains;            // marginal gain of each pick (empty for the oracle)
  std::vector<double> objective_trace;  // F after each pick
  std::uint64_t evaluations = 0;        // marginal-gain computations

  bool operator==(const SelectionResult&) const = default;
};

SelectionResult greedy_naive(const SegmentPool& pool, const Objective& objective);
SelectionResult greedy_lazy(const SegmentPool& pool, const Objective& objective);

// Maximum number of size-k subsets brute_force will enumerate.
inline constexpr std::uint64_t kBruteForceLimit = 1'000'000;

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Exhaustive maximizer of F over all subsets of size <= k. Returns the
// lexicographically first optimum, ids ascending, with the trace of its
// prefixes. Throws Error(kLimit) when C(|V|, k) exceeds kBruteForceLimit.
SelectionResult brute_force(const SegmentPool& pool, const Objective& objective);

// { "algorithm", "order", "gains", "trace", "evaluations",
//   "params": { "alpha", "beta", "k" } }
nlohmann::json selection_to_json(const SelectionResult& result, const ObjectiveParams& params);
SelectionResult selection_from_json(const nlohmann::json& doc);

}  // namespace subprop

#endif  // SUBPROP_GREEDY_HPP_
