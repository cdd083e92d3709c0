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

#include "subprop/greedy.hpp"

#include <numeric>

#include "subprop/errors.hpp"
#include "subprop/greedy_engine.hpp"

namespace subprop {

using nlohmann::json;

namespace {

SelectionResult finish(const SegmentPool& pool, const Objective& objective,
                       const GreedyTrace& trace, Algorithm algorithm) {
  SelectionResult result;
  result.algorithm = algorithm;
  result.gains = trace.gains;
  result.evaluations = trace.evaluations;
  // Replay on a fresh state so the trace reports the cached objective values.
  SelectionState replay(objective);
  for (std::size_t i : trace.order) {
    replay.apply(i);
    result.order.push_back(pool.segment(i).id);
    result.objective_trace.push_back(replay.value());
  }
  return result;
}

template <class Engine>
SelectionResult run_greedy(const SegmentPool& pool, const Objective& objective,
                           Algorithm algorithm, Engine&& engine) {
  if (pool.size() != objective.size()) {
    throw std::invalid_argument("greedy: objective built for another pool");
  }
  SelectionState state(objective);
  const GreedyTrace trace = engine(
      objective.size(), objective.params().k,
      [&state](std::size_t i) { return state.gain(i); },
      [&state](std::size_t i) { state.apply(i); });
  return finish(pool, objective, trace, algorithm);
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kNaive:
      return "naive";
    case Algorithm::kLazy:
      return "lazy";
    case Algorithm::kOracle:
      return "oracle";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "naive") return Algorithm::kNaive;
  if (name == "lazy") return Algorithm::kLazy;
  if (name == "oracle") return Algorithm::kOracle;
  fail(ErrorKind::kUsage, "unknown algorithm \"" + std::string(name) + "\"");
}

SelectionResult greedy_naive(const SegmentPool& pool, const Objective& objective) {
  return run_greedy(pool, objective, Algorithm::kNaive,
                    [](auto n, auto k, auto&& gain, auto&& commit) {
                      return naive_greedy(n, k, gain, commit);
                    });
}

SelectionResult greedy_lazy(const SegmentPool& pool, const Objective& objective) {
  return run_greedy(pool, objective, Algorithm::kLazy,
                    [](auto n, auto k, auto&& gain, auto&& commit) {
                      return lazy_greedy(n, k, gain, commit);
                    });
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(c);
}

SelectionResult brute_force(const SegmentPool& pool, const Objective& objective) {
  const std::size_t n = objective.size();
  const std::size_t k = std::min(objective.params().k, n);
  if (binomial(n, k) > kBruteForceLimit) {
    fail(ErrorKind::kLimit, "brute force over C(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") subsets exceeds the limit of " +
                                std::to_string(kBruteForceLimit) +
                                "; use a smaller pool or k");
  }

  std::vector<std::size_t> best;
  double best_value = objective.evaluate(best);
  std::uint64_t evaluations = 1;
  std::vector<std::size_t> combo;
  for (std::size_t size = 1; size <= k; ++size) {
    combo.resize(size);
    std::iota(combo.begin(), combo.end(), std::size_t{0});
    while (true) {
      const double v = objective.evaluate(combo);
      ++evaluations;
      if (v > best_value) {
        best_value = v;
        best = combo;
      }
      // Advance to the next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && combo[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++combo[pos - 1];
      for (std::size_t q = pos; q < size; ++q) combo[q] = combo[q - 1] + 1;
    }
  }

  SelectionResult result;
  result.algorithm = Algorithm::kOracle;
  result.evaluations = evaluations;
  std::vector<std::size_t> prefix;
  for (std::size_t i : best) {
    prefix.push_back(i);
    result.order.push_back(pool.segment(i).id);
    result.objective_trace.push_back(objective.evaluate(prefix));
  }
  return result;
}

json selection_to_json(const SelectionResult& result, const ObjectiveParams& params) {
  return json{{"algorithm", std::string(algorithm_name(result.algorithm))},
              {"order", result.order},
              {"gains", result.gains},
              {"trace", result.objective_trace},
              {"evaluations", result.evaluations},
              {"params", {{"alpha", params.alpha}, {"beta", params.beta}, {"k", params.k}}}};
}

SelectionResult selection_from_json(const json& doc) {
  try {
    SelectionResult r;
    r.algorithm = parse_algorithm(doc.at("algorithm").get<std::string>());
    r.order = doc.at("order").get<std::vector<SegmentId>>();
    r.gains = doc.value("gains", std::vector<double>{});
    r.objective_trace = doc.value("trace", std::vector<double>{});
    r.evaluations = doc.value("evaluations", std::uint64_t{0});
    return r;
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, std::string("selection file: ") + e.what());
  } catch (const Error& e) {
    fail(ErrorKind::kParse, std::string("selection file: ") + e.what());
  }
}

}  // namespace subprop
