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

#ifndef SUBPROP_GREEDY_ENGINE_HPP_
#define SUBPROP_GREEDY_ENGINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

namespace subprop {

// Selection order and per-step marginal gains of a greedy run over
// candidates 0..n-1.
struct GreedyTrace {
  std::vector<std::size_t> order;
  std::vector<double> gains;
  std::uint64_t evaluations = 0;  // calls to the gain oracle
};

inline constexpr double kTieEpsilon = 1e-12;

// Exhaustive greedy: every step evaluates every remaining candidate and takes
// the largest gain, lowest index on exact ties.
//
//   gain(i)   marginal gain of candidate i against the current state
//   commit(i) adds i to the state
template <class GainFn, class CommitFn>
GreedyTrace naive_greedy(std::size_t n, std::size_t k, GainFn&& gain, CommitFn&& commit) {
  GreedyTrace trace;
  std::vector<bool> taken(n, false);
  const std::size_t steps = std::min(k, n);
  for (std::size_t step = 0; step < steps; ++step) {
    std::size_t best = n;
    double best_gain = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double g = gain(i);
      ++trace.evaluations;
      if (best == n || g > best_gain) {
        best = i;
        best_gain = g;
      }
    }
    taken[best] = true;
    commit(best);
    trace.order.push_back(best);
    trace.gains.push_back(best_gain);
  }
  return trace;
}

// Lazy (CELF) greedy for monotone submodular objectives.
//
// Stale gains are upper bounds on current gains, so a candidate whose fresh
// gain tops every stale bound is the exact argmax. Before committing, every
// entry whose stale bound lies within the tie band of the leader is refreshed
// too; this makes the choice, including lowest-index tie breaking, identical
// to naive_greedy even when rounding lets a fresh gain exceed its stale bound
// by a few ulps.
template <class GainFn, class CommitFn>
GreedyTrace lazy_greedy(std::size_t n, std::size_t k, GainFn&& gain, CommitFn&& commit,
                        double tie_epsilon = kTieEpsilon) {
  struct Entry {
    double gain;
    std::size_t index;
    std::size_t round;  // step at which `gain` was computed
  };
  struct Lower {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.gain != b.gain) return a.gain < b.gain;
      return a.index > b.index;
    }
  };

  GreedyTrace trace;
  std::vector<Entry> initial;
  initial.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    initial.push_back({gain(i), i, 0});
    ++trace.evaluations;
  }
  std::priority_queue<Entry, std::vector<Entry>, Lower> queue(Lower{}, std::move(initial));

  const std::size_t steps = std::min(k, n);
  std::size_t round = 0;
  std::vector<Entry> band;
  while (trace.order.size() < steps) {
    Entry top = queue.top();
    queue.pop();
    if (top.round != round) {
      top.gain = gain(top.index);
      top.round = round;
      ++trace.evaluations;
      queue.push(top);
      continue;
    }

    const double floor = top.gain - tie_epsilon * std::max(1.0, std::abs(top.gain));
    bool refreshed = false;
    band.clear();
    while (!queue.empty() && queue.top().gain >= floor) {
      Entry e = queue.top();
      queue.pop();
      if (e.round != round) {
        e.gain = gain(e.index);
        e.round = round;
        ++trace.evaluations;
        refreshed = true;
      }
      band.push_back(e);
    }
    for (const Entry& e : band) queue.push(e);
    if (refreshed) {
      queue.push(top);
      continue;
    }

    commit(top.index);
    trace.order.push_back(top.index);
    trace.gains.push_back(top.gain);
    ++round;
  }
  return trace;
}

}  // namespace subprop

#endif  // SUBPROP_GREEDY_ENGINE_HPP_
