#pragma once

#include <cstddef>
#include <vector>

#include "wfl/rl/transition.hpp"
#include "wfl/rng.hpp"

namespace wfl::rl {

// Fixed-capacity ring with FIFO eviction. Reward signs are enforced at
// insertion. A replay pass samples indices without replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = 10000);

  void push(Transition t);

  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return data_.empty(); }

  const Transition& operator[](std::size_t i) const;

  // k distinct indices in shuffled order (k <= size()).
  std::vector<std::size_t> sample_without_replacement(std::size_t k, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next slot to overwrite once full
  std::vector<Transition> data_;
};

}  // namespace wfl::rl
