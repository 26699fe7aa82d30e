#include "wfl/rl/replay_buffer.hpp"

#include <numeric>
#include <stdexcept>

namespace wfl::rl {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  data_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
  if (t.r_plus < 0.0)
    throw std::invalid_argument("ReplayBuffer: r_plus must be nonnegative");
  if (t.r_minus > 0.0)
    throw std::invalid_argument("ReplayBuffer: r_minus must be nonpositive");
  if (data_.size() < capacity_) {
    data_.push_back(std::move(t));
  } else {
    data_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
}

const Transition& ReplayBuffer::operator[](std::size_t i) const {
  if (i >= data_.size()) throw std::out_of_range("ReplayBuffer: index out of range");
  return data_[i];
}

std::vector<std::size_t> ReplayBuffer::sample_without_replacement(std::size_t k, Rng& rng) const {
  if (k > data_.size())
    throw std::invalid_argument("ReplayBuffer: cannot sample more than stored");
  std::vector<std::size_t> idx(data_.size());
  std::iota(idx.begin(), idx.end(), 0);
  // partial Fisher-Yates: the first k entries end up uniformly chosen
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace wfl::rl
