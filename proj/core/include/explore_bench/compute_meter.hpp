#pragma once

#include <cstdint>

namespace explore {

/// Counts primitive operations (cells scanned, BFS dequeues, tree extensions)
/// charged to the on-board computer.
class ComputeLoadMeter {
 public:
  void add(std::uint64_t ops) {
    total_ += ops;
    since_mark_ += ops;
  }
  std::uint64_t total() const { return total_; }

  /// Ops accumulated since the previous call; the mission total is untouched.
  std::uint64_t take_delta() {
    const std::uint64_t d = since_mark_;
    since_mark_ = 0;
    return d;
  }

 private:
  std::uint64_t total_ = 0;
  std::uint64_t since_mark_ = 0;
};

}  // namespace explore
