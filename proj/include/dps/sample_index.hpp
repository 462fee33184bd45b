#ifndef DPS_SAMPLE_INDEX_HPP
#define DPS_SAMPLE_INDEX_HPP

#include <cstddef>
#include <vector>

namespace dps {

enum class IndexKind { Fenwick, Linear };

// Cumulative-mass index over atom slots. The Fenwick variant supports
// append / add_mass / sample in O(log L); the linear variant is the
// reference implementation with the same contract (first slot whose
// cumulative mass exceeds the target).
class SampleIndex {
 public:
  explicit SampleIndex(IndexKind kind = IndexKind::Fenwick) : kind_(kind) {}

  IndexKind kind() const { return kind_; }
  std::size_t size() const { return mass_.size(); }
  double total() const { return total_; }

  void append(double mass) {
    mass_.push_back(mass);
    total_ += mass;
    if (kind_ == IndexKind::Fenwick) {
      // New node covers (i - lowbit(i), i]; assemble it from already-final
      // child nodes plus the fresh leaf.
      std::size_t i = mass_.size();
      double node = mass;
      for (std::size_t j = i - 1; j > i - (i & (~i + 1)); j -= j & (~j + 1))
        node += tree_[j - 1];
      tree_.push_back(node);
    }
  }

  void add_mass(std::size_t slot, double delta) {
    mass_[slot] += delta;
    total_ += delta;
    if (kind_ == IndexKind::Fenwick)
      for (std::size_t i = slot + 1; i <= tree_.size(); i += i & (~i + 1))
        tree_[i - 1] += delta;
  }

  // First slot whose cumulative mass exceeds target; target in [0, total).
  std::size_t sample(double target) const {
    if (kind_ == IndexKind::Linear) {
      double run = 0.0;
      for (std::size_t i = 0; i + 1 < mass_.size(); ++i) {
        run += mass_[i];
        if (target < run) return i;
      }
      return mass_.size() - 1;
    }
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 <= mass_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      std::size_t next = pos + step;
      if (next <= mass_.size() && tree_[next - 1] <= target) {
        target -= tree_[next - 1];
        pos = next;
      }
    }
    return pos < mass_.size() ? pos : mass_.size() - 1;
  }

  // Exact cumulative recomputation; used by invariant checks.
  double recompute_total() const {
    double s = 0.0;
    for (double m : mass_) s += m;
    return s;
  }

 private:
  IndexKind kind_;
  std::vector<double> mass_;
  std::vector<double> tree_;  // Fenwick nodes, 1-based logically
  double total_ = 0.0;
};

}  // namespace dps

#endif  // DPS_SAMPLE_INDEX_HPP
