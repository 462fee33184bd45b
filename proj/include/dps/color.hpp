#ifndef DPS_COLOR_HPP
#define DPS_COLOR_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace dps {

// A color is either a discrete label in {0,...,k-1} or a point of [0,1].
// Equality on the continuous variant is exact (bitwise on the coordinate):
// distinct base-measure draws are almost surely distinct, and a collision is
// precisely the reinforcement event.
class Color {
 public:
  enum class Kind : std::uint8_t { Label, Point };

  static Color discrete(int label);
  static Color continuous(double x);

  Kind kind() const { return kind_; }
  bool is_label() const { return kind_ == Kind::Label; }
  int label() const { return label_; }
  double point() const { return x_; }

  // Metric: |x-y| on points, 0/1 on labels.
  double distance(const Color& other) const;

  friend bool operator==(const Color& a, const Color& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ == Kind::Label ? a.label_ == b.label_ : a.x_ == b.x_;
  }
  friend bool operator!=(const Color& a, const Color& b) { return !(a == b); }
  friend bool operator<(const Color& a, const Color& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.kind_ == Kind::Label ? a.label_ < b.label_ : a.x_ < b.x_;
  }

 private:
  Kind kind_ = Kind::Label;
  int label_ = 0;
  double x_ = 0.0;
};

struct ColorHash {
  std::size_t operator()(const Color& c) const {
    std::uint64_t h = c.is_label() ? (0x517cc1b727220a95ULL ^ static_cast<std::uint64_t>(c.label()))
                                   : std::bit_cast<std::uint64_t>(c.point());
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

// Interval of [0,1] with explicit endpoint closure.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = true;

  bool contains(double x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }
  double length() const { return hi - lo; }
  bool degenerate() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool is_point() const { return lo == hi && lo_closed && hi_closed; }
};

// Finite union of disjoint intervals of [0,1] plus a finite point set
// (continuous points and/or discrete labels). Measurable-set algebra is exact:
// contains(), complement() and intersect() agree pointwise by construction.
class SetExpr {
 public:
  SetExpr() = default;
  SetExpr(std::vector<Interval> intervals, std::vector<Color> points);

  static SetExpr empty() { return SetExpr(); }
  // (a,b] by default; closures configurable.
  static SetExpr interval(double a, double b, bool lo_closed = false, bool hi_closed = true);
  static SetExpr point(Color c);
  static SetExpr labels(std::vector<int> ls);
  static SetExpr full_continuous();          // [0,1]
  static SetExpr full_discrete(int k);       // {0,...,k-1}
  // [0,x], the CDF set on [0,1].
  static SetExpr cdf_set(double x) { return interval(0.0, x, true, true); }

  bool contains(const Color& c) const;
  bool contains_point(double x) const;

  // Complement within the universe: k == 0 means [0,1], k > 0 means k labels.
  SetExpr complement(int k = 0) const;
  SetExpr intersect(const SetExpr& other) const;

  // Lebesgue mass of the interval part (points are null).
  double lebesgue() const;
  // Metric distance from a color to the set; 0 when inside.
  double distance(const Color& c) const;

  bool is_empty() const { return intervals_.empty() && points_.empty(); }
  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<Color>& points() const { return points_; }

 private:
  std::vector<Interval> intervals_;  // disjoint, sorted by lo
  std::vector<Color> points_;        // sorted, not covered by intervals_
};

}  // namespace dps

#endif  // DPS_COLOR_HPP
