#include "dps/color.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dps {

Color Color::discrete(int label) {
  if (label < 0) throw std::invalid_argument("discrete label must be nonnegative");
  Color c;
  c.kind_ = Kind::Label;
  c.label_ = label;
  return c;
}

Color Color::continuous(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("continuous color must lie in [0,1]");
  Color c;
  c.kind_ = Kind::Point;
  c.x_ = x;
  return c;
}

double Color::distance(const Color& other) const {
  if (kind_ != other.kind_) return 1.0;
  if (kind_ == Kind::Label) return label_ == other.label_ ? 0.0 : 1.0;
  return std::abs(x_ - other.x_);
}

SetExpr::SetExpr(std::vector<Interval> intervals, std::vector<Color> points) {
  for (const Interval& iv : intervals) {
    if (iv.degenerate()) continue;
    if (iv.is_point()) {
      points.push_back(Color::continuous(iv.lo));
      continue;
    }
    if (iv.lo < 0.0 || iv.hi > 1.0) throw std::invalid_argument("interval outside [0,1]");
    intervals_.push_back(iv);
  }
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  // Merge overlapping or flush-adjacent intervals.
  std::vector<Interval> merged;
  for (const Interval& iv : intervals_) {
    if (!merged.empty()) {
      Interval& last = merged.back();
      bool overlaps = iv.lo < last.hi ||
                      (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
      if (overlaps) {
        if (iv.lo == last.hi && iv.lo_closed && last.hi_closed) {
          // fine, union is contiguous
        }
        if (iv.hi > last.hi) {
          last.hi = iv.hi;
          last.hi_closed = iv.hi_closed;
        } else if (iv.hi == last.hi) {
          last.hi_closed = last.hi_closed || iv.hi_closed;
        }
        if (iv.lo == last.lo) last.lo_closed = last.lo_closed || iv.lo_closed;
        continue;
      }
      if (iv.lo < last.hi) throw std::logic_error("interval merge invariant");
    }
    merged.push_back(iv);
  }
  intervals_ = std::move(merged);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const Color& p : points) {
    bool covered = !p.is_label() && [&] {
      for (const Interval& iv : intervals_)
        if (iv.contains(p.point())) return true;
      return false;
    }();
    if (!covered) points_.push_back(p);
  }
}

SetExpr SetExpr::interval(double a, double b, bool lo_closed, bool hi_closed) {
  return SetExpr({Interval{a, b, lo_closed, hi_closed}}, {});
}

SetExpr SetExpr::point(Color c) { return SetExpr({}, {c}); }

SetExpr SetExpr::labels(std::vector<int> ls) {
  std::vector<Color> pts;
  pts.reserve(ls.size());
  for (int l : ls) pts.push_back(Color::discrete(l));
  return SetExpr({}, std::move(pts));
}

SetExpr SetExpr::full_continuous() { return interval(0.0, 1.0, true, true); }

SetExpr SetExpr::full_discrete(int k) {
  std::vector<int> ls(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) ls[static_cast<std::size_t>(i)] = i;
  return labels(std::move(ls));
}

bool SetExpr::contains(const Color& c) const {
  if (!c.is_label()) {
    for (const Interval& iv : intervals_)
      if (iv.contains(c.point())) return true;
  }
  return std::binary_search(points_.begin(), points_.end(), c);
}

bool SetExpr::contains_point(double x) const { return contains(Color::continuous(x)); }

SetExpr SetExpr::complement(int k) const {
  if (k > 0) {
    std::vector<int> out;
    for (int l = 0; l < k; ++l)
      if (!contains(Color::discrete(l))) out.push_back(l);
    return labels(std::move(out));
  }
  // Sweep [0,1]; gaps between intervals form the complement, continuous
  // points of this set are punched out afterwards.
  std::vector<Interval> gaps;
  double cur = 0.0;
  bool cur_closed = true;
  for (const Interval& iv : intervals_) {
    Interval gap{cur, iv.lo, cur_closed, !iv.lo_closed};
    if (!gap.degenerate()) gaps.push_back(gap);
    cur = iv.hi;
    cur_closed = !iv.hi_closed;
  }
  Interval tail{cur, 1.0, cur_closed, true};
  if (!tail.degenerate()) gaps.push_back(tail);

  std::vector<Interval> out;
  std::vector<Color> pts;
  for (Interval gap : gaps) {
    std::vector<Interval> pieces{gap};
    for (const Color& p : points_) {
      if (p.is_label()) continue;
      double x = p.point();
      std::vector<Interval> next;
      for (const Interval& piece : pieces) {
        if (!piece.contains(x)) {
          next.push_back(piece);
          continue;
        }
        Interval left{piece.lo, x, piece.lo_closed, false};
        Interval right{x, piece.hi, false, piece.hi_closed};
        if (!left.degenerate()) next.push_back(left);
        if (!right.degenerate()) next.push_back(right);
      }
      pieces = std::move(next);
    }
    for (const Interval& piece : pieces) {
      if (piece.is_point())
        pts.push_back(Color::continuous(piece.lo));
      else
        out.push_back(piece);
    }
  }
  return SetExpr(std::move(out), std::move(pts));
}

namespace {

// Intersection of two intervals, honoring closure flags. Returns a degenerate
// interval when empty.
Interval intersect_ivs(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

}  // namespace

SetExpr SetExpr::intersect(const SetExpr& other) const {
  std::vector<Interval> ivs;
  std::vector<Color> pts;
  for (const Interval& a : intervals_)
    for (const Interval& b : other.intervals_) {
      Interval r = intersect_ivs(a, b);
      if (!r.degenerate()) ivs.push_back(r);
    }
  for (const Color& p : points_)
    if (other.contains(p)) pts.push_back(p);
  for (const Color& p : other.points_)
    if (contains(p)) pts.push_back(p);
  return SetExpr(std::move(ivs), std::move(pts));
}

double SetExpr::lebesgue() const {
  double s = 0.0;
  for (const Interval& iv : intervals_) s += iv.length();
  return s;
}

double SetExpr::distance(const Color& c) const {
  if (contains(c)) return 0.0;
  double best = 1.0;
  if (!c.is_label()) {
    double x = c.point();
    for (const Interval& iv : intervals_) {
      if (x < iv.lo)
        best = std::min(best, iv.lo - x);
      else if (x > iv.hi)
        best = std::min(best, x - iv.hi);
      else
        best = 0.0;  // only possible at an open endpoint
    }
  }
  for (const Color& p : points_) best = std::min(best, c.distance(p));
  return best;
}

}  // namespace dps
