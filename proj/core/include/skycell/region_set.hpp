#pragma once

#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace skycell {

/// Closed interval [lo, hi] of ground distances in meters; hi may be +inf.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double r) const { return lo <= r && r <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint, sorted, closed intervals on the half-line.
///
/// Construction normalizes: intervals with hi < lo are dropped, overlapping or
/// touching intervals are merged. Degenerate single points [r, r] are kept so
/// that sets like {0} survive.
class RegionSet {
 public:
  RegionSet() = default;
  RegionSet(std::initializer_list<Interval> parts);
  explicit RegionSet(std::vector<Interval> parts);

  static RegionSet whole(double upper) { return RegionSet{{0.0, upper}}; }

  const std::vector<Interval>& intervals() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept { return parts_.size(); }

  double measure() const;
  bool contains(double r) const;

  RegionSet intersect(const Interval& window) const;
  RegionSet intersect(const RegionSet& other) const;
  RegionSet unite(const RegionSet& other) const;
  /// Closure of [0, upper] minus this set.
  RegionSet complement(double upper) const;
  /// Same set with zero-length intervals removed.
  RegionSet without_points() const;

  friend bool operator==(const RegionSet&, const RegionSet&) = default;

 private:
  void normalize();
  std::vector<Interval> parts_;
};

std::ostream& operator<<(std::ostream& os, const RegionSet& set);

}  // namespace skycell
