#include "skycell/region_set.hpp"

#include <algorithm>
#include <ostream>

namespace skycell {

RegionSet::RegionSet(std::initializer_list<Interval> parts) : parts_(parts) { normalize(); }

RegionSet::RegionSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

void RegionSet::normalize() {
  std::erase_if(parts_, [](const Interval& iv) { return !(iv.lo <= iv.hi); });
  std::sort(parts_.begin(), parts_.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi); });
  std::vector<Interval> merged;
  merged.reserve(parts_.size());
  for (const auto& iv : parts_) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  parts_ = std::move(merged);
}

double RegionSet::measure() const {
  double total = 0.0;
  for (const auto& iv : parts_) total += iv.length();
  return total;
}

bool RegionSet::contains(double r) const {
  return std::any_of(parts_.begin(), parts_.end(), [r](const Interval& iv) { return iv.contains(r); });
}

RegionSet RegionSet::intersect(const Interval& window) const {
  std::vector<Interval> out;
  for (const auto& iv : parts_) {
    const double lo = std::max(iv.lo, window.lo);
    const double hi = std::min(iv.hi, window.hi);
    if (lo <= hi) out.push_back({lo, hi});
  }
  return RegionSet(std::move(out));
}

RegionSet RegionSet::intersect(const RegionSet& other) const {
  std::vector<Interval> out;
  for (const auto& w : other.parts_) {
    for (const auto& iv : intersect(w).parts_) out.push_back(iv);
  }
  return RegionSet(std::move(out));
}

RegionSet RegionSet::unite(const RegionSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return RegionSet(std::move(all));
}

RegionSet RegionSet::complement(double upper) const {
  std::vector<Interval> out;
  double cursor = 0.0;
  for (const auto& iv : parts_) {
    if (iv.lo > upper) break;
    if (iv.lo > cursor) out.push_back({cursor, iv.lo});
    cursor = std::max(cursor, iv.hi);
  }
  if (cursor < upper) out.push_back({cursor, upper});
  return RegionSet(std::move(out));
}

RegionSet RegionSet::without_points() const {
  std::vector<Interval> out;
  for (const auto& iv : parts_) {
    if (iv.hi > iv.lo) out.push_back(iv);
  }
  return RegionSet(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const RegionSet& set) {
  if (set.empty()) return os << "{}";
  bool first = true;
  for (const auto& iv : set.intervals()) {
    if (!first) os << " u ";
    os << '[' << iv.lo << ", " << iv.hi << ']';
    first = false;
  }
  return os;
}

}  // namespace skycell
