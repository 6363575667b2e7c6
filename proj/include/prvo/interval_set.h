// Copyright 2026 The PRVO Authors
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

#ifndef PRVO_INTERVAL_SET_H_
#define PRVO_INTERVAL_SET_H_

#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace prvo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval [lo, hi]. `hi` may be +inf, in which case the interval is
// read as [lo, inf).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr bool is_valid() const { return lo <= hi; }
  constexpr bool contains(double s) const { return lo <= s && s <= hi; }
  constexpr bool is_unbounded() const { return hi == kInf; }
  constexpr double width() const { return hi - lo; }
  constexpr bool operator==(const Interval&) const = default;
};

// Finite union of disjoint closed intervals, kept canonical: sorted, strictly
// separated (intervals[i].hi < intervals[i+1].lo) and never containing an
// invalid member. Point intervals [a, a] are legal members.
class IntervalSet {
 public:
  IntervalSet() = default;
  // Accepts any collection of intervals and canonicalizes it (sort, merge
  // overlapping or touching members, drop invalid ones).
  IntervalSet(std::initializer_list<Interval> intervals);
  explicit IntervalSet(std::vector<Interval> intervals);

  static IntervalSet full(const Interval& domain) { return IntervalSet({domain}); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  auto begin() const { return intervals_.begin(); }
  auto end() const { return intervals_.end(); }

  bool contains(double s) const;
  // True when every point of this set is in `other`.
  bool is_subset_of(const IntervalSet& other) const;
  double measure() const;
  // Removes members no wider than `min_width`.
  IntervalSet without_slivers(double min_width) const;
  // Point of the set closest to `s`; the set must be nonempty.
  double nearest(double s) const;
  double lower() const { return intervals_.front().lo; }
  double upper() const { return intervals_.back().hi; }

  bool operator==(const IntervalSet&) const = default;

  // "{}" or "[0,0.35] U [1.1,inf)".
  std::string to_string() const;

 private:
  std::vector<Interval> intervals_;
};

IntervalSet interval_intersect(const IntervalSet& a, const IntervalSet& b);

std::ostream& operator<<(std::ostream& os, const IntervalSet& set);

}  // namespace prvo

#endif  // PRVO_INTERVAL_SET_H_
