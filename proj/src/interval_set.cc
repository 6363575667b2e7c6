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

#include "prvo/interval_set.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace prvo {

IntervalSet::IntervalSet(std::initializer_list<Interval> intervals)
    : IntervalSet(std::vector<Interval>(intervals)) {}

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& i) {
    return std::isnan(i.lo) || std::isnan(i.hi) || !i.is_valid();
  });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& in : intervals) {
    if (!intervals_.empty() && in.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, in.hi);
    } else {
      intervals_.push_back(in);
    }
  }
}

bool IntervalSet::contains(double s) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [s](const Interval& i) { return i.contains(s); });
}

bool IntervalSet::is_subset_of(const IntervalSet& other) const {
  // Each member of a canonical set must sit inside a single member of the
  // other set, since the other set's members are separated by gaps.
  for (const Interval& in : intervals_) {
    const bool covered = std::any_of(
        other.intervals_.begin(), other.intervals_.end(),
        [&](const Interval& o) { return o.lo <= in.lo && in.hi <= o.hi; });
    if (!covered) return false;
  }
  return true;
}

double IntervalSet::measure() const {
  double total = 0.0;
  for (const Interval& i : intervals_) total += i.width();
  return total;
}

IntervalSet IntervalSet::without_slivers(double min_width) const {
  IntervalSet out;
  for (const Interval& i : intervals_) {
    if (i.width() > min_width) out.intervals_.push_back(i);
  }
  return out;
}

double IntervalSet::nearest(double s) const {
  double best = intervals_.front().lo;
  double best_dist = kInf;
  for (const Interval& i : intervals_) {
    const double candidate = std::clamp(s, i.lo, i.hi);
    const double dist = std::abs(candidate - s);
    if (dist < best_dist) {
      best_dist = dist;
      best = candidate;
    }
  }
  return best;
}

std::string IntervalSet::to_string() const {
  if (intervals_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i > 0) out += " U ";
    const Interval& in = intervals_[i];
    if (in.is_unbounded()) {
      out += fmt::format("[{:.6g},inf)", in.lo);
    } else {
      out += fmt::format("[{:.6g},{:.6g}]", in.lo, in.hi);
    }
  }
  return out;
}

IntervalSet interval_intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& set) {
  return os << set.to_string();
}

}  // namespace prvo
