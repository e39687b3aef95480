// Copyright 2026 The ipfpp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IPFPP_LOG_TIME_H_
#define IPFPP_LOG_TIME_H_

#include <cmath>
#include <compare>
#include <limits>

namespace ipfpp {

// A nonnegative passage time stored as its natural logarithm. Passage times
// e^{K w} with K around 1e12 overflow every hardware float, their logarithms
// do not. The default value is time 0 (log value -infinity).
class LogTime {
 public:
  constexpr LogTime() = default;

  static constexpr LogTime FromLog(double log_value) { return LogTime(log_value); }
  static constexpr LogTime Zero() { return LogTime(); }

  constexpr double log_value() const { return log_value_; }
  constexpr bool is_zero() const { return log_value_ == -std::numeric_limits<double>::infinity(); }

  friend constexpr std::partial_ordering operator<=>(LogTime a, LogTime b) { return a.log_value_ <=> b.log_value_; }
  friend constexpr bool operator==(LogTime a, LogTime b) { return a.log_value_ == b.log_value_; }

 private:
  constexpr explicit LogTime(double log_value) : log_value_(log_value) {}

  double log_value_ = -std::numeric_limits<double>::infinity();
};

// log(e^a + e^b), computed as max + log1p(exp(min - max)). Time zero is the
// identity.
inline LogTime logtime_add(LogTime a, LogTime b) {
  const double hi = a.log_value() < b.log_value() ? b.log_value() : a.log_value();
  const double lo = a.log_value() < b.log_value() ? a.log_value() : b.log_value();
  if (lo == -std::numeric_limits<double>::infinity()) return LogTime::FromLog(hi);
  return LogTime::FromLog(hi + std::log1p(std::exp(lo - hi)));
}

inline LogTime operator+(LogTime a, LogTime b) { return logtime_add(a, b); }

}  // namespace ipfpp

#endif  // IPFPP_LOG_TIME_H_
