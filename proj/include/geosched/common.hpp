#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace geosched {

using Time = std::int64_t;
using Cost = std::int64_t;

/// Closed interval [lo, hi] of integer times.
struct TimeInterval {
  Time lo = 0;
  Time hi = -1;

  bool empty() const { return hi < lo; }
  bool contains(Time t) const { return lo <= t && t <= hi; }
  Time length() const { return empty() ? 0 : hi - lo + 1; }
  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

/// Raised when an input violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an oracle is asked to solve an instance above its size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stage produced output that contradicts a guarantee it is supposed to
/// uphold. `stage` names the pipeline step.
class AssertionFailure : public std::runtime_error {
 public:
  AssertionFailure(std::string stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

namespace checked {

inline Cost add(Cost a, Cost b) {
  Cost out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("cost addition overflows int64");
  return out;
}

inline Cost mul(Cost a, Cost b) {
  Cost out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("cost multiplication overflows int64");
  return out;
}

}  // namespace checked

/// Smallest power of two >= v (v >= 1).
inline Cost ceilPow2(Cost v) {
  if (v <= 1) return 1;
  return static_cast<Cost>(std::bit_ceil(static_cast<std::uint64_t>(v)));
}

/// Largest power of two <= v (v >= 1).
inline Cost floorPow2(Cost v) {
  return static_cast<Cost>(std::bit_floor(static_cast<std::uint64_t>(v)));
}

/// log2 of a power of two.
inline int log2Exact(Cost pow2) { return std::countr_zero(static_cast<std::uint64_t>(pow2)); }

/// Cost class: 0 for cost 0, otherwise the k with cost in [2^(k-1), 2^k - 1].
inline int costClass(Cost c) {
  return c <= 0 ? 0 : static_cast<int>(std::bit_width(static_cast<std::uint64_t>(c)));
}

/// Weight of a class-k rectangle, 2^k - 1.
inline Cost classWeight(int k) { return (Cost{1} << k) - 1; }

}  // namespace geosched
