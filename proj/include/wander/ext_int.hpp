#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace wander {

/// An integer or +infinity. Used as the codomain of valuations.
class ExtInt {
 public:
  constexpr ExtInt() = default;
  constexpr ExtInt(std::int64_t v) : value_(v) {}  // NOLINT(implicit)

  static constexpr ExtInt infinity() {
    ExtInt e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Undefined for +infinity; callers check is_finite() first.
  constexpr std::int64_t value() const { return value_; }

  friend constexpr ExtInt operator+(ExtInt a, ExtInt b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtInt(a.value_ + b.value_);
  }

  friend constexpr bool operator==(ExtInt a, ExtInt b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::strong_ordering operator<=>(ExtInt a, ExtInt b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
  }

  friend std::ostream& operator<<(std::ostream& os, ExtInt e) {
    return os << e.to_string();
  }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

constexpr ExtInt min(ExtInt a, ExtInt b) { return a < b ? a : b; }

}  // namespace wander
