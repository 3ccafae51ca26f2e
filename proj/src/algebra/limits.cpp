#include "wander/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "wander/errors.hpp"

namespace wander {

namespace {

template <class T>
T read_positive(const char* name, T fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  const std::string text(raw);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(name) + " must be a positive integer, got '" + text + "'");
  }
  return value;
}

}  // namespace

Limits Limits::from_environment() {
  Limits out;
  out.degree_cap = read_positive<int>("WANDER_DEGREE_CAP", out.degree_cap);
  out.bit_budget = read_positive<std::size_t>("WANDER_BIT_BUDGET", out.bit_budget);
  return out;
}

}  // namespace wander
