#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace treepin {

/// Ordered `key = value` report. Doubles print with 12 significant digits so
/// integral bit counts print as plain integers.
class Report {
 public:
  using Value = std::variant<bool, long long, double, std::string>;

  template <typename T>
  void set(std::string key, T value) {
    if constexpr (std::is_same_v<T, bool>) {
      put(std::move(key), Value{value});
    } else if constexpr (std::is_integral_v<T>) {
      put(std::move(key), Value{static_cast<long long>(value)});
    } else if constexpr (std::is_floating_point_v<T>) {
      put(std::move(key), Value{static_cast<double>(value)});
    } else {
      put(std::move(key), Value{std::string(value)});
    }
  }

  const Value* find(const std::string& key) const;
  std::string get_text(const std::string& key) const;
  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

  std::string text() const;
  std::string json() const;

 private:
  void put(std::string key, Value value);
  std::vector<std::pair<std::string, Value>> entries_;
};

std::string format_value(const Report::Value& v);

}  // namespace treepin
