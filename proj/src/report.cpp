#include "treepin/report.hpp"

#include <sstream>

#include <json.hpp>

namespace treepin {

std::string format_value(const Report::Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else {
          std::ostringstream os;
          os.precision(12);
          os << x;
          return os.str();
        }
      },
      v);
}

void Report::put(std::string key, Value value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

const Report::Value* Report::find(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string Report::get_text(const std::string& key) const {
  const auto* v = find(key);
  return v ? format_value(*v) : std::string();
}

std::string Report::text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + format_value(v) + "\n";
  return out;
}

std::string Report::json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [k, v] : entries_) {
    std::visit([&](const auto& x) { doc[k] = x; }, v);
  }
  return doc.dump(2) + "\n";
}

}  // namespace treepin
