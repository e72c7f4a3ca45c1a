#pragma once

#include <ostream>
#include <string>
#include <type_traits>

namespace sea::cli {

/// Line-oriented "key: value" report with two-space nesting. Output depends
/// only on the calls made, so identical runs give identical bytes.
class ReportWriter {
 public:
  explicit ReportWriter(std::ostream& out) : out_(out) {}

  void field(const std::string& key, const std::string& value);
  void field(const std::string& key, bool value) { field(key, std::string(value ? "true" : "false")); }
  void field(const std::string& key, const char* value) { field(key, std::string(value)); }
  template <class Int>
  void field(const std::string& key, Int value) requires std::is_integral_v<Int> {
    field(key, std::to_string(value));
  }

  /// Opens a nested section "key:".
  void begin(const std::string& key);
  void end();
  /// "- value" inside the current section.
  void item(const std::string& value);

 private:
  void indent();

  std::ostream& out_;
  int depth_ = 0;
};

}  // namespace sea::cli
