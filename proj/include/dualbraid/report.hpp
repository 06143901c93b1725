#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dualbraid {

/// Outcome of one verification suite on one type.
struct CheckReport {
  std::string type;
  std::string check;
  long long instances = 0;
  std::vector<std::string> failures;
  std::vector<std::pair<std::string, std::string>> data;  // table rows, counts
  double wall_ms = 0;

  bool passed() const { return failures.empty(); }
  void fail(std::string what) { failures.push_back(std::move(what)); }
  void note(std::string key, std::string value) {
    data.emplace_back(std::move(key), std::move(value));
  }
};

}  // namespace dualbraid
