#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sbeauty {

// Small text helpers shared by the command-line front end.

// Column-aligned table with a two-space gutter, left-aligned cells.
class TextTable {
 public:
  void header(std::vector<std::string> cells);
  void row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::vector<std::vector<std::string>> rows_;
  bool has_header_ = false;
};

// One machine-readable line: tab-separated key=value pairs.
std::string record_line(const std::vector<std::pair<std::string, std::string>>& fields);

// Banner prepended to any output computed from a measure that models a known
// fallacy.
inline const char* kErroneousBanner = "[ERRONEOUS MODEL]";

}  // namespace sbeauty
