#include "sbeauty/report.hpp"

#include <algorithm>

namespace sbeauty {

void TextTable::header(std::vector<std::string> cells) {
  rows_.insert(rows_.begin(), std::move(cells));
  has_header_ = true;
}

void TextTable::row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

std::string TextTable::str() const {
  std::vector<std::size_t> width;
  for (const auto& row : rows_) {
    if (row.size() > width.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < rows_[r].size(); ++c) {
      if (c) out += "  ";
      out += rows_[r][c];
      if (c + 1 < rows_[r].size())
        out.append(width[c] - rows_[r][c].size(), ' ');
    }
    out += '\n';
    if (r == 0 && has_header_) {
      for (std::size_t c = 0; c < width.size(); ++c) {
        if (c) out += "  ";
        out.append(width[c], '-');
      }
      out += '\n';
    }
  }
  return out;
}

std::string record_line(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += '\t';
    out += fields[i].first + "=" + fields[i].second;
  }
  out += '\n';
  return out;
}

}  // namespace sbeauty
