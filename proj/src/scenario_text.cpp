#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "sbeauty/protocol.hpp"

namespace sbeauty {

namespace {

// Cursor over one line of scenario text, tracking the 1-based column for
// error reporting.
class LineCursor {
 public:
  LineCursor(int line_no, std::string_view text) : line_(line_no), text_(text) {}

  int line() const { return line_; }
  int column() const { return static_cast<int>(pos_) + 1; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws();
    if (peek() != c)
      throw ParseError(line_, column(), std::string("expected '") + c + "'");
    ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  // Labels: alnum plus '.', '_', '-'; used for names, ids, outcomes, days,
  // signals.
  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) {
      // '-' can appear inside a label, but "->" always ends one.
      if (text_[pos_] == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') break;
      ++pos_;
    }
    if (pos_ == start) throw ParseError(line_, column(), "expected a label");
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational fraction() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '/' || text_[pos_] == '-' || text_[pos_] == '+'))
      ++pos_;
    if (pos_ == start) throw ParseError(line_, column(), "expected a fraction");
    try {
      return Rational::parse(text_.substr(start, pos_ - start));
    } catch (const std::exception& e) {
      throw ParseError(line_, static_cast<int>(start) + 1, e.what());
    }
  }

  void expect_end() {
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError(line_, column(), "unexpected trailing text");
  }

  // Remainder of the line with surrounding whitespace trimmed.
  std::string rest() {
    skip_ws();
    std::size_t end = text_.size();
    while (end > pos_ && (text_[end - 1] == ' ' || text_[end - 1] == '\t')) --end;
    std::string out(text_.substr(pos_, end - pos_));
    pos_ = text_.size();
    return out;
  }

  static bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' ||
           c == '-';
  }

 private:
  int line_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

Randomizer parse_randomizer(LineCursor& cur, RandomizerKind kind) {
  Randomizer r;
  r.kind = kind;
  r.id = cur.word();
  cur.expect('{');
  do {
    Outcome o;
    o.label = cur.word();
    cur.expect(':');
    o.weight = cur.fraction();
    r.outcomes.push_back(std::move(o));
  } while (cur.consume(','));
  cur.expect('}');
  cur.expect_end();
  return r;
}

void parse_branch(LineCursor& cur, ExperimentProtocol& p) {
  Profile profile;
  profile.push_back(cur.word());
  while (cur.consume(',')) profile.push_back(cur.word());
  cur.expect('-');
  cur.expect('>');
  cur.expect('[');
  AwakeningSchedule schedule;
  if (cur.peek() != ']') {
    do {
      Awakening a;
      a.day = cur.word();
      if (cur.consume('(')) {
        do {
          a.signals.insert(cur.word());
        } while (cur.consume(','));
        cur.expect(')');
      }
      schedule.awakenings.push_back(std::move(a));
    } while (cur.consume(','));
  }
  cur.expect(']');
  cur.expect_end();
  if (!p.branches.emplace(profile, std::move(schedule)).second)
    throw ParseError(cur.line(), 1,
                     "duplicate branch \"" + profile_str(profile) + "\"");
}

void parse_annotation(LineCursor& cur, ExperimentProtocol& p) {
  int at = cur.column();
  std::string key = cur.word();
  if (key != "toss_time")
    throw ParseError(cur.line(), at, "unknown annotation \"" + key + "\"");
  at = cur.column();
  std::string value = cur.word();
  if (value == "before_first_awakening")
    p.toss_time = TossTime::before_first_awakening;
  else if (value == "after_first_awakening")
    p.toss_time = TossTime::after_first_awakening;
  else
    throw ParseError(cur.line(), at, "unknown toss_time \"" + value + "\"");
  cur.expect_end();
}

}  // namespace

ExperimentProtocol parse_scenario(std::string_view text) {
  ExperimentProtocol p;
  int line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    std::string_view raw = text.substr(
        offset, eol == std::string_view::npos ? text.size() - offset : eol - offset);
    ++line_no;
    offset = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::string_view body = raw.substr(0, std::min(raw.find('#'), raw.size()));
    LineCursor cur(line_no, body);
    if (cur.at_end()) continue;

    int at = cur.column();
    std::string keyword = cur.word();
    if (keyword == "name") {
      p.name = cur.rest();
      if (p.name.empty()) throw ParseError(line_no, cur.column(), "empty name");
    } else if (keyword == "randomizer") {
      p.randomizers.push_back(parse_randomizer(cur, RandomizerKind::classical));
    } else if (keyword == "quantum") {
      at = cur.column();
      if (cur.word() != "randomizer")
        throw ParseError(line_no, at, "expected \"randomizer\" after \"quantum\"");
      p.randomizers.push_back(parse_randomizer(cur, RandomizerKind::quantum));
    } else if (keyword == "branch") {
      parse_branch(cur, p);
    } else if (keyword == "annotation") {
      parse_annotation(cur, p);
    } else {
      throw ParseError(line_no, at, "unknown directive \"" + keyword + "\"");
    }
  }
  return validate(p);
}

std::string render_scenario(const ExperimentProtocol& protocol) {
  std::string out;
  out += "name " + (protocol.name.empty() ? std::string("scenario") : protocol.name) +
         "\n";
  for (const Randomizer& r : protocol.randomizers) {
    if (r.kind == RandomizerKind::quantum) out += "quantum ";
    out += "randomizer " + r.id + " {";
    for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
      if (i) out += ", ";
      out += r.outcomes[i].label + ":" + r.outcomes[i].weight.str();
    }
    out += "}\n";
  }
  for (const auto& [profile, schedule] : protocol.branches) {
    out += "branch " + profile_str(profile) + " -> [";
    for (std::size_t i = 0; i < schedule.awakenings.size(); ++i) {
      const Awakening& a = schedule.awakenings[i];
      if (i) out += ", ";
      out += a.day;
      if (!a.signals.empty()) {
        out += "(";
        bool first = true;
        for (const std::string& s : a.signals) {
          if (!first) out += ",";
          out += s;
          first = false;
        }
        out += ")";
      }
    }
    out += "]\n";
  }
  if (protocol.toss_time) {
    out += "annotation toss_time ";
    out += *protocol.toss_time == TossTime::before_first_awakening
               ? "before_first_awakening"
               : "after_first_awakening";
    out += "\n";
  }
  return out;
}

}  // namespace sbeauty
