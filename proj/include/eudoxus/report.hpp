#pragma once

// Reports: free-form sections for people, `CHECK <name> PASS|FAIL|UNKNOWN <detail>` lines for machines.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace eudoxus {

enum class Status { Pass, Fail, Unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct Check {
  std::string name;
  Status status = Status::Unknown;
  std::string detail;
};

class Report {
 public:
  explicit Report(std::string title, std::uint64_t seed) : title_(std::move(title)), seed_(seed) {}

  void section(const std::string& heading, const std::string& body) { sections_.push_back({heading, body}); }

  void add(Check c) {
    for (char& ch : c.detail)
      if (ch == '\n') ch = ' ';
    checks_.push_back(std::move(c));
  }
  void add(const std::string& name, bool pass, const std::string& detail) {
    add(Check{name, pass ? Status::Pass : Status::Fail, detail});
  }

  const std::vector<Check>& checks() const { return checks_; }

  /// 1 when any check failed; UNKNOWN does not fail a run.
  int exit_code() const {
    for (const Check& c : checks_)
      if (c.status == Status::Fail) return 1;
    return 0;
  }

  /// Check lines sorted by name, so evaluation order never changes the output.
  std::vector<std::string> check_lines() const {
    std::vector<Check> sorted = checks_;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    std::vector<std::string> out;
    for (const Check& c : sorted) {
      std::string line = "CHECK " + c.name + " " + to_string(c.status);
      if (!c.detail.empty()) line += " " + c.detail;
      out.push_back(line);
    }
    return out;
  }

  void write(std::ostream& os) const {
    os << "# " << title_ << "\n# seed " << seed_ << "\n";
    for (const auto& [h, b] : sections_) {
      os << "\n## " << h << "\n" << b;
      if (!b.empty() && b.back() != '\n') os << "\n";
    }
    if (!checks_.empty()) os << "\n";
    for (const std::string& l : check_lines()) os << l << "\n";
  }

  std::string str() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }

 private:
  std::string title_;
  std::uint64_t seed_;
  std::vector<std::pair<std::string, std::string>> sections_;
  std::vector<Check> checks_;
};

}  // namespace eudoxus
