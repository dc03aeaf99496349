#pragma once

#include <map>
#include <string>
#include <vector>

namespace orb {

// Outcome of a validator: violations make it fail, warnings only under --strict.
struct Report {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  long checks = 0;

  bool ok() const { return violations.empty(); }
  bool ok_strict() const { return violations.empty() && warnings.empty(); }
  void fail(std::string v) { violations.push_back(std::move(v)); }
  void warn(std::string w) { warnings.push_back(std::move(w)); }
  void note(std::string n) { notes.push_back(std::move(n)); }
  // Record one check; returns cond so callers can chain.
  bool expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) fail(what);
    return cond;
  }
  void merge(const Report& o, const std::string& prefix = "") {
    for (const auto& v : o.violations) violations.push_back(prefix + v);
    for (const auto& w : o.warnings) warnings.push_back(prefix + w);
    for (const auto& n : o.notes) notes.push_back(prefix + n);
    checks += o.checks;
  }
};

// Counts failures per law, one violation line per law.
class Tally {
 public:
  explicit Tally(Report& r) : r_(r) {}
  bool check(bool cond, const std::string& law, const std::string& where) {
    ++r_.checks;
    auto& e = seen_[law];
    ++e.total;
    if (!cond) {
      if (e.failed++ == 0) e.first = where;
    }
    return cond;
  }
  void flush() {
    for (const auto& [law, e] : seen_)
      if (e.failed)
        r_.fail(law + ": " + std::to_string(e.failed) + "/" + std::to_string(e.total) + " failures, first at " +
                e.first);
  }

 private:
  struct Entry {
    long total = 0;
    long failed = 0;
    std::string first;
  };
  Report& r_;
  std::map<std::string, Entry> seen_;
};

}  // namespace orb
