#ifndef MODGLUE_VALIDATION_HPP
#define MODGLUE_VALIDATION_HPP

#include <sstream>
#include <string>
#include <vector>

namespace modglue {

/** One violated clause, with a human-readable witness. */
struct Violation {
  std::string clause;
  std::string detail;
};

/** Collects every violation found by a validator; empty means valid. */
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  void add(std::string clause, std::string detail) {
    violations.push_back({std::move(clause), std::move(detail)});
  }

  void merge(const ValidationReport& other, const std::string& prefix = "") {
    for (const auto& v : other.violations)
      violations.push_back({prefix.empty() ? v.clause : prefix + v.clause, v.detail});
  }

  /** Number of violations carrying the given clause tag. */
  int count(const std::string& clause) const {
    int k = 0;
    for (const auto& v : violations)
      if (v.clause == clause) ++k;
    return k;
  }

  std::string str() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.clause << ": " << v.detail << "\n";
    return os.str();
  }
};

} // namespace modglue

#endif
