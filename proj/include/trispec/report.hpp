#pragma once

#include <string>
#include <utility>
#include <vector>

namespace trispec {

enum class Verdict { pass, inconclusive, fail };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::fail: return "fail";
  }
  return "fail";
}

inline Verdict worst(Verdict a, Verdict b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

/// One inequality lhs > rhs (or lhs < rhs, depending on `name`), with the
/// signed margin in the direction of the claim.
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::fail;
  std::string note;
};

inline Check exact_check(std::string name, double lhs, double rhs, bool holds, std::string note = {}) {
  return {std::move(name), lhs, rhs, lhs - rhs, holds ? Verdict::pass : Verdict::fail, std::move(note)};
}

/// lhs > rhs where lhs carries a numerical error estimate. Passing needs a
/// margin of at least `safety` error estimates; a smaller positive margin,
/// or any margin within the error band, is inconclusive.
inline Check fem_greater(std::string name, double lhs, double rhs, double error, double safety = 3.0) {
  Check c{std::move(name), lhs, rhs, lhs - rhs, Verdict::inconclusive, {}};
  if (c.margin >= safety * error && c.margin > 0.0)
    c.verdict = Verdict::pass;
  else if (c.margin < -safety * error)
    c.verdict = Verdict::fail;
  c.note = "error estimate " + std::to_string(error);
  return c;
}

struct Report {
  std::string claim;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> witness;
  std::vector<std::pair<std::string, std::string>> info;

  Verdict verdict() const {
    Verdict v = Verdict::pass;
    for (const auto& c : checks) v = worst(v, c.verdict);
    return v;
  }

  void add(Check c) { checks.push_back(std::move(c)); }
  void note(std::string key, double value) { witness.emplace_back(std::move(key), value); }
  void note(std::string key, std::string value) { info.emplace_back(std::move(key), std::move(value)); }

  void merge(const Report& other, const std::string& prefix) {
    for (auto c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
    for (const auto& [k, v] : other.witness) witness.emplace_back(prefix + k, v);
    for (const auto& [k, v] : other.info) info.emplace_back(prefix + k, v);
  }
};

}  // namespace trispec
