#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

namespace fourcalc {

/// Where an expected value comes from.
enum class Provenance { reported, derived, trivial };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::reported: return "reported";
    case Provenance::derived: return "derived";
    case Provenance::trivial: return "trivial";
  }
  return "?";
}

struct Check {
  std::string id;
  std::string description;
  std::string expected;
  std::string computed;
  Provenance provenance = Provenance::derived;
  /// Short pointer to the statement being checked.
  std::string reference;
  bool pass = false;
};

class VerificationReport {
 public:
  static constexpr int kVersion = 1;

  VerificationReport() = default;
  explicit VerificationReport(std::string title) : title_(std::move(title)) {}

  const std::string& title() const noexcept { return title_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }

  /// Passes iff expected == computed as strings.
  const Check& add(std::string id, std::string description, std::string expected, std::string computed,
                   Provenance provenance, std::string reference = {}) {
    const bool pass = expected == computed;
    checks_.push_back({std::move(id), std::move(description), std::move(expected), std::move(computed),
                       provenance, std::move(reference), pass});
    return checks_.back();
  }

  template <class T>
  const Check& expect_eq(std::string id, std::string description, const T& expected, const T& computed,
                         Provenance provenance, std::string reference = {}) {
    return add(std::move(id), std::move(description), stringify(expected), stringify(computed), provenance,
               std::move(reference));
  }

  const Check& expect_true(std::string id, std::string description, bool computed, Provenance provenance,
                           std::string reference = {}) {
    return add(std::move(id), std::move(description), "true", computed ? "true" : "false", provenance,
               std::move(reference));
  }

  /// Records a check whose computation itself threw.
  const Check& fail(std::string id, std::string description, std::string why) {
    checks_.push_back({std::move(id), std::move(description), "no error", "error: " + std::move(why),
                       Provenance::derived, {}, false});
    return checks_.back();
  }

  void note(std::string text) { notes_.push_back(std::move(text)); }

  void merge(const VerificationReport& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
    for (const auto& n : other.notes_)
      if (std::find(notes_.begin(), notes_.end(), n) == notes_.end()) notes_.push_back(n);
  }

  std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; }));
  }
  std::size_t failed() const { return checks_.size() - passed(); }
  bool all_passed() const { return failed() == 0; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    if (!title_.empty()) j["title"] = title_;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
      nlohmann::ordered_json e;
      e["id"] = c.id;
      e["description"] = c.description;
      e["expected"] = c.expected;
      e["computed"] = c.computed;
      e["pass"] = c.pass;
      e["paper_ref"] = c.reference;
      e["provenance"] = to_string(c.provenance);
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["summary"] = {{"passed", passed()}, {"failed", failed()}};
    if (!notes_.empty()) j["notes"] = notes_;
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    if (!title_.empty()) os << title_ << "\n";
    for (const auto& c : checks_) {
      os << (c.pass ? "  PASS " : "  FAIL ") << c.id << ": " << c.description << " [" << to_string(c.provenance)
         << "]";
      if (c.pass) os << " = " << c.computed << "\n";
      else os << "\n       expected " << c.expected << "\n       computed " << c.computed << "\n";
    }
    for (const auto& n : notes_) os << "  note: " << n << "\n";
    os << "summary: " << passed() << " passed, " << failed() << " failed\n";
    return os.str();
  }

 private:
  template <class T>
  static std::string stringify(const T& v) {
    if constexpr (std::is_same_v<T, bool>) {
      return v ? "true" : "false";
    } else if constexpr (std::is_convertible_v<T, std::string>) {
      return std::string(v);
    } else if constexpr (requires { v.to_string(); }) {
      return v.to_string();
    } else if constexpr (requires { v.str(); }) {
      return v.str();
    } else {
      std::ostringstream os;
      os << v;
      return os.str();
    }
  }

  std::string title_;
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

}  // namespace fourcalc
