#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sea {

template <class Witness>
struct Violation {
  std::string axiom;
  std::vector<Witness> witness;
  std::string detail;
};

/// Outcome of an axiom check. Empty `violations` means valid.
///
/// By default at most one violation is kept per axiom name, which keeps
/// reports bounded; `exhaustive` keeps every violating instance.
template <class Witness>
class ValidationReport {
 public:
  explicit ValidationReport(bool exhaustive = false) : exhaustive_(exhaustive) {}

  bool ok() const { return violations_.empty(); }
  bool has(std::string_view axiom) const { return find(axiom) != nullptr; }

  const Violation<Witness>* find(std::string_view axiom) const {
    auto it = std::find_if(violations_.begin(), violations_.end(),
                           [&](const auto& v) { return v.axiom == axiom; });
    return it == violations_.end() ? nullptr : &*it;
  }

  /// Returns false when a witness for this axiom was already recorded and
  /// the report is not exhaustive, so callers can skip building details.
  bool wants(std::string_view axiom) const { return exhaustive_ || !has(axiom); }

  void add(std::string axiom, std::vector<Witness> witness, std::string detail = {}) {
    if (!wants(axiom)) return;
    violations_.push_back({std::move(axiom), std::move(witness), std::move(detail)});
  }

  void note(std::string text) { notes_.push_back(std::move(text)); }
  void count(std::size_t n = 1) { instances_checked_ += n; }

  const std::vector<Violation<Witness>>& violations() const { return violations_; }
  const std::vector<std::string>& notes() const { return notes_; }
  std::size_t instances_checked() const { return instances_checked_; }

  void merge(const ValidationReport& other) {
    for (const auto& v : other.violations_) add(v.axiom, v.witness, v.detail);
    notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
    instances_checked_ += other.instances_checked_;
  }

 private:
  bool exhaustive_;
  std::vector<Violation<Witness>> violations_;
  std::vector<std::string> notes_;
  std::size_t instances_checked_ = 0;
};

}  // namespace sea
