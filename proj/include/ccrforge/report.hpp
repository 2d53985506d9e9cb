#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ccrforge/error.hpp"

namespace ccrforge {

inline constexpr double kDefaultTol = 1e-10;

struct AxiomEntry {
  std::string id;
  double residual = 0.0;
  std::vector<std::size_t> witness;  // indices attaining the max residual
  bool pass = true;
  std::string note;
};

struct AxiomReport {
  std::string subject;
  double tol = kDefaultTol;
  std::vector<AxiomEntry> entries;

  bool passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const AxiomEntry& e) { return e.pass; });
  }

  const AxiomEntry& at(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return e;
    throw Error(ErrorKind::SchemaError, "report '" + subject + "' has no entry '" + id + "'");
  }

  bool contains(const std::string& id) const {
    return std::any_of(entries.begin(), entries.end(), [&](const AxiomEntry& e) { return e.id == id; });
  }

  double max_residual() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.residual);
    return m;
  }

  void append(const AxiomReport& other) { entries.insert(entries.end(), other.entries.begin(), other.entries.end()); }
};

/// Running maximum of a residual together with where it was attained.
class ResidualMax {
 public:
  explicit ResidualMax(std::string id) : id_(std::move(id)) {}

  void observe(double r, std::vector<std::size_t> where) {
    // NaN must never read as a pass.
    if (r != r) r = INFINITY;
    if (r > value_ || !seen_) {
      value_ = std::max(r, value_);
      witness_ = std::move(where);
      seen_ = true;
    }
  }

  double value() const noexcept { return value_; }

  AxiomEntry entry(double tol, std::string note = {}) const {
    return AxiomEntry{id_, value_, witness_, value_ < tol, std::move(note)};
  }

 private:
  std::string id_;
  double value_ = 0.0;
  std::vector<std::size_t> witness_;
  bool seen_ = false;
};

}  // namespace ccrforge
