#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace degseq {

/// Non-negative integer degree vector. Caller order is preserved; statistics that
/// depend on the descending order are computed on a sorted copy.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<std::uint32_t> degrees) : degrees_(std::move(degrees)) {}
  DegreeSequence(std::initializer_list<std::uint32_t> degrees) : degrees_(degrees) {}

  std::size_t size() const { return degrees_.size(); }
  std::uint32_t operator[](std::size_t i) const { return degrees_[i]; }
  std::span<const std::uint32_t> values() const { return degrees_; }
  std::vector<std::uint32_t>& mutable_values() { return degrees_; }

  /// ||d||_1
  std::uint64_t sum() const;
  /// Number of entries > 0.
  std::size_t positive_count() const;

  bool operator==(const DegreeSequence&) const = default;

 private:
  std::vector<std::uint32_t> degrees_;
};

struct DegreeStats {
  std::uint64_t sum = 0;
  std::uint32_t max = 0;
  std::uint32_t min = 0;
  /// Sum of the max-degree many largest entries.
  std::uint64_t j = 0;

  bool operator==(const DegreeStats&) const = default;
};

DegreeStats degree_stats(const DegreeSequence& d);

/// Even sum and Erdos-Gallai. Entries >= n are rejected.
bool is_graphical(const DegreeSequence& d);

}  // namespace degseq
