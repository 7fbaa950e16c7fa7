#pragma once

#include <compare>
#include <vector>

namespace framebound::symfunc {

/// Integer partition: weakly decreasing positive parts. Canonicalized on
/// construction (parts sorted descending).
class Partition {
public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts)
      : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int sum() const;
  int length() const { return static_cast<int>(parts_.size()); }

  /// Multiplicities j_k of each distinct part value, largest part first.
  std::vector<std::pair<int, int>> multiplicities() const;

  bool operator==(const Partition&) const = default;

private:
  std::vector<int> parts_;
};

/// Orders partitions in decreasing lexicographic order: (4) before (3,1)
/// before (2,2) before (2,1,1) before (1,1,1,1).
struct DecLexLess {
  bool operator()(const Partition& a, const Partition& b) const {
    return a.parts() > b.parts();
  }
};

/// All partitions of p in decreasing lexicographic order. 1 <= p <= 64.
std::vector<Partition> enumerate_partitions(int p);

inline constexpr int kMaxPartitionDegree = 64;

} // namespace framebound::symfunc
