#include "framebound/partition.hpp"

#include "framebound/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace framebound::symfunc {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (const int part : parts_) {
    if (part < 1) {
      throw domain_error("partition parts must be positive");
    }
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::sum() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::vector<std::pair<int, int>> Partition::multiplicities() const {
  std::vector<std::pair<int, int>> runs;
  for (const int part : parts_) {
    if (!runs.empty() && runs.back().first == part) {
      ++runs.back().second;
    } else {
      runs.emplace_back(part, 1);
    }
  }
  return runs;
}

namespace {

void emit_partitions(int remaining, int max_part, std::vector<int>& prefix,
                     std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition(prefix));
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    emit_partitions(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

} // namespace

std::vector<Partition> enumerate_partitions(int p) {
  if (p < 1 || p > kMaxPartitionDegree) {
    throw domain_error("partition degree must satisfy 1 <= p <= 64");
  }
  std::vector<Partition> out;
  std::vector<int> prefix;
  emit_partitions(p, p, prefix, out);
  return out;
}

} // namespace framebound::symfunc
