#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace kc {

/// Partition of {0,...,n-1} into disjoint nonempty blocks.
struct SetPartition {
    std::vector<std::vector<int>> blocks;
    int n_blocks() const { return static_cast<int>(blocks.size()); }
};

std::uint64_t bell_number(int n);

/// All Bell(n) partitions in restricted-growth-string order. 1 <= n <= 12.
std::vector<SetPartition> enumerate_partitions(int n);

/// Streaming form: visit(rgs, n_blocks) for every partition, rgs[i] = block of i.
void for_each_partition(int n, const std::function<void(const std::vector<int>&, int)>& visit);

}  // namespace kc
