#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace kap {

// Enumerates the integer partitions of k as multiplicity vectors mult, where
// mult[j] is the number of parts equal to j (1 <= j <= k, sum j*mult[j] = k).
// Parts below min_part are excluded (min_part = 2 gives the no-singleton
// partitions). Deterministic order; the callback may not retain the vector.
// Cheap through k ~ 40 (p(40) = 37338), guarded at k <= 64.
void for_each_partition(unsigned k, unsigned min_part,
                        const std::function<void(const std::vector<unsigned>&)>& visit);

std::uint64_t partition_count(unsigned k, unsigned min_part = 1);

}  // namespace kap
