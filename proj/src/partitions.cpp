#include "kap/partitions.hpp"

#include <stdexcept>

namespace kap {

namespace {

void descend(unsigned remaining, unsigned max_part, unsigned min_part,
             std::vector<unsigned>& mult,
             const std::function<void(const std::vector<unsigned>&)>& visit) {
    if (remaining == 0) {
        visit(mult);
        return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= min_part; --part) {
        unsigned take = remaining / part;
        // add parts of this size from the maximal count downward, so the
        // partition with the largest parts comes first
        for (unsigned c = take; c >= 1; --c) {
            mult[part] = c;
            descend(remaining - c * part, part - 1, min_part, mult, visit);
        }
        mult[part] = 0;
    }
}

}  // namespace

void for_each_partition(unsigned k, unsigned min_part,
                        const std::function<void(const std::vector<unsigned>&)>& visit) {
    if (k > 64) throw std::invalid_argument("for_each_partition: k too large");
    if (min_part < 1) min_part = 1;
    std::vector<unsigned> mult(k + 1, 0);
    if (k == 0) {
        visit(mult);
        return;
    }
    descend(k, k, min_part, mult, visit);
}

std::uint64_t partition_count(unsigned k, unsigned min_part) {
    std::uint64_t n = 0;
    for_each_partition(k, min_part, [&](const std::vector<unsigned>&) { ++n; });
    return n;
}

}  // namespace kap
