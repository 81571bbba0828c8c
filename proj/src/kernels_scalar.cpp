#include "kap/kernels.hpp"

namespace kap {

namespace {

// Runs the block phase with plain scalar ops, one lane at a time. The lane
// accumulators renormalize on the shared cadence (every RENORM_EVERY blocks),
// which the exported pending count reflects.
template <typename TermFn>
lanes::BlockState block_phase(std::size_t blocks, TermFn term) {
    TdAcc acc[lanes::kCount];
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t l = 0; l < lanes::kCount; ++l)
            acc[l].add(term(b * lanes::kCount + l));
    lanes::BlockState st;
    st.pending = static_cast<unsigned>(blocks % TdAcc::RENORM_EVERY);
    for (std::size_t l = 0; l < lanes::kCount; ++l) st.lane[l] = acc[l].raw();
    return st;
}

}  // namespace

TD sum_recip_scalar(const std::uint64_t* n, std::size_t count) {
    std::size_t blocks = count / lanes::kCount;
    lanes::BlockState st = block_phase(
        blocks, [&](std::size_t i) { return dd_recip(static_cast<double>(n[i])); });
    return lanes::finish_recip(st, n + blocks * lanes::kCount, count % lanes::kCount);
}

TD sum_weighted_scalar(const std::uint64_t* n, const std::uint64_t* w, std::size_t count) {
    std::size_t blocks = count / lanes::kCount;
    lanes::BlockState st = block_phase(blocks, [&](std::size_t i) {
        return dd_scale(dd_recip(static_cast<double>(n[i])), static_cast<double>(w[i]));
    });
    return lanes::finish_weighted(st, n + blocks * lanes::kCount,
                                  w + blocks * lanes::kCount, count % lanes::kCount);
}

}  // namespace kap
