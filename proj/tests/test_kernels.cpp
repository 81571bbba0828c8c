#include "kap/kernels.hpp"
#include "kap/real.hpp"

#include <cstdio>
#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

using namespace kap;

static int failures = 0;

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            std::printf("FAIL %s:%d  %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                 \
        }                                                               \
    } while (0)

static bool same_td(TD a, TD b) { return std::memcmp(&a, &b, sizeof(TD)) == 0; }

static Real td_real(TD v) { return Real(v.t0) + v.t1 + v.t2; }

// Mix of dense small values, values near the 1e10 sieve cap, and random
// draws in between; every size class crosses the 4-lane block boundary.
static std::vector<std::uint64_t> make_values(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> wide(1, 9'999'999'999ull);
    std::vector<std::uint64_t> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        switch (i % 3) {
            case 0: v[i] = 1 + i; break;
            case 1: v[i] = 9'999'999'999ull - i; break;
            default: v[i] = wide(rng); break;
        }
    }
    return v;
}

static void backends_bit_equal() {
    if (!avx2_usable()) {
        std::puts("note: AVX2 unavailable on this host, skipping bit-equality sweep");
        return;
    }
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> wdist(0, 1 << 20);
    for (std::size_t count : {std::size_t{0}, std::size_t{1}, std::size_t{2}, std::size_t{3},
                              std::size_t{4}, std::size_t{5}, std::size_t{7}, std::size_t{8},
                              std::size_t{63}, std::size_t{1023}, std::size_t{1024},
                              std::size_t{1025}, std::size_t{4096}, std::size_t{100'003}}) {
        std::vector<std::uint64_t> n = make_values(count, count * 31 + 1);
        std::vector<std::uint64_t> w(count);
        for (auto& x : w) x = wdist(rng);
        CHECK(same_td(sum_recip_scalar(n.data(), count), sum_recip_avx2(n.data(), count)));
        CHECK(same_td(sum_weighted_scalar(n.data(), w.data(), count),
                      sum_weighted_avx2(n.data(), w.data(), count)));
    }
}

static void accuracy_vs_real() {
    ScopedDigits scope(40);
    const std::size_t count = 100'003;
    std::vector<std::uint64_t> n = make_values(count, 99);
    std::vector<std::uint64_t> w(count);
    for (std::size_t i = 0; i < count; ++i) w[i] = (i * 2654435761u) % 1000;

    Real ref = 0, wref = 0;
    for (std::size_t i = 0; i < count; ++i) {
        ref += Real(1) / n[i];
        wref += Real(w[i]) / n[i];
    }
    ReciprocalFn recip = resolve_sum_recip(SimdMode::Auto);
    WeightedFn weighted = resolve_sum_weighted(SimdMode::Auto);
    CHECK(abs(td_real(recip(n.data(), count)) - ref) < Real("1e-27"));
    // weighted terms are ~1000x larger; the budget is relative
    CHECK(abs(td_real(weighted(n.data(), w.data(), count)) - wref) < Real("1e-24") * wref);

    // dense harmonic head, the actual workload shape
    std::vector<std::uint64_t> dense(1'000'000);
    for (std::size_t i = 0; i < dense.size(); ++i) dense[i] = i + 1;
    Real href = 0;
    for (std::size_t i = dense.size(); i > 0; --i) href += Real(1) / i;
    CHECK(abs(td_real(recip(dense.data(), dense.size())) - href) < Real("1e-27"));
}

static void resolver_contract() {
    CHECK(resolve_sum_recip(SimdMode::ForceScalar) == &sum_recip_scalar);
    CHECK(resolve_sum_weighted(SimdMode::ForceScalar) == &sum_weighted_scalar);
    CHECK(backend_name(SimdMode::ForceScalar) != nullptr);
    CHECK(backend_name(SimdMode::Auto) != nullptr);
    if (avx2_usable()) {
        CHECK(resolve_sum_recip(SimdMode::Auto) == resolve_sum_recip(SimdMode::ForceAvx2));
    } else {
        CHECK(resolve_sum_recip(SimdMode::Auto) == &sum_recip_scalar);
        bool threw = false;
        try {
            resolve_sum_recip(SimdMode::ForceAvx2);
        } catch (const std::runtime_error&) {
            threw = true;
        }
        CHECK(threw);
    }
    CHECK(avx2_built() || !avx2_usable());
}

// Exporting the raw lane states mid-stream and resuming in fresh
// accumulators reproduces the one-shot result bit for bit: this is what lets
// the sieve process segments of any size.
static void block_handoff() {
    const std::size_t count = 10'002;
    std::vector<std::uint64_t> n = make_values(count, 5);
    const std::size_t blocks = count / lanes::kCount;

    TD oneshot = sum_recip_scalar(n.data(), count);

    for (std::size_t cut_blocks : {std::size_t{0}, std::size_t{1}, std::size_t{1024},
                                   std::size_t{1500}, blocks}) {
        TdAcc first[lanes::kCount];
        for (std::size_t i = 0; i < cut_blocks * lanes::kCount; ++i)
            first[i % lanes::kCount].add(dd_recip(static_cast<double>(n[i])));

        lanes::BlockState st;
        st.pending = static_cast<unsigned>(cut_blocks % TdAcc::RENORM_EVERY);
        for (std::size_t l = 0; l < lanes::kCount; ++l) st.lane[l] = first[l].raw();

        TdAcc second[lanes::kCount];
        for (std::size_t l = 0; l < lanes::kCount; ++l)
            second[l].set_raw(st.lane[l], st.pending);
        for (std::size_t i = cut_blocks * lanes::kCount; i < blocks * lanes::kCount; ++i)
            second[i % lanes::kCount].add(dd_recip(static_cast<double>(n[i])));

        lanes::BlockState out;
        out.pending = static_cast<unsigned>(blocks % TdAcc::RENORM_EVERY);
        for (std::size_t l = 0; l < lanes::kCount; ++l) out.lane[l] = second[l].raw();
        TD merged = lanes::finish_recip(out, n.data() + blocks * lanes::kCount,
                                        count % lanes::kCount);
        CHECK(same_td(oneshot, merged));
    }
}

int main() {
    backends_bit_equal();
    accuracy_vs_real();
    resolver_contract();
    block_handoff();
    if (failures) {
        std::printf("test_kernels: %d failure(s)\n", failures);
        return 1;
    }
    std::puts("test_kernels: all checks passed");
    return 0;
}
