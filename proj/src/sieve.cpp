#include "kap/sieve.hpp"

#include "kap/primes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace kap {

namespace {

// 20! is the last factorial below 2^64.
constexpr unsigned kFactTop = 20;

std::uint64_t fact_u64(unsigned n) {
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n < 2) return n;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

void SieveConfig::validate() const {
    if (limit < 2) throw std::invalid_argument("sieve: limit must be >= 2");
    if (limit > 10'000'000'000ull)
        throw std::invalid_argument("sieve: limit above 1e10 is unsupported");
    if (segment_size < (1ull << 16))
        throw std::invalid_argument("sieve: segment_size must be >= 2^16");
    if (k_max < 2 || k_max > 16)
        throw std::invalid_argument("sieve: k_max must be in [2, 16]");
    if (thread_count == 0) throw std::invalid_argument("sieve: thread_count must be >= 1");
    if (checkpoints.empty()) throw std::invalid_argument("sieve: no checkpoints");
    std::uint64_t prev = 0;
    for (std::uint64_t c : checkpoints) {
        if (c < 2 || c > limit)
            throw std::invalid_argument("sieve: checkpoint outside [2, limit]");
        if (c <= prev) throw std::invalid_argument("sieve: checkpoints must increase");
        prev = c;
    }
    if (checkpoints.back() != limit)
        throw std::invalid_argument("sieve: last checkpoint must equal limit");
}

std::uint64_t ordered_factorizations(std::uint8_t omega, std::uint64_t denom_fact) {
    if (omega > kFactTop || denom_fact == kDenomSaturated)
        throw std::logic_error("ordered_factorizations: outside exact u64 range");
    return fact_u64(omega) / denom_fact;
}

OmegaSegment sieve_segment(std::uint64_t base, std::uint64_t len,
                           const std::vector<std::uint64_t>& base_primes) {
    if (base < 1 || len < 1) throw std::invalid_argument("sieve_segment: empty range");
    const std::uint64_t top = base + len - 1;
    const std::uint64_t need = isqrt_u64(top);
    // Coverage means no prime is missing from (largest supplied, sqrt(top)];
    // the largest supplied prime itself usually sits below sqrt(top).
    const std::uint64_t have = base_primes.empty() ? 1 : base_primes.back();
    for (std::uint64_t q = have + 1; q <= need; ++q)
        if (is_prime_u64(q))
            throw std::invalid_argument("sieve_segment: base_primes must cover sqrt(top)");

    OmegaSegment seg;
    seg.base = base;
    seg.omega.assign(len, 0);
    seg.squarefree.assign(len, 1);
    seg.denom_fact.assign(len, 1);
    std::vector<std::uint64_t> rem(len);
    for (std::uint64_t i = 0; i < len; ++i) rem[i] = base + i;

    // March prime powers: the visit at p^level contributes one unit of Omega,
    // one division of the cofactor, and the factor `level` growing the
    // exponent's factorial in denom_fact.
    for (std::uint64_t p : base_primes) {
        if (p > need) break;
        std::uint64_t q = p;
        unsigned level = 1;
        while (true) {
            for (std::uint64_t m = ((base + q - 1) / q) * q; m <= top; m += q) {
                std::uint64_t i = m - base;
                ++seg.omega[i];
                rem[i] /= p;
                if (level >= 2) {
                    seg.squarefree[i] = 0;
                    std::uint64_t& d = seg.denom_fact[i];
                    if (d > kDenomSaturated / level) d = kDenomSaturated;
                    else d *= level;
                }
            }
            if (q > top / p) break;
            q *= p;
            ++level;
        }
    }
    // At most one prime factor > sqrt(top) can remain; its exponent is 1, so
    // squarefree and denom_fact are already correct.
    for (std::uint64_t i = 0; i < len; ++i)
        if (rem[i] > 1) ++seg.omega[i];
    return seg;
}

namespace {

struct Piece {
    std::uint64_t a, b;  // integer range [a, b)
    int snapshot;        // checkpoint index closing at b-1, or -1
};

struct PieceResult {
    std::vector<std::uint64_t> N;
    std::uint64_t N_over = 0;
    std::vector<TD> R, S;
    TD R_over{}, R2_star{};
    std::array<TD, kMomentOrder + 1> moments{};
    // Drift integral over t in [max(a-1,2), b-1], split into the part from
    // this piece's own primes plus (span coefficient) x (global T prefix).
    std::array<double, 4> drift_local{};
    std::array<double, 4> drift_span{};
};

// Antiderivative of log(w) w^{j-1}: w^j log(w)/j - w^j/j^2.
double phi_drift(unsigned j, double w) {
    double wj = std::pow(w, static_cast<int>(j));
    return wj * std::log(w) / j - wj / (j * j);
}

PieceResult process_piece(const Piece& pc, const std::vector<std::uint64_t>& base_primes,
                          unsigned k_max, ReciprocalFn recip, WeightedFn weighted) {
    const std::uint64_t len = pc.b - pc.a;
    OmegaSegment seg = sieve_segment(pc.a, len, base_primes);

    PieceResult res;
    res.N.assign(k_max + 1, 0);
    res.R.assign(k_max + 1, TD{});
    res.S.assign(k_max + 1, TD{});

    std::vector<std::vector<std::uint64_t>> nums(k_max + 2);
    std::vector<std::vector<std::uint64_t>> wts(k_max + 1);
    std::vector<std::uint64_t> sf2;

    // Integration bounds in w = log t (the first piece starts the integral
    // at t = 2 exactly).
    const double wl = std::log(static_cast<double>(pc.a == 2 ? 2 : pc.a - 1));
    const double wh = std::log(static_cast<double>(pc.b - 1));
    for (unsigned j = 1; j <= 3; ++j) {
        double pl = 1, ph = 1;
        for (unsigned r = 0; r < j; ++r) { pl *= wl; ph *= wh; }
        res.drift_span[j] = (ph - pl) / j;
        res.drift_local[j] = -(phi_drift(j, wh) - phi_drift(j, wl));
    }

    TdAcc moments[kMomentOrder + 1];
    for (std::uint64_t i = 0; i < len; ++i) {
        const std::uint64_t n = pc.a + i;
        const unsigned om = seg.omega[i];
        if (om == 1) {
            const double pd = static_cast<double>(n);
            const double lp = std::log(pd);
            const DD rec = dd_recip(pd);
            double lpj = 1;
            for (unsigned j = 1; j <= kMomentOrder; ++j) {
                lpj *= lp;
                moments[j].add(dd_scale(rec, lpj));
            }
            double wpj = 1, whj = 1;
            for (unsigned j = 1; j <= 3; ++j) {
                wpj *= lp;
                whj *= wh;
                res.drift_local[j] += (whj - wpj) / (j * pd);
            }
        }
        const unsigned bucket = std::min(om, k_max + 1);
        nums[bucket].push_back(n);
        if (om <= k_max) {
            wts[bucket].push_back(ordered_factorizations(seg.omega[i], seg.denom_fact[i]));
            if (om == 2 && seg.squarefree[i]) sf2.push_back(n);
        }
    }

    for (unsigned k = 0; k <= k_max; ++k) {
        res.N[k] = nums[k].size();
        res.R[k] = recip(nums[k].data(), nums[k].size());
        res.S[k] = weighted(nums[k].data(), wts[k].data(), nums[k].size());
    }
    res.N_over = nums[k_max + 1].size();
    res.R_over = recip(nums[k_max + 1].data(), nums[k_max + 1].size());
    res.R2_star = recip(sf2.data(), sf2.size());
    for (unsigned j = 1; j <= kMomentOrder; ++j) res.moments[j] = moments[j].value();
    return res;
}

// Merged running state; everything folds in ascending piece order only, so
// results are independent of the thread count.
struct Running {
    std::vector<std::uint64_t> N;
    std::uint64_t N_over = 0;
    std::vector<TD> R, S;
    TD R_over{}, R2_star{};
    std::array<TD, kMomentOrder + 1> moments{};
    std::array<double, 4> drift{};

    explicit Running(unsigned k_max)
        : N(k_max + 1, 0), R(k_max + 1, TD{}), S(k_max + 1, TD{}) {
        // n = 1 (zero prime factors) is not visited by the segment walk but
        // belongs in every snapshot: without it sum_k N_k would miss floor(x)
        // by one and sum_k R_k would miss the leading 1/1 of the harmonic sum.
        N[0] = 1;
        R[0] = {1.0, 0.0, 0.0};
        S[0] = {1.0, 0.0, 0.0};
    }

    void fold(const PieceResult& pr) {
        // T(a-1) prefix first: the piece's drift span multiplies the sum of
        // prime reciprocals before the piece.
        const double t_prefix = td_to_double(R[1]);
        for (unsigned j = 1; j <= 3; ++j)
            drift[j] += pr.drift_local[j] + t_prefix * pr.drift_span[j];
        for (std::size_t k = 0; k < N.size(); ++k) {
            N[k] += pr.N[k];
            R[k] = td_add(R[k], pr.R[k]);
            S[k] = td_add(S[k], pr.S[k]);
        }
        N_over += pr.N_over;
        R_over = td_add(R_over, pr.R_over);
        R2_star = td_add(R2_star, pr.R2_star);
        for (unsigned j = 1; j <= kMomentOrder; ++j)
            moments[j] = td_add(moments[j], pr.moments[j]);
    }

    CheckpointRow snapshot(std::uint64_t x) const {
        CheckpointRow row;
        row.x = x;
        row.N = N;
        row.N_over = N_over;
        row.R = R;
        row.S = S;
        row.R_over = R_over;
        row.R2_star = R2_star;
        row.T = R[1];
        row.logp_moments = moments;
        row.drift_integral = drift;
        return row;
    }
};

}  // namespace

const CheckpointRow& SumLedger::at(std::uint64_t x) const {
    for (const CheckpointRow& r : rows)
        if (r.x == x) return r;
    throw std::invalid_argument("SumLedger: no checkpoint at requested x");
}

SumLedger accumulate(const SieveConfig& config) {
    config.validate();
    const std::uint64_t limit = config.limit;
    const auto base_primes = primes_up_to(std::max<std::uint64_t>(isqrt_u64(limit), 2));

    std::vector<Piece> pieces;
    std::uint64_t start = 2;
    for (std::size_t ci = 0; ci < config.checkpoints.size(); ++ci) {
        const std::uint64_t end = config.checkpoints[ci] + 1;
        while (start < end) {
            const std::uint64_t b = std::min(start + config.segment_size, end);
            pieces.push_back({start, b, b == end ? static_cast<int>(ci) : -1});
            start = b;
        }
    }

    const ReciprocalFn recip = resolve_sum_recip(config.simd);
    const WeightedFn weighted = resolve_sum_weighted(config.simd);

    struct Shared {
        std::atomic<std::size_t> next{0};
        std::mutex m;
        std::condition_variable cv_space, cv_data;
        std::map<std::size_t, PieceResult> done;
        std::size_t merge_pos = 0;
        std::size_t window = 0;
    } sh;
    const unsigned nthreads = config.thread_count;
    sh.window = 2 * static_cast<std::size_t>(nthreads) + 4;

    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        workers.emplace_back([&] {
            while (true) {
                const std::size_t i = sh.next.fetch_add(1);
                if (i >= pieces.size()) break;
                PieceResult r =
                    process_piece(pieces[i], base_primes, config.k_max, recip, weighted);
                std::unique_lock<std::mutex> lk(sh.m);
                sh.cv_space.wait(lk, [&] { return i < sh.merge_pos + sh.window; });
                sh.done.emplace(i, std::move(r));
                sh.cv_data.notify_all();
            }
        });
    }

    SumLedger ledger;
    ledger.config = config;
    Running run(config.k_max);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        PieceResult pr;
        {
            std::unique_lock<std::mutex> lk(sh.m);
            sh.cv_data.wait(lk, [&] { return sh.done.count(i) != 0; });
            pr = std::move(sh.done.at(i));
            sh.done.erase(i);
            sh.merge_pos = i + 1;
            sh.cv_space.notify_all();
        }
        run.fold(pr);
        if (pieces[i].snapshot >= 0)
            ledger.rows.push_back(
                run.snapshot(config.checkpoints[static_cast<std::size_t>(pieces[i].snapshot)]));
    }
    for (std::thread& w : workers) w.join();
    return ledger;
}

std::vector<ErrorSample> error_samples(const SumLedger& ledger, const Real& beta) {
    std::vector<ErrorSample> out;
    out.reserve(ledger.rows.size());
    for (const CheckpointRow& row : ledger.rows) {
        Real t = td_real(row.T);
        Real loglog = log(log(Real(row.x)));
        out.push_back({row.x, t - loglog - beta});
    }
    return out;
}

Real smooth_reciprocal(unsigned k, std::uint64_t x, Precision prec) {
    if (x < 2) throw std::invalid_argument("smooth_reciprocal: x must be >= 2");
    ScopedDigits scope(prec.work_digits());
    if (k == 0) return Real(1);
    std::vector<Real> pi(k + 1, Real(0));
    for_each_prime(x, [&](std::uint64_t p) {
        Real inv = Real(1) / Real(p);
        Real w = 1;
        for (unsigned j = 1; j <= k; ++j) {
            w *= inv;
            pi[j] += w;
        }
    });
    std::vector<Real> h(k + 1, Real(0));
    h[0] = 1;
    for (unsigned m = 1; m <= k; ++m) {
        Real s = 0;
        for (unsigned j = 1; j <= m; ++j) s += pi[j] * h[m - j];
        h[m] = s / m;
    }
    return h[k];
}

}  // namespace kap
