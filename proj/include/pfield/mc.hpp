#pragma once

#include "pfield/random.hpp"

#include <cmath>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace pfield {

/// Monte Carlo result. Every MC value in the library carries its standard
/// error, sample count and the root seed that produced it.
struct McEstimate {
    double value = 0.0;
    double std_err = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for a binomial proportion estimate (z = 1.96 by default).
Interval wilson_interval(const McEstimate& e, double z = 1.959963984540054);

struct McConfig {
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

/// Streaming mean / variance (Welford), mergeable across streams.
class MeanAccumulator {
public:
    void add(double x)
    {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    void merge(const MeanAccumulator& o)
    {
        if (o.n_ == 0)
            return;
        if (n_ == 0) {
            *this = o;
            return;
        }
        const double n = static_cast<double>(n_ + o.n_);
        const double d = o.mean_ - mean_;
        mean_ += d * static_cast<double>(o.n_) / n;
        m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
        n_ += o.n_;
    }

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double std_err() const { return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

    McEstimate estimate(std::uint64_t seed) const { return {mean_, std_err(), n_, seed}; }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Counts of successes over trials; reports the binomial standard error.
struct BernoulliAccumulator {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;

    void add(bool hit)
    {
        hits += hit ? 1 : 0;
        ++trials;
    }
    void merge(const BernoulliAccumulator& o)
    {
        hits += o.hits;
        trials += o.trials;
    }
    McEstimate estimate(std::uint64_t seed) const
    {
        if (trials == 0)
            return {0.0, 0.0, 0, seed};
        const double p = static_cast<double>(hits) / static_cast<double>(trials);
        return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials, seed};
    }
};

/// Number of samples assigned to stream `w` out of `workers`.
inline std::uint64_t stream_share(std::uint64_t n_total, unsigned workers, unsigned w)
{
    return n_total / workers + (w < n_total % workers ? 1 : 0);
}

/// Runs `fn(stream, count)` on `cfg.workers` independent streams and merges the
/// returned accumulators in stream order, so the result depends only on
/// (seed, workers).
template <class Fn>
auto run_streams(const McConfig& cfg, std::uint64_t n_total, Fn&& fn)
{
    const unsigned workers = cfg.workers == 0 ? 1u : cfg.workers;
    using Acc = decltype(fn(std::declval<RandomStream&>(), std::uint64_t{}));
    std::vector<Acc> parts(workers);
    if (workers == 1) {
        RandomStream rng(cfg.seed, 0);
        parts[0] = fn(rng, n_total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                RandomStream rng(cfg.seed, w);
                parts[w] = fn(rng, stream_share(n_total, workers, w));
            });
        }
        for (auto& t : pool)
            t.join();
    }
    Acc total = parts[0];
    for (unsigned w = 1; w < workers; ++w)
        total.merge(parts[w]);
    return total;
}

} // namespace pfield
