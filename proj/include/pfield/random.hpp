#pragma once

#include <cstdint>
#include <random>

namespace pfield {

/// One independent random stream. Streams are derived from a root seed and a
/// stream index, so a run is reproducible for a fixed (seed, stream count).
class RandomStream {
public:
    RandomStream(std::uint64_t root_seed, std::uint64_t stream_index);

    /// Uniform on the open interval (0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() { return normal_(engine_); }
    double exponential() { return exponential_(engine_); }
    std::size_t index(std::size_t n);
    std::uint64_t poisson(double mean);

    std::uint64_t root_seed() const { return root_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t root_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::exponential_distribution<double> exponential_{1.0};
};

} // namespace pfield
