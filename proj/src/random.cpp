#include "pfield/random.hpp"

namespace pfield {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream)
{
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
}

} // namespace

RandomStream::RandomStream(std::uint64_t root_seed, std::uint64_t stream_index)
    : root_seed_(root_seed), stream_index_(stream_index)
{
    auto seq = make_seed_seq(root_seed, stream_index);
    engine_.seed(seq);
}

double RandomStream::uniform()
{
    // 53-bit mantissa, shifted off zero.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t RandomStream::index(std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::uint64_t RandomStream::poisson(double mean)
{
    return std::poisson_distribution<std::uint64_t>(mean)(engine_);
}

} // namespace pfield
