#include "gapdex/rng.hpp"

#include "gapdex/normal.hpp"

namespace gapdex {

namespace {

// Philox 2x64, 10 rounds.
constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kWeylStep = 0x9E3779B97F4A7C15ULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index)
    : key_(seed), ctr_hi_(index) {}

void RandomStream::refill() {
    std::uint64_t x0 = block_;
    std::uint64_t x1 = ctr_hi_;
    std::uint64_t k = key_;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi;
        std::uint64_t lo;
        mulhilo(kMultiplier, x0, hi, lo);
        x0 = hi ^ k ^ x1;
        x1 = lo;
        k += kWeylStep;
    }
    buf_[0] = x0;
    buf_[1] = x1;
    pos_ = 0;
    ++block_;
}

std::uint64_t RandomStream::next_raw() {
    if (pos_ == 2) {
        refill();
    }
    return buf_[pos_++];
}

double RandomStream::next_uniform() {
    // 53 high bits, centered in the bin: values lie in (0, 1) strictly.
    return (static_cast<double>(next_raw() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_normal() { return std_normal_quantile(next_uniform()); }

RandomStream substream(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(seed, index);
}

void sample_std_normal(RandomStream& stream, std::span<double> out) {
    for (double& v : out) {
        v = stream.next_normal();
    }
}

std::vector<double> sample_std_normal(RandomStream& stream, std::size_t n) {
    std::vector<double> out(n);
    sample_std_normal(stream, std::span<double>(out));
    return out;
}

}  // namespace gapdex
