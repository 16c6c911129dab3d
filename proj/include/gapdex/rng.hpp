#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gapdex {

// Counter-based stream: a keyed block cipher over a 128-bit counter, so
// the stream for a given (seed, index) pair is identical on every run and
// under every parallel schedule. Distinct pairs give statistically
// independent streams.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_raw();

    // Uniform on the open interval (0, 1), 53-bit resolution; never
    // returns an endpoint, so inverse-CDF transforms stay finite.
    double next_uniform();

    // Standard normal via inverse CDF. The method is fixed: each variate
    // consumes exactly one raw draw, keeping replicate streams aligned.
    double next_normal();

  private:
    void refill();

    std::uint64_t key_;
    std::uint64_t ctr_hi_;
    std::uint64_t block_ = 0;
    std::uint64_t buf_[2] = {0, 0};
    int pos_ = 2;
};

RandomStream substream(std::uint64_t seed, std::uint64_t index);

void sample_std_normal(RandomStream& stream, std::span<double> out);

std::vector<double> sample_std_normal(RandomStream& stream, std::size_t n);

}  // namespace gapdex
