#include "pairkey/rng.hpp"

#include <cmath>
#include <numbers>

namespace pairkey {

void RngStream::refill() {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(draw_),
                                  static_cast<std::uint32_t>(draw_ >> 32), hi_[0], hi_[1]};
    buf_ = Philox4x32::apply(ctr, key_);
    ++draw_;
    buf_pos_ = 0;
}

std::uint64_t RngStream::next_u64() {
    if (buf_pos_ > 2) refill();
    const std::uint64_t lo = buf_[buf_pos_];
    const std::uint64_t hi = buf_[buf_pos_ + 1];
    buf_pos_ += 2;
    return lo | (hi << 32);
}

double RngStream::uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_cached_gauss_) {
        has_cached_gauss_ = false;
        return cached_gauss_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_gauss_ = r * std::sin(theta);
    has_cached_gauss_ = true;
    return r * std::cos(theta);
}

}  // namespace pairkey
