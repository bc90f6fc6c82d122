#include "argmin/rng.hpp"

#include <cmath>

namespace argmin {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

constexpr double kPi = 3.14159265358979323846;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> c,
                                                 std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

}  // namespace

Rng::Rng(SeedSpec seed)
    : key_{static_cast<std::uint32_t>(seed.master_seed),
           static_cast<std::uint32_t>(seed.master_seed >> 32)},
      stream_(seed.stream_index) {}

void Rng::refill() {
  block_ = philox_block({static_cast<std::uint32_t>(draw_counter_),
                         static_cast<std::uint32_t>(draw_counter_ >> 32),
                         static_cast<std::uint32_t>(stream_),
                         static_cast<std::uint32_t>(stream_ >> 32)},
                        key_);
  ++draw_counter_;
  block_pos_ = 0;
}

std::uint32_t Rng::next_u32() {
  if (block_pos_ == 4) refill();
  return block_[block_pos_++];
}

std::uint64_t Rng::next_u64() {
  std::uint64_t lo = next_u32();
  std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double Rng::uniform() {
  // 53 random bits offset by half an ulp: open interval, never 0 or 1.
  std::uint64_t r = next_u64() >> 11;
  return (static_cast<double>(r) + 0.5) * 0x1p-53;
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double r = std::sqrt(-2.0 * std::log(uniform()));
  double theta = 2.0 * kPi * uniform();
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::cauchy() { return std::tan(kPi * (uniform() - 0.5)); }

int Rng::sign() { return (next_u32() & 1u) ? 1 : -1; }

double Rng::stable(double alpha, double beta) {
  double u = kPi * (uniform() - 0.5);  // Unif(-pi/2, pi/2)
  double w = -std::log(uniform());     // Exp(1), drawn unconditionally
  if (alpha == 1.0) {
    double half_pi = kPi / 2.0;
    double t = half_pi + beta * u;
    return (t * std::tan(u) -
            beta * std::log(half_pi * w * std::cos(u) / t)) /
           half_pi;
  }
  double zeta = -beta * std::tan(kPi * alpha / 2.0);
  double xi0 = std::atan(-zeta) / alpha;
  double shifted = alpha * (u + xi0);
  return std::pow(1.0 + zeta * zeta, 0.5 / alpha) * std::sin(shifted) /
         std::pow(std::cos(u), 1.0 / alpha) *
         std::pow(std::cos(u - shifted) / w, (1.0 - alpha) / alpha);
}

}  // namespace argmin
