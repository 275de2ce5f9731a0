#pragma once

#include <cmath>
#include <cstdint>

namespace rpsdp {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Inverse standard normal CDF for p in (0, 1), Wichura's AS 241 (relative error ~1e-16).
inline double normal_quantile(double p) noexcept {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
             1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
          4.6303378461565452959) * r + 1.42343711074968357734) /
        (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
             0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
          2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
             0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
          5.4637849111641143699) * r + 6.6579046435011037772) /
        (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
             7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
          0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -v : v;
}

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, a, b, c). Nothing is consumed, so draws can be taken in any
/// order or from any thread and still reproduce bit for bit.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

  /// Independent child generator.
  constexpr CounterRng split(std::uint64_t stream) const noexcept {
    CounterRng child(0);
    child.key_ = mix64(key_ ^ mix64(stream ^ 0xd1b54a32d192ed03ULL));
    return child;
  }

  constexpr std::uint64_t bits(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const noexcept {
    std::uint64_t h = mix64(key_ ^ a);
    h = mix64(h ^ (b * 0xff51afd7ed558ccdULL));
    return mix64(h ^ (c * 0xc4ceb9fe1a85ec53ULL));
  }

  /// Draws sharing (a, b) with the first two mixing rounds hoisted; bit-identical
  /// to the corresponding CounterRng calls.
  class Cell {
   public:
    constexpr std::uint64_t bits(std::uint64_t c) const noexcept { return mix64(h_ ^ (c * 0xc4ceb9fe1a85ec53ULL)); }
    double uniform(std::uint64_t c) const noexcept { return (static_cast<double>(bits(c) >> 11) + 0.5) * 0x1.0p-53; }
    double normal(std::uint64_t c) const noexcept { return normal_quantile(uniform(c)); }

   private:
    friend class CounterRng;
    constexpr explicit Cell(std::uint64_t h) noexcept : h_(h) {}
    std::uint64_t h_;
  };

  constexpr std::uint64_t lane(std::uint64_t a) const noexcept { return mix64(key_ ^ a); }
  constexpr Cell cell_in_lane(std::uint64_t lane_hash, std::uint64_t b) const noexcept {
    return Cell(mix64(lane_hash ^ (b * 0xff51afd7ed558ccdULL)));
  }
  constexpr Cell cell(std::uint64_t a, std::uint64_t b) const noexcept { return cell_in_lane(lane(a), b); }

  /// Uniform in the open interval (0, 1).
  double uniform(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const noexcept {
    return (static_cast<double>(bits(a, b, c) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by inversion of one keyed uniform.
  double normal(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const noexcept {
    return normal_quantile(uniform(a, b, c));
  }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) const noexcept {
    __extension__ typedef unsigned __int128 wide;
    return static_cast<std::uint64_t>((static_cast<wide>(bits(a, b, c)) * bound) >> 64);
  }

 private:
  std::uint64_t key_;
};

}  // namespace rpsdp
