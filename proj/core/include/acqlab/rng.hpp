#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace acqlab {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Independent sub-stream seed for (seed, tag, index). Every randomized
// component draws from its own sub-stream so that adding draws in one place
// never shifts the numbers seen by another.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) noexcept;

// Maps 64 random bits to a double in [0, 1) using the top 53 bits.
inline double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Thin wrapper over mt19937_64. Only the raw engine output is used; the
// distributions are computed here so results do not depend on the standard
// library implementation.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  double uniform01() { return to_unit(engine_()); }
  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, bound). Throws DomainError when bound is 0.
  std::uint64_t below(std::uint64_t bound);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace acqlab
