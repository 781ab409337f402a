#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rel {

// Counter-based splittable generator.
//
// A stream is identified by (seed, path). Draw i of a stream is a pure
// function of its key and i, so children created by split() never share
// state with their parent or siblings and generation can be parallelized
// per instance. Distributions are implemented here rather than taken from
// <random> so that outputs are identical across standard libraries.
class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::uint64_t seed);

  SeededRng split(std::string_view label) const;
  SeededRng split(std::uint64_t index) const;

  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::string>& path() const noexcept { return path_; }

  std::uint64_t next_u64();
  // Uniform on [lo, hi]; lo > hi is a ParameterError.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  std::size_t uniform_index(std::size_t n);
  // Uniform on [0, 1) with 53 bits.
  double uniform01();
  double uniform_real(double lo, double hi);
  bool bernoulli(double p);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices from [0, n) in draw order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

 private:
  SeededRng(std::uint64_t seed, std::uint64_t key,
            std::vector<std::string> path);

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::vector<std::string> path_;
};

inline SeededRng new_rng(std::uint64_t seed) { return SeededRng(seed); }

}  // namespace rel
