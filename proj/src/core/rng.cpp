#include "rel/core/rng.hpp"

#include <unordered_set>

#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed)
    : seed_(seed), key_(mix64(seed + kGolden)) {}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t key,
                     std::vector<std::string> path)
    : seed_(seed), key_(key), path_(std::move(path)) {}

SeededRng SeededRng::split(std::string_view label) const {
  std::vector<std::string> path = path_;
  path.emplace_back(label);
  std::uint64_t key = mix64(key_ ^ mix64(fnv1a64(label) + kGolden));
  return SeededRng(seed_, mix64(key + 0x632be59bd9b4e019ULL), std::move(path));
}

SeededRng SeededRng::split(std::uint64_t index) const {
  return split("#" + std::to_string(index));
}

std::uint64_t SeededRng::next_u64() {
  std::uint64_t c = counter_++;
  return mix64(key_ + mix64(c * kGolden + 1));
}

std::int64_t SeededRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw ParameterError("uniform_int: empty range");
  }
  std::uint64_t span = static_cast<std::uint64_t>(hi) -
                       static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) {
    return static_cast<std::int64_t>(next_u64());
  }
  std::uint64_t range = span + 1;
  // Lemire's multiply-and-reject.
  unsigned __int128 m =
      static_cast<unsigned __int128>(next_u64()) * range;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < range) {
    std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                   static_cast<std::uint64_t>(m >> 64));
}

std::size_t SeededRng::uniform_index(std::size_t n) {
  if (n == 0) {
    throw ParameterError("uniform_index: n == 0");
  }
  return static_cast<std::size_t>(
      uniform_int(0, static_cast<std::int64_t>(n - 1)));
}

double SeededRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform_real(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

bool SeededRng::bernoulli(double p) { return uniform01() < p; }

std::vector<std::size_t> SeededRng::sample_indices(std::size_t n,
                                                   std::size_t k) {
  if (k > n) {
    throw ParameterError("sample_indices: k > n");
  }
  std::vector<std::size_t> out;
  out.reserve(k);
  if (k * 4 >= n) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    // Partial Fisher-Yates from the front.
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + uniform_index(n - i);
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::unordered_set<std::size_t> seen;
  while (out.size() < k) {
    std::size_t j = uniform_index(n);
    if (seen.insert(j).second) out.push_back(j);
  }
  return out;
}

}  // namespace rel
