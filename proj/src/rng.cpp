#include "gdr/rng.hpp"

namespace gdr {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 RngTree::stream(std::string_view name, std::uint64_t i, std::uint64_t j) const {
  std::uint64_t k = splitmix64(seed_);
  k = splitmix64(k ^ fnv1a(name));
  k = splitmix64(k ^ i);
  k = splitmix64(k ^ j);
  std::seed_seq seq{static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32),
                    static_cast<std::uint32_t>(splitmix64(k)), static_cast<std::uint32_t>(splitmix64(k) >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace gdr
