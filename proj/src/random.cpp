#include "qsdc/random.hpp"

namespace qsdc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream RandomStream::derive(std::uint64_t master_seed, StreamTag tag,
                                  std::uint64_t index) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(tag));
  s = splitmix64(s ^ index);
  return RandomStream(s);
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

}  // namespace qsdc
