#include "ssr/hashing.hpp"

#include <numeric>

namespace ssr::hashing {

namespace {

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

// (a * b) mod 2⁶¹−1, using 2⁶¹ ≡ 1 (mod p) to fold the 128-bit product.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(z & kMersenne61);
  std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;  // both < 2⁶¹, no overflow
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

// Uniform field element via 61-bit rejection sampling.
std::uint64_t field_element(std::uint64_t& state) {
  for (;;) {
    const std::uint64_t x = splitmix64(state) & kMersenne61;
    if (x < kMersenne61) return x;
  }
}

std::uint64_t uniform_below(std::uint64_t& state, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = splitmix64(state);
    if (x < limit) return x % bound;
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t state = master ^ stream;
  return splitmix64(state);
}

HashPair HashPair::independent(Index t, std::uint64_t seed) {
  if (t < 1) {
    throw DimensionError("HashPair: bucket count must be at least 1");
  }
  HashPair h;
  h.t_ = t;
  h.seed_ = seed;
  std::uint64_t state = seed;
  do {
    h.bucket_coeff_[0] = field_element(state);  // leading coefficient ≠ 0
  } while (h.bucket_coeff_[0] == 0);
  h.bucket_coeff_[1] = field_element(state);
  for (auto& c : h.sign_coeff_) c = field_element(state);
  return h;
}

HashPair HashPair::signed_permutation(Index n, std::uint64_t seed) {
  if (n < 1) {
    throw DimensionError("HashPair: permutation size must be at least 1");
  }
  HashPair h = independent(n, seed);  // keeps the 4-wise sign polynomial
  h.bucket_table_.resize(static_cast<std::size_t>(n));
  std::iota(h.bucket_table_.begin(), h.bucket_table_.end(), Index{0});
  std::uint64_t state = seed ^ 0x7065726d75746521ULL;
  for (Index i = n - 1; i > 0; --i) {
    const Index j = static_cast<Index>(
        uniform_below(state, static_cast<std::uint64_t>(i) + 1));
    std::swap(h.bucket_table_[i], h.bucket_table_[j]);
  }
  return h;
}

HashPair HashPair::from_tables(Index t, std::vector<Index> buckets,
                               std::vector<int> signs) {
  if (t < 1 || buckets.size() != signs.size() || buckets.empty()) {
    throw DimensionError("HashPair: inconsistent lookup tables");
  }
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    if (buckets[i] < 0 || buckets[i] >= t || (signs[i] != 1 && signs[i] != -1)) {
      throw DimensionError("HashPair: table entry out of range");
    }
  }
  HashPair h;
  h.t_ = t;
  h.bucket_table_ = std::move(buckets);
  h.sign_table_ = std::move(signs);
  return h;
}

Index HashPair::bucket(std::uint64_t i) const {
  if (!bucket_table_.empty()) {
    if (i >= bucket_table_.size()) {
      throw DimensionError("HashPair: index outside bucket table");
    }
    return bucket_table_[i];
  }
  const std::uint64_t x = i % kMersenne61;
  const std::uint64_t v = addmod(mulmod(bucket_coeff_[0], x), bucket_coeff_[1]);
  return static_cast<Index>(v % static_cast<std::uint64_t>(t_));
}

int HashPair::sign(std::uint64_t i) const {
  if (!sign_table_.empty()) {
    if (i >= sign_table_.size()) {
      throw DimensionError("HashPair: index outside sign table");
    }
    return sign_table_[i];
  }
  const std::uint64_t x = i % kMersenne61;
  std::uint64_t v = sign_coeff_[0];
  for (int d = 1; d < 4; ++d) v = addmod(mulmod(v, x), sign_coeff_[d]);
  return (v & 1) ? -1 : 1;
}

}  // namespace ssr::hashing
