#ifndef SSR_HASHING_HPP
#define SSR_HASHING_HPP

#include "ssr/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ssr::hashing {

/// One splitmix64 output; advances the state.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stateless seed derivation for independent per-task generators.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Bucket map h : index → [0, t) (2-wise independent) paired with a sign map
/// σ : index → {−1, +1} (4-wise independent).  Both are degree-bounded
/// polynomials over the Mersenne-prime field 2⁶¹−1; identical (t, seed) give
/// identical functions.
class HashPair {
 public:
  static HashPair independent(Index t, std::uint64_t seed);

  /// Bijective bucket assignment for indices [0, n); t = n.  Sketching with
  /// this pair is a signed permutation and preserves norms exactly.
  static HashPair signed_permutation(Index n, std::uint64_t seed);

  /// Explicit lookup tables (tests pin hand-evaluated hashes through this).
  static HashPair from_tables(Index t, std::vector<Index> buckets,
                              std::vector<int> signs);

  Index t() const { return t_; }
  std::uint64_t seed() const { return seed_; }
  bool table_backed() const { return !bucket_table_.empty(); }

  Index bucket(std::uint64_t i) const;
  int sign(std::uint64_t i) const;  // exactly ±1
  std::pair<Index, int> eval(std::uint64_t i) const {
    return {bucket(i), sign(i)};
  }

 private:
  HashPair() = default;

  Index t_ = 0;
  std::uint64_t seed_ = 0;
  // degree-1 bucket polynomial, degree-3 sign polynomial (low bit → sign)
  std::uint64_t bucket_coeff_[2] = {0, 0};
  std::uint64_t sign_coeff_[4] = {0, 0, 0, 0};
  std::vector<Index> bucket_table_;
  std::vector<int> sign_table_;
};

}  // namespace ssr::hashing

#endif  // SSR_HASHING_HPP
