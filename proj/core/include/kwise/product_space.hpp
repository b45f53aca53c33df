#pragma once

#include <cstdint>
#include <vector>

#include "kwise/errors.hpp"
#include "kwise/rng.hpp"

namespace kwise {

// Finite product space Sigma_1 x ... x Sigma_n given by per-coordinate
// radices. Points are ranked lexicographically with the FIRST coordinate
// most significant; every file format and dense table in the project uses
// this one layout.
class ProductSpace {
 public:
  ProductSpace() = default;
  explicit ProductSpace(std::vector<int> radices);

  static ProductSpace power(int radix, int n);

  int arity() const { return static_cast<int>(radices_.size()); }
  int radix(int i) const { return radices_[i]; }
  const std::vector<int>& radices() const { return radices_; }
  std::size_t total_size() const { return total_size_; }
  // stride(i) = product of radices after coordinate i.
  std::size_t stride(int i) const { return strides_[i]; }

  std::size_t index_of(const std::vector<int>& point) const;
  std::vector<int> point_of(std::size_t index) const;
  void point_of(std::size_t index, std::vector<int>& out) const;

  bool operator==(const ProductSpace& o) const { return radices_ == o.radices_; }

 private:
  std::vector<int> radices_;
  std::vector<std::size_t> strides_;
  std::size_t total_size_ = 1;
};

// Subset of coordinates {0,...,n-1}, n <= 64.
struct CoordinateSubset {
  int n = 0;
  std::uint64_t bits = 0;

  CoordinateSubset() = default;
  CoordinateSubset(int arity, std::uint64_t mask);
  static CoordinateSubset full(int arity);
  static CoordinateSubset empty(int arity);
  static CoordinateSubset of(int arity, const std::vector<int>& coords);

  bool contains(int i) const { return (bits >> i) & 1; }
  int count() const;
  CoordinateSubset complement() const;
  std::vector<int> members() const;
};

// Fixes the coordinates outside `keep` to `fixed` (one symbol per member of
// the complement, in increasing coordinate order).
struct Restriction {
  CoordinateSubset keep;
  std::vector<int> fixed;
};

// Includes each coordinate independently with probability delta.
CoordinateSubset sample_subset(int n, double delta, Rng& rng);
inline CoordinateSubset sample_subset(int n, double delta, std::uint64_t seed) {
  Rng rng(seed);
  return sample_subset(n, delta, rng);
}

}  // namespace kwise
