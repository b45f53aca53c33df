#include "kwise/product_space.hpp"

#include <bit>

namespace kwise {

ProductSpace::ProductSpace(std::vector<int> radices)
    : radices_(std::move(radices)) {
  for (int m : radices_) {
    if (m < 1) throw domain_error("bad_radix", "every radix must be >= 1");
  }
  strides_.assign(radices_.size(), 1);
  total_size_ = 1;
  for (int i = static_cast<int>(radices_.size()) - 1; i >= 0; --i) {
    strides_[i] = total_size_;
    total_size_ *= static_cast<std::size_t>(radices_[i]);
  }
}

ProductSpace ProductSpace::power(int radix, int n) {
  return ProductSpace(std::vector<int>(n, radix));
}

std::size_t ProductSpace::index_of(const std::vector<int>& point) const {
  if (point.size() != radices_.size())
    throw domain_error("bad_point", "point arity mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] < 0 || point[i] >= radices_[i])
      throw domain_error("bad_point", "symbol out of range");
    idx = idx * static_cast<std::size_t>(radices_[i]) +
          static_cast<std::size_t>(point[i]);
  }
  return idx;
}

std::vector<int> ProductSpace::point_of(std::size_t index) const {
  std::vector<int> out(radices_.size());
  point_of(index, out);
  return out;
}

void ProductSpace::point_of(std::size_t index, std::vector<int>& out) const {
  if (index >= total_size_) throw domain_error("bad_index", "index too large");
  out.resize(radices_.size());
  for (int i = static_cast<int>(radices_.size()) - 1; i >= 0; --i) {
    out[i] = static_cast<int>(index % static_cast<std::size_t>(radices_[i]));
    index /= static_cast<std::size_t>(radices_[i]);
  }
}

CoordinateSubset::CoordinateSubset(int arity, std::uint64_t mask)
    : n(arity), bits(mask) {
  if (arity < 0 || arity > 64)
    throw domain_error("bad_subset", "arity must be in [0,64]");
  if (arity < 64 && (mask >> arity) != 0)
    throw domain_error("bad_subset", "mask has bits beyond arity");
}

CoordinateSubset CoordinateSubset::full(int arity) {
  return CoordinateSubset(
      arity, arity == 64 ? ~0ull : ((1ull << arity) - 1));
}

CoordinateSubset CoordinateSubset::empty(int arity) {
  return CoordinateSubset(arity, 0);
}

CoordinateSubset CoordinateSubset::of(int arity, const std::vector<int>& coords) {
  std::uint64_t m = 0;
  for (int c : coords) {
    if (c < 0 || c >= arity) throw domain_error("bad_subset", "coordinate out of range");
    m |= 1ull << c;
  }
  return CoordinateSubset(arity, m);
}

int CoordinateSubset::count() const { return std::popcount(bits); }

CoordinateSubset CoordinateSubset::complement() const {
  return CoordinateSubset(n, full(n).bits & ~bits);
}

std::vector<int> CoordinateSubset::members() const {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

CoordinateSubset sample_subset(int n, double delta, Rng& rng) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw domain_error("bad_delta", "inclusion probability must be in [0,1]");
  std::uint64_t m = 0;
  for (int i = 0; i < n; ++i)
    if (rng.bernoulli(delta)) m |= 1ull << i;
  return CoordinateSubset(n, m);
}

}  // namespace kwise
