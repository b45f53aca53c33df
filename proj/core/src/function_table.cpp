#include "kwise/function_table.hpp"

#include <algorithm>
#include <cmath>

namespace kwise {

std::vector<std::vector<Rational>> uniform_measure(const ProductSpace& space) {
  std::vector<std::vector<Rational>> m(space.arity());
  for (int i = 0; i < space.arity(); ++i)
    m[i].assign(space.radix(i), Rational(1, space.radix(i)));
  return m;
}

FunctionTable::FunctionTable(ProductSpace space,
                             std::vector<std::vector<Rational>> measure,
                             std::vector<Complex> values)
    : space_(std::move(space)),
      measure_(std::move(measure)),
      values_(std::move(values)) {
  if (values_.size() != space_.total_size())
    throw domain_error("bad_table", "value array length != total size");
  if (static_cast<int>(measure_.size()) != space_.arity())
    throw domain_error("bad_measure", "one distribution per coordinate required");
  weights_.resize(measure_.size());
  for (int i = 0; i < space_.arity(); ++i) {
    if (static_cast<int>(measure_[i].size()) != space_.radix(i))
      throw domain_error("bad_measure", "measure arity mismatch");
    Rational sum = 0;
    weights_[i].resize(measure_[i].size());
    for (std::size_t s = 0; s < measure_[i].size(); ++s) {
      if (measure_[i][s] < 0)
        throw domain_error("bad_measure", "negative probability");
      sum += measure_[i][s];
      weights_[i][s] = to_double(measure_[i][s]);
    }
    if (sum != 1)
      throw domain_error("bad_measure", "coordinate measure does not sum to 1");
  }
}

FunctionTable FunctionTable::uniform(ProductSpace space,
                                     std::vector<Complex> values) {
  auto m = uniform_measure(space);
  return FunctionTable(std::move(space), std::move(m), std::move(values));
}

FunctionTable FunctionTable::constant(ProductSpace space, Complex value) {
  std::vector<Complex> v(space.total_size(), value);
  return uniform(std::move(space), std::move(v));
}

bool FunctionTable::measure_is_uniform() const {
  for (int i = 0; i < space_.arity(); ++i) {
    Rational u(1, space_.radix(i));
    for (const auto& p : measure_[i])
      if (p != u) return false;
  }
  return true;
}

double FunctionTable::weight_of(std::size_t index) const {
  double w = 1.0;
  for (int i = space_.arity() - 1; i >= 0; --i) {
    w *= weights_[i][index % static_cast<std::size_t>(space_.radix(i))];
    index /= static_cast<std::size_t>(space_.radix(i));
  }
  return w;
}

Complex FunctionTable::expectation() const {
  Complex acc = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) acc += weight_of(i) * values_[i];
  return acc;
}

double FunctionTable::norm2_sq() const {
  double acc = 0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    acc += weight_of(i) * std::norm(values_[i]);
  return acc;
}

double FunctionTable::norm2() const { return std::sqrt(std::max(0.0, norm2_sq())); }

double FunctionTable::sup_norm() const {
  double acc = 0;
  for (const auto& v : values_) acc = std::max(acc, std::abs(v));
  return acc;
}

Complex inner_product(const FunctionTable& f, const FunctionTable& g) {
  if (!(f.space() == g.space()) || f.measure() != g.measure())
    throw domain_error("space_mismatch", "inner product needs shared space and measure");
  Complex acc = 0;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    acc += f.weight_of(i) * f[i] * std::conj(g[i]);
  return acc;
}

FunctionTable restrict(const FunctionTable& f, const Restriction& r) {
  const ProductSpace& sp = f.space();
  if (r.keep.n != sp.arity())
    throw domain_error("bad_restriction", "restriction arity mismatch");
  auto outside = r.keep.complement().members();
  if (outside.size() != r.fixed.size())
    throw domain_error("bad_restriction", "one fixed symbol per dropped coordinate");
  std::size_t base = 0;
  for (std::size_t t = 0; t < outside.size(); ++t) {
    int coord = outside[t], sym = r.fixed[t];
    if (sym < 0 || sym >= sp.radix(coord))
      throw domain_error("bad_restriction", "fixed symbol out of range");
    base += static_cast<std::size_t>(sym) * sp.stride(coord);
  }

  auto kept = r.keep.members();
  std::vector<int> radices;
  std::vector<std::vector<Rational>> measure;
  for (int c : kept) {
    radices.push_back(sp.radix(c));
    measure.push_back(f.measure()[c]);
  }
  ProductSpace sub(radices);
  std::vector<Complex> vals(sub.total_size());
  std::vector<int> pt;
  for (std::size_t j = 0; j < sub.total_size(); ++j) {
    sub.point_of(j, pt);
    std::size_t idx = base;
    for (std::size_t t = 0; t < kept.size(); ++t)
      idx += static_cast<std::size_t>(pt[t]) * sp.stride(kept[t]);
    vals[j] = f[idx];
  }
  return FunctionTable(std::move(sub), std::move(measure), std::move(vals));
}

FunctionTable normalized_indicator(
    const ProductSpace& space,
    const std::vector<std::vector<Rational>>& measure,
    const std::vector<std::uint8_t>& membership) {
  if (membership.size() != space.total_size())
    throw domain_error("bad_set", "membership mask length mismatch");
  FunctionTable ind(space, measure,
                    std::vector<Complex>(space.total_size(), 0.0));
  Rational mass = 0;
  std::vector<int> pt;
  for (std::size_t i = 0; i < membership.size(); ++i) {
    if (!membership[i]) continue;
    space.point_of(i, pt);
    Rational w = 1;
    for (int c = 0; c < space.arity(); ++c) w *= measure[c][pt[c]];
    mass += w;
  }
  double mu = to_double(mass);
  std::vector<Complex> vals(space.total_size());
  for (std::size_t i = 0; i < membership.size(); ++i)
    vals[i] = (membership[i] ? 1.0 : 0.0) - mu;
  return FunctionTable(space, measure, std::move(vals));
}

}  // namespace kwise
