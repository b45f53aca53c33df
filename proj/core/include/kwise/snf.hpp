#pragma once

#include <vector>

#include "kwise/rational.hpp"

namespace kwise {

// Dense integer matrix with arbitrary-precision entries.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  BigInt& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const BigInt& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * cols + c];
  }
  static IntMatrix identity(int n);
};

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);
BigInt determinant(const IntMatrix& m);  // Bareiss, exact

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
// Pivoting always picks the minimum-absolute-value nonzero entry of the
// remaining block, which keeps coefficient growth tame at desk scale.
struct SmithNormalForm {
  IntMatrix u, d, v;
  std::vector<BigInt> divisors;  // the r nonzero diagonal entries, in order
  int rank = 0;
};

SmithNormalForm smith_normal_form(const IntMatrix& m);

}  // namespace kwise
