#include "kwise/snf.hpp"

#include <cstdlib>

namespace kwise {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw domain_error("bad_matmul", "inner dimensions differ");
  IntMatrix out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const BigInt& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) out.at(i, j) += xik * y.at(k, j);
    }
  return out;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw domain_error("bad_det", "matrix not square");
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix w = m;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) { swap = i; break; }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

namespace {

struct Worker {
  IntMatrix d, u, v;

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < d.cols; ++j) std::swap(d.at(a, j), d.at(b, j));
    for (int j = 0; j < u.cols; ++j) std::swap(u.at(a, j), u.at(b, j));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < d.rows; ++i) std::swap(d.at(i, a), d.at(i, b));
    for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, a), v.at(i, b));
  }
  void add_row(int dst, int src, const BigInt& factor) {  // row dst += factor * row src
    for (int j = 0; j < d.cols; ++j) d.at(dst, j) += factor * d.at(src, j);
    for (int j = 0; j < u.cols; ++j) u.at(dst, j) += factor * u.at(src, j);
  }
  void add_col(int dst, int src, const BigInt& factor) {
    for (int i = 0; i < d.rows; ++i) d.at(i, dst) += factor * d.at(i, src);
    for (int i = 0; i < v.rows; ++i) v.at(i, dst) += factor * v.at(i, src);
  }
  void negate_row(int r) {
    for (int j = 0; j < d.cols; ++j) d.at(r, j) = -d.at(r, j);
    for (int j = 0; j < u.cols; ++j) u.at(r, j) = -u.at(r, j);
  }

  // Smallest |entry| != 0 in the block starting at (s,s); false if block zero.
  bool find_pivot(int s, int& pi, int& pj) const {
    bool found = false;
    BigInt best;
    for (int i = s; i < d.rows; ++i)
      for (int j = s; j < d.cols; ++j) {
        if (d.at(i, j) == 0) continue;
        BigInt mag = abs(d.at(i, j));
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  bool clear_around(int s) {  // returns true once row/col s are clean
    bool clean = true;
    for (int i = s + 1; i < d.rows; ++i) {
      if (d.at(i, s) == 0) continue;
      BigInt q = d.at(i, s) / d.at(s, s);
      add_row(i, s, -q);
      if (d.at(i, s) != 0) clean = false;  // remainder left; pivot will shrink
    }
    for (int j = s + 1; j < d.cols; ++j) {
      if (d.at(s, j) == 0) continue;
      BigInt q = d.at(s, j) / d.at(s, s);
      add_col(j, s, -q);
      if (d.at(s, j) != 0) clean = false;
    }
    return clean;
  }
};

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& m) {
  Worker w;
  w.d = m;
  w.u = IntMatrix::identity(m.rows);
  w.v = IntMatrix::identity(m.cols);

  int nmin = std::min(m.rows, m.cols);
  for (int s = 0; s < nmin; ++s) {
    int pi, pj;
    if (!w.find_pivot(s, pi, pj)) break;  // remaining block is zero
    w.swap_rows(s, pi);
    w.swap_cols(s, pj);
    while (!w.clear_around(s)) {
      if (!w.find_pivot(s, pi, pj)) break;
      w.swap_rows(s, pi);
      w.swap_cols(s, pj);
    }
    if (w.d.at(s, s) < 0) w.negate_row(s);

    // Divisibility fix-up: if some later entry is not divisible by the
    // pivot, fold its row in and redo this step with a smaller pivot.
    bool redo = false;
    for (int i = s + 1; i < w.d.rows && !redo; ++i)
      for (int j = s + 1; j < w.d.cols && !redo; ++j)
        if (w.d.at(i, j) % w.d.at(s, s) != 0) {
          w.add_row(s, i, 1);
          redo = true;
        }
    if (redo) --s;
  }

  SmithNormalForm out;
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  out.d = std::move(w.d);
  for (int s = 0; s < nmin; ++s) {
    if (out.d.at(s, s) == 0) break;
    out.divisors.push_back(out.d.at(s, s));
  }
  out.rank = static_cast<int>(out.divisors.size());
  return out;
}

}  // namespace kwise
