#include "kwise/norms.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "kwise/errors.hpp"
#include "kwise/parallel.hpp"
#include "kwise/rng.hpp"

namespace kwise {

namespace {

constexpr double kNegClampTol = 1e-10;
constexpr std::size_t kExactOpsCap = 100'000'000;

void require_uniform(const FunctionTable& f) {
  if (!f.measure_is_uniform())
    throw domain_error("nonuniform_measure",
                       "this norm is defined for the uniform measure only");
}

void require_same_space(const FunctionTable& a, const FunctionTable& b) {
  if (!(a.space() == b.space()))
    throw domain_error("space_mismatch", "functions must share one product space");
}

// Index of x+h in the product of cyclic groups.
std::size_t add_index(const ProductSpace& sp, std::size_t x, std::size_t h) {
  std::size_t out = 0;
  for (int i = sp.arity() - 1; i >= 0; --i) {
    std::size_t m = static_cast<std::size_t>(sp.radix(i));
    out += (x % m + h % m) % m * sp.stride(i);
    x /= m;
    h /= m;
  }
  return out;
}

// Sub-space over `coords` plus the table mapping each sub-index to its
// contribution to a full-space index.
struct SubScatter {
  ProductSpace sub;
  std::vector<std::size_t> scatter;
};

SubScatter make_scatter(const ProductSpace& sp, const std::vector<int>& coords) {
  std::vector<int> radices;
  for (int c : coords) radices.push_back(sp.radix(c));
  SubScatter out{ProductSpace(radices), {}};
  out.scatter.resize(out.sub.total_size());
  std::vector<int> pt;
  for (std::size_t j = 0; j < out.sub.total_size(); ++j) {
    out.sub.point_of(j, pt);
    std::size_t idx = 0;
    for (std::size_t t = 0; t < coords.size(); ++t)
      idx += static_cast<std::size_t>(pt[t]) * sp.stride(coords[t]);
    out.scatter[j] = idx;
  }
  return out;
}

double mc_stderr(double sum_re, double sum_im, double sum_sq, std::size_t n) {
  double nn = static_cast<double>(n);
  double mean_sq = (sum_re * sum_re + sum_im * sum_im) / (nn * nn);
  double var = sum_sq / nn - mean_sq;
  return std::sqrt(std::max(0.0, var) / nn);
}

// Exact inner Gowers average: level s averages the (s-1)-level value of the
// multiplicative derivative f(x) conj f(x+h) over h; the s=1 base collapses
// to |E f|^2. Each level's value is nonnegative by construction.
double gowers_inner_exact(const ProductSpace& sp, const std::vector<Complex>& f,
                          int s) {
  std::size_t n = f.size();
  if (s == 1) {
    Complex acc = 0;
    for (const auto& v : f) acc += v;
    return std::norm(acc / static_cast<double>(n));
  }
  double acc = 0;
  std::vector<Complex> derived(n);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t x = 0; x < n; ++x)
      derived[x] = f[x] * std::conj(f[add_index(sp, x, h)]);
    acc += gowers_inner_exact(sp, derived, s - 1);
  }
  return acc / static_cast<double>(n);
}

double root_of_inner(double inner, int log2_power, const char* what) {
  if (inner < -kNegClampTol)
    throw consistency_error("negative_inner_average",
                            std::string(what) + " average negative beyond tolerance");
  if (inner < 0) inner = 0;
  return std::pow(inner, 1.0 / std::pow(2.0, log2_power));
}

std::uint64_t low_mask(int n) { return n >= 64 ? ~0ull : (1ull << n) - 1; }

Complex sum_partials(const std::vector<Complex>& partial) {
  Complex acc = 0;
  for (const auto& p : partial) acc += p;
  return acc;
}

}  // namespace

NormReport gowers_norm(const FunctionTable& f, int s,
                       const std::optional<McParams>& mc) {
  require_uniform(f);
  if (s < 1) throw domain_error("bad_order", "uniformity order must be >= 1");
  std::size_t total = f.space().total_size();

  if (!mc) {
    double cost = std::pow(static_cast<double>(total), s) * (f.space().arity() + 2);
    if (cost > static_cast<double>(kExactOpsCap))
      throw domain_error("too_large",
                         "exact Gowers sum over budget; pass Monte Carlo parameters");
    double inner = gowers_inner_exact(f.space(), f.values(), s);
    return {root_of_inner(inner, s, "Gowers"), "exact-sum", 0, 0.0};
  }

  Rng rng(mc->seed);
  const auto& vals = f.values();
  std::vector<std::size_t> hs(s);
  double sum = 0, sum_sq = 0;
  for (std::size_t it = 0; it < mc->samples; ++it) {
    std::size_t x = rng.next_below(total);
    for (int i = 0; i < s; ++i) hs[i] = rng.next_below(total);
    Complex prod = 1;
    for (std::uint32_t w = 0; w < (1u << s); ++w) {
      std::size_t pt = x;
      for (int i = 0; i < s; ++i)
        if (w >> i & 1) pt = add_index(f.space(), pt, hs[i]);
      Complex v = vals[pt];
      prod *= (std::popcount(w) % 2 == 1) ? std::conj(v) : v;
    }
    sum += prod.real();
    sum_sq += prod.real() * prod.real();
  }
  double nn = static_cast<double>(mc->samples);
  double mean = sum / nn;
  double se = mc_stderr(sum, 0.0, sum_sq, mc->samples);
  double inner = std::max(0.0, mean);
  double value = std::pow(inner, 1.0 / std::pow(2.0, s));
  double dvalue = inner > 0
                      ? se / (std::pow(2.0, s) * std::pow(inner, 1.0 - 1.0 / std::pow(2.0, s)))
                      : std::pow(se, 1.0 / std::pow(2.0, s));
  return {value, "monte-carlo", mc->samples, dvalue};
}

Complex box_form(const FunctionTable& f1, const FunctionTable& f2,
                 const FunctionTable& f3, const FunctionTable& f4,
                 CoordinateSubset I) {
  require_uniform(f1);
  require_same_space(f1, f2);
  require_same_space(f1, f3);
  require_same_space(f1, f4);
  const ProductSpace& sp = f1.space();
  if (I.n != sp.arity()) throw domain_error("bad_subset", "subset arity mismatch");

  auto inside = make_scatter(sp, I.members());
  auto outside = make_scatter(sp, I.complement().members());
  std::size_t ni = inside.sub.total_size(), no = outside.sub.total_size();
  if (static_cast<double>(no) * no * ni * 2 > static_cast<double>(kExactOpsCap))
    throw domain_error("too_large", "exact box sum over budget; use box_form_mc");

  // E_{y,y'}[ E_x f1(x,y) conj f3(x,y') . E_{x'} f2(x',y') conj f4(x',y) ]
  Complex acc = 0;
  for (std::size_t y = 0; y < no; ++y) {
    std::size_t oy = outside.scatter[y];
    for (std::size_t yp = 0; yp < no; ++yp) {
      std::size_t oyp = outside.scatter[yp];
      Complex a = 0, b = 0;
      for (std::size_t x = 0; x < ni; ++x) {
        std::size_t ix = inside.scatter[x];
        a += f1[ix + oy] * std::conj(f3[ix + oyp]);
        b += f2[ix + oyp] * std::conj(f4[ix + oy]);
      }
      acc += a * b;
    }
  }
  double denom = static_cast<double>(ni) * ni * no * no;
  return acc / denom;
}

FormReport box_form_mc(const FunctionTable& f1, const FunctionTable& f2,
                       const FunctionTable& f3, const FunctionTable& f4,
                       CoordinateSubset I, const McParams& mc) {
  require_uniform(f1);
  require_same_space(f1, f2);
  require_same_space(f1, f3);
  require_same_space(f1, f4);
  auto inside = make_scatter(f1.space(), I.members());
  auto outside = make_scatter(f1.space(), I.complement().members());
  Rng rng(mc.seed);
  Complex sum = 0;
  double sum_sq = 0;
  for (std::size_t it = 0; it < mc.samples; ++it) {
    std::size_t x = inside.scatter[rng.next_below(inside.sub.total_size())];
    std::size_t xp = inside.scatter[rng.next_below(inside.sub.total_size())];
    std::size_t y = outside.scatter[rng.next_below(outside.sub.total_size())];
    std::size_t yp = outside.scatter[rng.next_below(outside.sub.total_size())];
    Complex v =
        f1[x + y] * f2[xp + yp] * std::conj(f3[x + yp]) * std::conj(f4[xp + y]);
    sum += v;
    sum_sq += std::norm(v);
  }
  Complex mean = sum / static_cast<double>(mc.samples);
  return {mean, "monte-carlo", mc.samples,
          mc_stderr(sum.real(), sum.imag(), sum_sq, mc.samples)};
}

double box_norm(const FunctionTable& f, CoordinateSubset I) {
  Complex v = box_form(f, f, f, f, I);
  if (std::abs(v.imag()) > kNegClampTol)
    throw consistency_error("complex_box_norm",
                            "box(f,f,f,f) has a large imaginary part");
  return root_of_inner(v.real(), 2, "box");
}

FormReport swap_form(const FunctionTable& f1, const FunctionTable& f2,
                     const FunctionTable& f3, const FunctionTable& f4,
                     const std::optional<McParams>& mc) {
  require_uniform(f1);
  require_same_space(f1, f2);
  require_same_space(f1, f3);
  require_same_space(f1, f4);
  const ProductSpace& sp = f1.space();
  int n = sp.arity();

  // Total exact cost: sum over I of 2 |out|^2 |in| = 2 total prod(1+m_i).
  bool exact_ok = n <= 12;
  if (exact_ok) {
    double factor = 1;
    for (int i = 0; i < n; ++i) factor *= 1.0 + sp.radix(i);
    exact_ok = 2.0 * static_cast<double>(sp.total_size()) * factor <=
               static_cast<double>(kExactOpsCap);
  }
  if (!mc && !exact_ok)
    throw domain_error("too_large",
                       "exact swap sum over budget; pass Monte Carlo parameters");

  if (!mc) {
    std::size_t masks = 1ull << n;
    std::vector<Complex> partial(masks / std::max<std::size_t>(1, masks / 64) + 2, 0.0);
    parallel_chunks(masks, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
      Complex acc = 0;
      for (std::size_t m = lo; m < hi; ++m)
        acc += box_form(f1, f2, f3, f4, CoordinateSubset(n, m));
      partial[chunk] = acc;
    });
    return {sum_partials(partial) / static_cast<double>(masks), "exact-sum", 0, 0.0};
  }

  Rng rng(mc->seed);
  const std::size_t total = sp.total_size();
  Complex sum = 0;
  double sum_sq = 0;
  std::vector<int> px, pxp, py, pyp;
  for (std::size_t it = 0; it < mc->samples; ++it) {
    std::uint64_t mask = rng.next_u64() & low_mask(n);
    sp.point_of(rng.next_below(total), px);
    sp.point_of(rng.next_below(total), pxp);
    sp.point_of(rng.next_below(total), py);
    sp.point_of(rng.next_below(total), pyp);
    std::size_t i1 = 0, i2 = 0, i3 = 0, i4 = 0;
    for (int i = 0; i < n; ++i) {
      bool in = (mask >> i) & 1;
      i1 = i1 * sp.radix(i) + (in ? px[i] : py[i]);    // f1(x,y)
      i2 = i2 * sp.radix(i) + (in ? pxp[i] : pyp[i]);  // f2(x',y')
      i3 = i3 * sp.radix(i) + (in ? px[i] : pyp[i]);   // f3(x,y')
      i4 = i4 * sp.radix(i) + (in ? pxp[i] : py[i]);   // f4(x',y)
    }
    Complex v = f1[i1] * f2[i2] * std::conj(f3[i3]) * std::conj(f4[i4]);
    sum += v;
    sum_sq += std::norm(v);
  }
  Complex mean = sum / static_cast<double>(mc->samples);
  return {mean, "monte-carlo", mc->samples,
          mc_stderr(sum.real(), sum.imag(), sum_sq, mc->samples)};
}

FormReport swap_via_exchange(const FunctionTable& f1, const FunctionTable& f2,
                             const FunctionTable& f3, const FunctionTable& f4,
                             const std::optional<McParams>& mc) {
  require_uniform(f1);
  require_same_space(f1, f2);
  require_same_space(f1, f3);
  require_same_space(f1, f4);
  const ProductSpace& sp = f1.space();
  int n = sp.arity();
  std::size_t total = sp.total_size();

  // (u,v) agree with (x,y) on kept coordinates and swap the rest.
  auto term = [&](const std::vector<int>& x, const std::vector<int>& y,
                  std::uint64_t keep) {
    std::size_t iu = 0, iv = 0;
    for (int i = 0; i < n; ++i) {
      bool k = (keep >> i) & 1;
      iu = iu * sp.radix(i) + (k ? x[i] : y[i]);
      iv = iv * sp.radix(i) + (k ? y[i] : x[i]);
    }
    return std::conj(f3[iu]) * std::conj(f4[iv]);
  };

  bool exact_ok =
      n <= 20 && static_cast<double>(total) * total * std::pow(2.0, n) * n <=
                     static_cast<double>(kExactOpsCap);
  if (!mc && !exact_ok)
    throw domain_error("too_large",
                       "exact exchange sum over budget; pass Monte Carlo parameters");

  if (!mc) {
    std::size_t masks = 1ull << n;
    std::vector<Complex> partial(total / std::max<std::size_t>(1, total / 64) + 2, 0.0);
    parallel_chunks(total, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
      Complex acc = 0;
      std::vector<int> x, y;
      for (std::size_t a = lo; a < hi; ++a) {
        sp.point_of(a, x);
        for (std::size_t b = 0; b < total; ++b) {
          sp.point_of(b, y);
          Complex inner = 0;
          for (std::uint64_t keep = 0; keep < masks; ++keep) inner += term(x, y, keep);
          acc += f1[a] * f2[b] * inner / static_cast<double>(masks);
        }
      }
      partial[chunk] = acc;
    });
    return {sum_partials(partial) / (static_cast<double>(total) * total),
            "exact-sum", 0, 0.0};
  }

  Rng rng(mc->seed);
  Complex sum = 0;
  double sum_sq = 0;
  std::vector<int> x, y;
  for (std::size_t it = 0; it < mc->samples; ++it) {
    std::size_t a = rng.next_below(total), b = rng.next_below(total);
    sp.point_of(a, x);
    sp.point_of(b, y);
    Complex v = f1[a] * f2[b] * term(x, y, rng.next_u64() & low_mask(n));
    sum += v;
    sum_sq += std::norm(v);
  }
  Complex mean = sum / static_cast<double>(mc->samples);
  return {mean, "monte-carlo", mc->samples,
          mc_stderr(sum.real(), sum.imag(), sum_sq, mc->samples)};
}

NormReport swap_norm(const FunctionTable& f, const std::optional<McParams>& mc) {
  FormReport form = swap_form(f, f, f, f, mc);
  if (form.method == "exact-sum" && std::abs(form.value.imag()) > kNegClampTol)
    throw consistency_error("complex_swap_norm",
                            "swap(f,f,f,f) has a large imaginary part");
  double inner = form.method == "exact-sum" ? form.value.real()
                                            : std::max(0.0, form.value.real());
  double value = root_of_inner(inner, 2, "swap");
  double se = 0;
  if (form.method == "monte-carlo")
    se = inner > 0 ? form.stderr_est / (4.0 * std::pow(inner, 0.75))
                   : std::pow(form.stderr_est, 0.25);
  return {value, form.method, form.samples, se};
}

BoxInverse box_inverse_extract(const FunctionTable& f, CoordinateSubset I) {
  require_uniform(f);
  const ProductSpace& sp = f.space();
  if (I.n != sp.arity()) throw domain_error("bad_subset", "subset arity mismatch");
  auto inside = make_scatter(sp, I.members());
  auto outside = make_scatter(sp, I.complement().members());
  std::size_t ni = inside.sub.total_size(), no = outside.sub.total_size();
  if (static_cast<double>(ni) * no * ni * no > static_cast<double>(kExactOpsCap))
    throw domain_error("too_large", "exhaustive rectangle scan over budget");

  double best = -1;
  std::size_t best_xp = 0, best_yp = 0;
  for (std::size_t xp = 0; xp < ni; ++xp) {
    std::size_t ixp = inside.scatter[xp];
    for (std::size_t yp = 0; yp < no; ++yp) {
      std::size_t oyp = outside.scatter[yp];
      Complex acc = 0;
      for (std::size_t x = 0; x < ni; ++x) {
        std::size_t ix = inside.scatter[x];
        Complex fx_yp = std::conj(f[ix + oyp]);
        for (std::size_t y = 0; y < no; ++y)
          acc += f[ix + outside.scatter[y]] * fx_yp *
                 std::conj(f[ixp + outside.scatter[y]]);
      }
      double corr = std::abs(acc) / (static_cast<double>(ni) * no);
      if (corr > best) {
        best = corr;
        best_xp = xp;
        best_yp = yp;
      }
    }
  }

  std::vector<Complex> gvals(ni), hvals(no);
  for (std::size_t x = 0; x < ni; ++x)
    gvals[x] = f[inside.scatter[x] + outside.scatter[best_yp]];
  for (std::size_t y = 0; y < no; ++y)
    hvals[y] = f[inside.scatter[best_xp] + outside.scatter[y]];
  return {FunctionTable::uniform(inside.sub, std::move(gvals)),
          FunctionTable::uniform(outside.sub, std::move(hvals)), best};
}

}  // namespace kwise
