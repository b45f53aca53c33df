#include "kwise/csp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kwise/rng.hpp"

namespace kwise {

Predicate::Predicate(int k, int m, std::vector<std::uint8_t> t)
    : arity(k), alphabet(m), table(std::move(t)) {
  if (k < 1 || m < 1) throw domain_error("bad_predicate", "arity and alphabet >= 1");
  std::size_t want = 1;
  for (int i = 0; i < k; ++i) want *= static_cast<std::size_t>(m);
  if (table.size() != want)
    throw domain_error("bad_predicate", "truth table length != |Sigma|^k");
  for (auto b : table)
    if (b > 1) throw domain_error("bad_predicate", "table entries must be 0/1");
}

Predicate Predicate::from_bitstring(int k, int m, const std::string& bits) {
  std::vector<std::uint8_t> t;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw domain_error("bad_predicate", "bitstring must be over {0,1}");
    t.push_back(c == '1');
  }
  return Predicate(k, m, std::move(t));
}

bool Predicate::satisfied(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != arity)
    throw domain_error("bad_tuple", "tuple arity mismatch");
  std::size_t idx = 0;
  for (int s : tuple) {
    if (s < 0 || s >= alphabet) throw domain_error("bad_tuple", "symbol out of range");
    idx = idx * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(s);
  }
  return table[idx];
}

long long Predicate::satisfying_count() const {
  long long c = 0;
  for (auto b : table) c += b;
  return c;
}

void CspInstance::validate() const {
  if (nvars < 0 || alphabet < 1) throw domain_error("bad_instance", "bad sizes");
  for (const auto& c : constraints) {
    if (static_cast<int>(c.vars.size()) != c.pred.arity)
      throw domain_error("bad_instance", "tuple length != predicate arity");
    if (c.pred.alphabet != alphabet)
      throw domain_error("bad_instance", "constraint alphabet mismatch");
    for (int v : c.vars)
      if (v < 0 || v >= nvars) throw domain_error("bad_instance", "variable out of range");
  }
}

CspValue csp_value_bruteforce(const CspInstance& inst) {
  inst.validate();
  if (inst.constraints.empty())
    return {Rational(1), std::vector<int>(inst.nvars, 0)};  // vacuous satisfaction
  double space = std::pow(static_cast<double>(inst.alphabet), inst.nvars);
  if (space > 1e7)
    throw domain_error("too_large",
                       "assignment space above 1e7; use the Monte Carlo bench instead");

  std::vector<int> assign(inst.nvars, 0), best_assign(inst.nvars, 0);
  long long best = -1;
  while (true) {
    long long sat = 0;
    std::vector<int> tuple;
    for (const auto& c : inst.constraints) {
      tuple.clear();
      for (int v : c.vars) tuple.push_back(assign[v]);
      sat += c.pred.satisfied(tuple);
    }
    if (sat > best) {
      best = sat;
      best_assign = assign;
    }
    int j = inst.nvars - 1;
    while (j >= 0 && assign[j] == inst.alphabet - 1) assign[j--] = 0;
    if (j < 0) break;
    ++assign[j];
  }
  return {Rational(BigInt(best), BigInt(inst.constraints.size())), best_assign};
}

Rational random_assignment_value(const CspInstance& inst) {
  inst.validate();
  if (inst.constraints.empty()) return Rational(1);
  Rational acc = 0;
  for (const auto& c : inst.constraints)
    acc += Rational(BigInt(c.pred.satisfying_count()),
                    BigInt(c.pred.table_size()));
  return acc / static_cast<int>(inst.constraints.size());
}

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int mod_inverse(int a, int p) {
  a %= p;
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw domain_error("not_invertible", "zero has no inverse");
}

}  // namespace

std::optional<std::vector<int>> gauss_solve_3lin(const LinSystem& sys) {
  if (!is_prime(sys.p)) throw domain_error("bad_prime", "modulus must be prime");
  int p = sys.p, n = sys.nvars;
  // Dense row reduction of the [A | d] system.
  std::vector<std::vector<int>> rows;
  for (const auto& e : sys.eqs) {
    for (int v : {e.xi, e.xj, e.xk})
      if (v < 0 || v >= n) throw domain_error("bad_instance", "variable out of range");
    std::vector<int> row(n + 1, 0);
    row[e.xi] = (row[e.xi] + e.a) % p;
    row[e.xj] = (row[e.xj] + e.b) % p;
    row[e.xk] = (row[e.xk] + e.c) % p;
    row[n] = ((e.d % p) + p) % p;
    for (int& x : row) x = (x % p + p) % p;
    rows.push_back(std::move(row));
  }

  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int sel = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    int inv = mod_inverse(rows[rank][col], p);
    for (int& x : rows[rank]) x = x * inv % p;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      int f = rows[r][col];
      for (int cc = 0; cc <= n; ++cc)
        rows[r][cc] = ((rows[r][cc] - f * rows[rank][cc]) % p + p) % p;
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < static_cast<int>(rows.size()); ++r)
    if (rows[r][n] != 0) return std::nullopt;  // 0 = nonzero: inconsistent

  std::vector<int> assign(n, 0);
  for (int r = 0; r < rank; ++r) assign[pivot_col[r]] = rows[r][n];
  for (const auto& e : sys.eqs) {
    int lhs = (e.a * assign[e.xi] + e.b * assign[e.xj] + e.c * assign[e.xk]) % p;
    if (((lhs - e.d) % p + p) % p != 0)
      throw consistency_error("bad_solution", "eliminated solution fails an equation");
  }
  return assign;
}

CspInstance lin_system_to_csp(const LinSystem& sys) {
  CspInstance inst;
  inst.nvars = sys.nvars;
  inst.alphabet = sys.p;
  int p = sys.p;
  for (const auto& e : sys.eqs) {
    std::vector<std::uint8_t> table(static_cast<std::size_t>(p) * p * p);
    std::size_t idx = 0;
    for (int x = 0; x < p; ++x)
      for (int y = 0; y < p; ++y)
        for (int z = 0; z < p; ++z)
          table[idx++] = ((e.a * x + e.b * y + e.c * z - e.d) % p + p) % p == 0;
    inst.constraints.push_back({{e.xi, e.xj, e.xk}, Predicate(3, p, std::move(table))});
  }
  return inst;
}

LinSystem parse_3lin(const std::string& text, int p, int nvars) {
  LinSystem sys;
  sys.p = p;
  std::istringstream in(text);
  std::string line;
  int max_var = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    LinEquation e;
    if (!(ls >> e.a >> e.b >> e.c >> e.d >> e.xi >> e.xj >> e.xk)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw domain_error("bad_3lin", "expected rows of 'a b c d i j k'");
    }
    max_var = std::max({max_var, e.xi, e.xj, e.xk});
    sys.eqs.push_back(e);
  }
  sys.nvars = nvars >= 0 ? nvars : max_var + 1;
  return sys;
}

DictTestResult dictatorship_test_eval(const JointDistribution& mu,
                                      const Predicate& pred,
                                      const std::vector<int>& f, int n,
                                      bool exact, std::size_t mc_samples,
                                      std::uint64_t seed) {
  int k = mu.arity();
  if (pred.arity != k)
    throw domain_error("bad_predicate", "predicate arity != distribution arity");
  for (int i = 0; i < k; ++i)
    if (mu.alphabet(i) != mu.alphabet(0))
      throw domain_error("bad_dist", "dictatorship tests use one alphabet");
  int m = mu.alphabet(0);
  if (pred.alphabet != m) throw domain_error("bad_predicate", "alphabet mismatch");
  std::size_t want = 1;
  for (int j = 0; j < n; ++j) want *= static_cast<std::size_t>(m);
  if (f.size() != want) throw domain_error("bad_function", "table length != |Sigma|^n");
  for (int v : f)
    if (v < 0 || v >= m) throw domain_error("bad_function", "symbol out of range");

  const auto& atoms = mu.atoms();
  DictTestResult out;
  std::vector<int> tuple(k);
  if (exact) {
    if (std::pow(static_cast<double>(atoms.size()), n) > 1e7)
      throw domain_error("too_large", "|supp(mu)|^n over the exact budget");
    // Odometer over atom choices, exact rational probability.
    std::vector<std::size_t> digit(n, 0);
    Rational acc = 0;
    while (true) {
      Rational prob = 1;
      std::vector<std::size_t> idx(k, 0);
      for (int j = 0; j < n; ++j) {
        const auto& a = atoms[digit[j]];
        prob *= a.p;
        for (int i = 0; i < k; ++i)
          idx[i] = idx[i] * static_cast<std::size_t>(m) +
                   static_cast<std::size_t>(a.tuple[i]);
      }
      for (int i = 0; i < k; ++i) tuple[i] = f[idx[i]];
      if (pred.satisfied(tuple)) acc += prob;
      int j = n - 1;
      while (j >= 0 && ++digit[j] == atoms.size()) digit[j--] = 0;
      if (j < 0) break;
    }
    out.exact = acc;
    out.value = to_double(acc);
    out.method = "exact-sum";
    return out;
  }

  std::vector<double> cum;
  double run = 0;
  for (const auto& a : atoms) {
    run += to_double(a.p);
    cum.push_back(run);
  }
  Rng rng(seed);
  double sum = 0;
  for (std::size_t it = 0; it < mc_samples; ++it) {
    std::vector<std::size_t> idx(k, 0);
    for (int j = 0; j < n; ++j) {
      auto pos = std::upper_bound(cum.begin(), cum.end(), rng.next_double());
      std::size_t a = std::min<std::size_t>(pos - cum.begin(), atoms.size() - 1);
      for (int i = 0; i < k; ++i)
        idx[i] = idx[i] * static_cast<std::size_t>(m) +
                 static_cast<std::size_t>(atoms[a].tuple[i]);
    }
    for (int i = 0; i < k; ++i) tuple[i] = f[idx[i]];
    sum += pred.satisfied(tuple);
  }
  double mean = sum / static_cast<double>(mc_samples);
  out.value = mean;
  out.method = "monte-carlo";
  out.samples = mc_samples;
  out.stderr_est = std::sqrt(std::max(0.0, mean * (1 - mean)) /
                             static_cast<double>(mc_samples));
  return out;
}

Rational influence(const FunctionTable& indicator, int coordinate) {
  const ProductSpace& sp = indicator.space();
  if (coordinate < 0 || coordinate >= sp.arity())
    throw domain_error("bad_coordinate", "coordinate out of range");
  std::vector<std::uint8_t> f(sp.total_size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Complex v = indicator[i];
    if (v.imag() != 0.0 || (v.real() != 0.0 && v.real() != 1.0))
      throw domain_error("not_boolean", "influence needs a 0/1-valued table");
    f[i] = v.real() == 1.0;
  }
  const auto& nu = indicator.measure();

  std::size_t m = static_cast<std::size_t>(sp.radix(coordinate));
  std::size_t stride = sp.stride(coordinate);
  std::size_t block = m * stride;

  // Exact weight of the off-coordinate point x_{-i}.
  std::vector<int> pt;
  auto rest_weight = [&](std::size_t base_idx) {
    sp.point_of(base_idx, pt);
    Rational w = 1;
    for (int c = 0; c < sp.arity(); ++c)
      if (c != coordinate) w *= nu[c][pt[c]];
    return w;
  };

  Rational two_point = 0;   // Pr[f(x) != f(x')], both coordinates resampled
  Rational variance_form = 0;  // 2(E[f^2] - ||E[f | x_{-i}]||^2)
  Rational ef2 = 0;
  for (std::size_t base = 0; base < sp.total_size(); base += block)
    for (std::size_t off = 0; off < stride; ++off) {
      Rational w = rest_weight(base + off);
      Rational cond = 0;
      for (std::size_t s = 0; s < m; ++s) {
        Rational ps = nu[coordinate][s];
        if (f[base + off + s * stride]) {
          cond += ps;
          ef2 += w * ps;
        }
        for (std::size_t t = 0; t < m; ++t)
          if (f[base + off + s * stride] != f[base + off + t * stride])
            two_point += w * ps * nu[coordinate][t];
      }
      variance_form += w * cond * cond;
    }
  variance_form = 2 * (ef2 - variance_form);
  if (two_point != variance_form)
    throw consistency_error("influence_mismatch",
                            "two-point and variance formulas disagree");
  return two_point;
}

}  // namespace kwise
