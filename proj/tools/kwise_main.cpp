// Command-line front end: every module as a subcommand with JSON in/out,
// explicit seeds, and byte-reproducible output.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "kwise/fixtures.hpp"
#include "kwise/json_io.hpp"
#include "kwise/parallel.hpp"
#include "kwise/selftest.hpp"
#include "kwise/version.hpp"

namespace {

using namespace kwise;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Output {
  std::string subcommand;
  std::uint64_t config_hash = 0;
  std::optional<std::uint64_t> seed;
  std::string out_path;

  int emit(const Json& result) const {
    Json j;
    j["subcommand"] = subcommand;
    j["version"] = kVersion;
    if (seed)
      j["seed"] = *seed;
    else
      j["seed"] = nullptr;
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(config_hash));
    j["config_hash"] = hex;
    j["result"] = result;
    std::string text = j.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
      std::fputs(text.c_str(), stdout);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw domain_error("bad_output", "cannot open " + out_path);
      out << text;
    }
    return 0;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error("bad_input", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_json(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw domain_error("bad_json", path + ": " + e.what());
  }
}

// --dist accepts a file path or a bundled fixture name.
JointDistribution load_distribution(const std::string& spec) {
  for (const auto& [name, dist] : fixtures::all_distributions())
    if (name == spec) return dist;
  if (spec == "dhj3") return fixtures::dhj3();
  return distribution_from_json(load_json(spec));
}

FunctionTable load_table(const std::string& path) {
  return table_from_json(load_json(path));
}

int run_selftest(const std::string& module, Output& out) {
  auto res = selftest::run(module);
  Json j;
  j["module"] = module;
  j["passed"] = res.passed;
  j["failures"] = res.failures;
  out.emit(j);
  return res.passed ? 0 : 1;
}

std::optional<McParams> mc_params(bool exact, std::int64_t mc_samples,
                                  std::optional<std::uint64_t> seed) {
  if (exact || mc_samples <= 0) return std::nullopt;
  if (!seed)
    throw domain_error("missing_seed",
                       "randomized runs require an explicit --seed");
  return McParams{static_cast<std::size_t>(mc_samples), *seed};
}

PatternFamily parse_family(const std::string& name, int p, int k) {
  if (name == "ap3_full") return PatternFamily::ap3(PatternKind::ap3_full, p);
  if (name == "ap3_somewhat")
    return PatternFamily::ap3(PatternKind::ap3_somewhat, p);
  if (name == "ap3_restricted")
    return PatternFamily::ap3(PatternKind::ap3_restricted, p);
  if (name == "comb_line") return PatternFamily::line(k);
  throw domain_error("bad_family", "unknown pattern family: " + name);
}

PointSet load_point_set(const std::string& file, const std::string& hex,
                        int radix, int n) {
  if (!file.empty()) return point_set_from_json(load_json(file));
  if (hex.empty()) throw domain_error("bad_set", "need --set-file or --set-hex");
  Json j;
  j["radix"] = radix;
  j["n"] = n;
  j["hex"] = hex;
  return point_set_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  std::string raw;
  for (int i = 1; i < argc; ++i) {
    raw += argv[i];
    raw.push_back('\0');
  }

  CLI::App app{"desk-scale toolkit for k-wise correlations, Abelian embeddings, "
               "uniformity norms, patterns and CSP benches"};
  app.require_subcommand(1);

  // Shared option storage; CLI11 binds per-subcommand flags onto these.
  std::string dist_spec, out_path, fn2, fn3, fn4, set_file, set_hex;
  std::vector<std::string> fn_paths;
  std::string kind = "gowers", method = "average", family_name = "ap3_full";
  std::string pred_bits, instance_path, lin_path, game_path, fn_table_path;
  std::string max_free_method;
  std::int64_t mc_samples = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t seed_raw = 0;
  bool exact = false, selftest_flag = false, emit_functions = false;
  int n = 1, s_order = 2, degree = -1, restarts = 20, trials = 100, p_mod = 3;
  int k_len = 3, char_index = 1, repeat_n = 0, threads = 1;
  double delta = 0.2, theta = 0.0, eps = 0.1, tolerance = 0.0;
  std::vector<int> subset_coords;
  long long budget = 50'000'000;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write the JSON result to a file");
    cmd->add_option("--threads", threads, "worker cap (output is thread-count independent)");
    cmd->add_option("--tolerance", tolerance, "override check tolerance where applicable");
    cmd->add_flag("--selftest", selftest_flag, "run this module's invariant suite");
    cmd->add_option("--seed", seed_raw, "RNG seed (required for randomized runs)")
        ->each([&](const std::string&) { seed = seed_raw; });
  };

  auto* c_embed = app.add_subcommand("embed-check", "Abelian / Z embedding detection");
  c_embed->add_option("--dist", dist_spec, "distribution JSON or fixture name");
  add_common(c_embed);

  auto* c_classify = app.add_subcommand("classify", "connectivity and embedding report");
  c_classify->add_option("--dist", dist_spec);
  add_common(c_classify);

  auto* c_fourier = app.add_subcommand("fourier", "Fourier transform over cyclic products");
  c_fourier->add_option("--fn", fn_paths, "function table JSON");
  add_common(c_fourier);

  auto* c_decomp = app.add_subcommand("decompose", "Efron-Stein degree profile");
  c_decomp->add_option("--fn", fn_paths);
  c_decomp->add_option("--degree", degree, "also report the (low, high) split");
  add_common(c_decomp);

  auto* c_norm = app.add_subcommand("norm", "Gowers / box / swap norms");
  c_norm->add_option("--kind", kind, "gowers | box | swap");
  c_norm->add_option("--fn", fn_paths);
  c_norm->add_option("--s", s_order, "uniformity order for gowers");
  c_norm->add_option("--subset", subset_coords, "coordinates of I for box");
  c_norm->add_option("--method", method, "swap path: average | exchange");
  c_norm->add_flag("--exact", exact);
  c_norm->add_option("--mc", mc_samples, "Monte Carlo sample count");
  add_common(c_norm);

  auto* c_corr = app.add_subcommand("correlate", "k-wise correlation over mu^n");
  c_corr->add_option("--dist", dist_spec);
  c_corr->add_option("--fn", fn_paths, "one table per coordinate of mu");
  c_corr->add_option("--n", n);
  c_corr->add_flag("--exact", exact);
  c_corr->add_option("--mc", mc_samples);
  add_common(c_corr);

  auto* c_ctr = app.add_subcommand("counterexample",
                                   "embedding-based functions with correlation 1");
  c_ctr->add_option("--dist", dist_spec);
  c_ctr->add_option("--n", n);
  c_ctr->add_option("--char", char_index, "character index for finite witnesses");
  c_ctr->add_option("--theta", theta, "exponent in (0,1) for Z witnesses");
  c_ctr->add_flag("--emit-functions", emit_functions);
  add_common(c_ctr);

  auto* c_red = app.add_subcommand("reduce43", "4-wise to 3-wise Cauchy-Schwarz step");
  c_red->add_option("--dist", dist_spec, "4-ary distribution");
  c_red->add_option("--fn", fn_paths, "four tables");
  c_red->add_option("--n", n);
  add_common(c_red);

  auto* c_gap = app.add_subcommand("gap3", "trilinear base-case gap estimate");
  c_gap->add_option("--dist", dist_spec);
  c_gap->add_option("--restarts", restarts);
  add_common(c_gap);

  auto* c_probe = app.add_subcommand("probe", "restricted product-correlation probe");
  c_probe->add_option("--dist", dist_spec);
  c_probe->add_option("--fn", fn_paths, "three tables f, g, h");
  c_probe->add_option("--delta", delta);
  c_probe->add_option("--trials", trials);
  add_common(c_probe);

  auto* c_pat = app.add_subcommand("patterns", "pattern counting and free-set search");
  c_pat->add_option("--family", family_name);
  c_pat->add_option("--p", p_mod);
  c_pat->add_option("--k", k_len);
  c_pat->add_option("--n", n);
  c_pat->add_option("--set-file", set_file);
  c_pat->add_option("--set-hex", set_hex);
  c_pat->add_option("--max-free", max_free_method, "exhaustive | bnb");
  c_pat->add_option("--budget", budget);
  add_common(c_pat);

  auto* c_mesh = app.add_subcommand("meshulam", "density increment run");
  c_mesh->add_option("--set-file", set_file);
  c_mesh->add_option("--set-hex", set_hex);
  c_mesh->add_option("--p", p_mod);
  c_mesh->add_option("--n", n);
  add_common(c_mesh);

  auto* c_lines = app.add_subcommand("lines", "combinatorial line counts");
  c_lines->add_option("--n", n);
  c_lines->add_option("--k", k_len);
  add_common(c_lines);

  auto* c_csp = app.add_subcommand("csp", "brute-force CSP values and 3-Lin");
  c_csp->add_option("--instance", instance_path, "CSP instance JSON");
  c_csp->add_option("--3lin", lin_path, "text rows 'a b c d i j k'");
  c_csp->add_option("--p", p_mod);
  add_common(c_csp);

  auto* c_dict = app.add_subcommand("dict-test", "dictatorship test evaluation");
  c_dict->add_option("--dist", dist_spec);
  c_dict->add_option("--pred-bits", pred_bits, "predicate truth table bitstring");
  c_dict->add_option("--fn-table", fn_table_path, "JSON list: f as a symbol table");
  c_dict->add_option("--n", n);
  c_dict->add_flag("--exact", exact);
  c_dict->add_option("--mc", mc_samples);
  add_common(c_dict);

  auto* c_game = app.add_subcommand("game", "multiplayer game values and repetition");
  c_game->add_option("--game", game_path);
  c_game->add_option("--repeat", repeat_n);
  add_common(c_game);

  auto* c_fix = app.add_subcommand("fixtures", "write the bundled fixture library");
  c_fix->add_option("--out-dir", out_path, "target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json err;
    err["error"] = "bad_usage";
    err["detail"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 2;
  }

  set_thread_cap(threads);
  Output out;
  out.config_hash = fnv1a(raw);
  out.seed = seed;
  out.out_path = out_path;

  try {
    if (c_embed->parsed()) {
      out.subcommand = "embed-check";
      if (selftest_flag) return run_selftest("embeddings", out);
      auto mu = load_distribution(dist_spec);
      Json r;
      auto z = detect_z_embedding(mu);
      auto ab = detect_abelian_embedding(mu);
      r["abelian"] = ab.has_value();
      r["z"] = z.has_value();
      if (ab) r["abelian_witness"] = witness_to_json(*ab);
      if (z) r["z_witness"] = witness_to_json(*z);
      if (z) {
        r["canonical_group"] = "infinite";
      } else {
        r["canonical_group"] = canonical_group(mu).orders;
      }
      return out.emit(r);
    }

    if (c_classify->parsed()) {
      out.subcommand = "classify";
      if (selftest_flag) return run_selftest("distributions", out);
      return out.emit(report_to_json(classify(load_distribution(dist_spec))));
    }

    if (c_fourier->parsed()) {
      out.subcommand = "fourier";
      if (selftest_flag) return run_selftest("analysis", out);
      if (fn_paths.empty()) throw domain_error("bad_usage", "need --fn");
      auto spec = fourier_transform(load_table(fn_paths[0]));
      Json r;
      r["radices"] = spec.group.radices();
      Json coeff = Json::array();
      for (const auto& c : spec.coeff)
        coeff.push_back(Json::array({c.real(), c.imag()}));
      r["coefficients"] = std::move(coeff);
      return out.emit(r);
    }

    if (c_decomp->parsed()) {
      out.subcommand = "decompose";
      if (selftest_flag) return run_selftest("analysis", out);
      if (fn_paths.empty()) throw domain_error("bad_usage", "need --fn");
      auto f = load_table(fn_paths[0]);
      Json r;
      r["profile"] = degree_profile(f);
      if (degree >= 0) {
        auto [low, high] = degree_mass(f, degree);
        r["degree"] = degree;
        r["low"] = low;
        r["high"] = high;
      }
      return out.emit(r);
    }

    if (c_norm->parsed()) {
      out.subcommand = "norm";
      if (selftest_flag) return run_selftest("norms", out);
      if (fn_paths.empty()) throw domain_error("bad_usage", "need --fn");
      auto f = load_table(fn_paths[0]);
      auto mc = mc_params(exact, mc_samples, seed);
      Json r;
      if (kind == "gowers") {
        r = norm_report_to_json(gowers_norm(f, s_order, mc));
      } else if (kind == "box") {
        CoordinateSubset I = CoordinateSubset::of(f.space().arity(), subset_coords);
        r["value"] = box_norm(f, I);
        r["method"] = "exact-sum";
      } else if (kind == "swap") {
        FormReport form = method == "exchange"
                              ? swap_via_exchange(f, f, f, f, mc)
                              : swap_form(f, f, f, f, mc);
        double inner = std::max(0.0, form.value.real());
        r["value"] = std::pow(inner, 0.25);
        r["form"] = Json::array({form.value.real(), form.value.imag()});
        r["method"] = form.method;
        r["samples"] = form.samples;
        r["stderr"] = form.stderr_est;
      } else {
        throw domain_error("bad_usage", "unknown norm kind: " + kind);
      }
      return out.emit(r);
    }

    if (c_corr->parsed()) {
      out.subcommand = "correlate";
      if (selftest_flag) return run_selftest("correlations", out);
      auto mu = load_distribution(dist_spec);
      std::vector<FunctionTable> fs;
      for (const auto& p : fn_paths) fs.push_back(load_table(p));
      auto mc = mc_params(exact, mc_samples, seed);
      return out.emit(form_report_to_json(kwise_correlation(mu, fs, n, mc)));
    }

    if (c_ctr->parsed()) {
      out.subcommand = "counterexample";
      if (selftest_flag) return run_selftest("correlations", out);
      auto mu = load_distribution(dist_spec);
      auto w = detect_abelian_embedding(mu);
      auto z = detect_z_embedding(mu);
      if (!w) throw domain_error("no_embedding", "mu admits no Abelian embedding");
      const EmbeddingWitness& use = z ? *z : *w;
      EmbeddingCharacters chars;
      if (use.integer_target) {
        double th = theta > 0 ? theta : 1.0 / std::sqrt(static_cast<double>(n));
        chars.thetas.assign(n, th);
      } else {
        std::vector<long long> c(use.group.rank(), 0);
        c[0] = char_index;
        chars.finite.assign(n, c);
      }
      auto fs = build_counterexample(mu, use, chars);
      Complex corr = kwise_correlation(mu, fs);
      Json r;
      r["witness"] = witness_to_json(use);
      r["n"] = n;
      r["correlation"] = Json::array({corr.real(), corr.imag()});
      r["modulus"] = std::abs(corr);
      if (emit_functions) {
        Json tables = Json::array();
        for (const auto& p : fs) tables.push_back(table_to_json(p.to_table()));
        r["functions"] = std::move(tables);
      }
      return out.emit(r);
    }

    if (c_red->parsed()) {
      out.subcommand = "reduce43";
      if (selftest_flag) return run_selftest("correlations", out);
      auto mu = load_distribution(dist_spec);
      std::vector<FunctionTable> fs;
      for (const auto& p : fn_paths) fs.push_back(load_table(p));
      auto res = reduce_arity_4_to_3(mu, fs, n);
      Json r;
      r["lhs_sq"] = res.lhs_sq;
      r["rhs"] = res.rhs;
      r["diagonal_mass"] = format_rational(res.diagonal_mass);
      r["min_atom"] = format_rational(res.min_atom);
      r["mu_prime"] = distribution_to_json(res.mu_prime);
      return out.emit(r);
    }

    if (c_gap->parsed()) {
      out.subcommand = "gap3";
      if (selftest_flag) return run_selftest("correlations", out);
      if (!seed) throw domain_error("missing_seed", "gap3 requires --seed");
      auto mu = load_distribution(dist_spec);
      return out.emit(
          gap_report_to_json(trilinear_gap_estimate(mu, {restarts, 500, *seed})));
    }

    if (c_probe->parsed()) {
      out.subcommand = "probe";
      if (selftest_flag) return run_selftest("correlations", out);
      if (!seed) throw domain_error("missing_seed", "probe requires --seed");
      if (fn_paths.size() != 3)
        throw domain_error("bad_usage", "probe needs exactly three --fn tables");
      auto mu = load_distribution(dist_spec);
      auto f = load_table(fn_paths[0]);
      auto g = load_table(fn_paths[1]);
      auto h = load_table(fn_paths[2]);
      return out.emit(probe_report_to_json(
          local_inverse_probe(mu, f, g, h, delta, trials, *seed)));
    }

    if (c_pat->parsed()) {
      out.subcommand = "patterns";
      if (selftest_flag) return run_selftest("patterns", out);
      auto family = parse_family(family_name, p_mod, k_len);
      Json r;
      r["family"] = family_name;
      r["distribution"] = distribution_to_json(pattern_distribution(family));
      if (!set_file.empty() || !set_hex.empty()) {
        auto set = load_point_set(set_file, set_hex, family.ambient_radix(), n);
        r["count_in_set"] = count_patterns(set, family);
        r["density"] = format_rational(set.density());
      } else if (n > 0) {
        r["total_instances"] =
            total_instances(ProductSpace::power(family.ambient_radix(), n), family);
      }
      if (!max_free_method.empty()) {
        auto res = max_pattern_free(n, family,
                                    max_free_method == "exhaustive"
                                        ? SearchMethod::exhaustive
                                        : SearchMethod::branch_and_bound,
                                    budget);
        Json fr;
        fr["size"] = res.size;
        fr["witness"] = res.witness;
        fr["optimal"] = res.optimal;
        fr["nodes"] = res.nodes;
        r["max_free"] = std::move(fr);
      }
      return out.emit(r);
    }

    if (c_mesh->parsed()) {
      out.subcommand = "meshulam";
      if (selftest_flag) return run_selftest("patterns", out);
      auto set = load_point_set(set_file, set_hex, p_mod, n);
      return out.emit(trace_to_json(meshulam_run(set, p_mod)));
    }

    if (c_lines->parsed()) {
      out.subcommand = "lines";
      if (selftest_flag) return run_selftest("patterns", out);
      BigInt kk = k_len, total = 1, sub = 1;
      for (int i = 0; i < n; ++i) {
        total *= kk + 1;
        sub *= kk;
      }
      BigInt lines = total - sub;
      Json r;
      r["n"] = n;
      r["k"] = k_len;
      r["total_lines"] = lines.str();
      if (lines <= 1'000'000'000)
        r["total_lines_int"] = lines.convert_to<long long>();
      return out.emit(r);
    }

    if (c_csp->parsed()) {
      out.subcommand = "csp";
      if (selftest_flag) return run_selftest("csp", out);
      Json r;
      if (!lin_path.empty()) {
        auto sys = parse_3lin(slurp(lin_path), p_mod);
        auto sol = gauss_solve_3lin(sys);
        r["satisfiable"] = sol.has_value();
        if (sol) r["solution"] = *sol;
        auto inst = lin_system_to_csp(sys);
        auto val = csp_value_bruteforce(inst);
        r["value"] = format_rational(val.value);
        r["best_assignment"] = val.assignment;
        r["random_assignment_value"] = format_rational(random_assignment_value(inst));
      } else {
        auto inst = csp_from_json(load_json(instance_path));
        auto val = csp_value_bruteforce(inst);
        r["value"] = format_rational(val.value);
        r["best_assignment"] = val.assignment;
        r["random_assignment_value"] = format_rational(random_assignment_value(inst));
      }
      return out.emit(r);
    }

    if (c_dict->parsed()) {
      out.subcommand = "dict-test";
      if (selftest_flag) return run_selftest("csp", out);
      auto mu = load_distribution(dist_spec);
      Predicate pred = Predicate::from_bitstring(mu.arity(), mu.alphabet(0), pred_bits);
      auto ftab = load_json(fn_table_path).get<std::vector<int>>();
      if (!exact && !seed)
        throw domain_error("missing_seed", "Monte Carlo dict-test requires --seed");
      auto res = dictatorship_test_eval(
          mu, pred, ftab, n, exact,
          mc_samples > 0 ? static_cast<std::size_t>(mc_samples) : 100000,
          seed.value_or(0));
      Json r;
      r["value"] = res.value;
      r["method"] = res.method;
      if (res.method == "exact-sum") r["value_exact"] = format_rational(res.exact);
      r["samples"] = res.samples;
      r["stderr"] = res.stderr_est;
      return out.emit(r);
    }

    if (c_game->parsed()) {
      out.subcommand = "game";
      if (selftest_flag) return run_selftest("games", out);
      auto g = game_from_json(load_json(game_path));
      auto v = game_value(g);
      Json r;
      r["value"] = format_rational(v.value);
      r["value_float"] = to_double(v.value);
      r["strategies"] = v.strategies;
      if (repeat_n > 1) {
        auto rg = repeat_game(g, repeat_n);
        auto rv = game_value(rg);
        Json rr;
        rr["n"] = repeat_n;
        rr["value"] = format_rational(rv.value);
        rr["value_float"] = to_double(rv.value);
        r["repeated"] = std::move(rr);
      }
      return out.emit(r);
    }

    if (c_fix->parsed()) {
      out.subcommand = "fixtures";
      namespace fs = std::filesystem;
      fs::create_directories(out_path);
      Json written = Json::array();
      for (const auto& [name, dist] : fixtures::all_distributions()) {
        std::ofstream f(out_path + "/" + name + ".json", std::ios::binary);
        f << distribution_to_json(dist).dump(2) << "\n";
        written.push_back(name + ".json");
      }
      {
        Json sat = Json::array();
        for (const auto& p : fixtures::three_sat_predicates()) {
          std::string bits;
          for (auto b : p.table) bits.push_back(b ? '1' : '0');
          sat.push_back(bits);
        }
        std::ofstream f(out_path + "/preds_3sat.json", std::ios::binary);
        f << sat.dump(2) << "\n";
        written.push_back("preds_3sat.json");
      }
      for (int p : {2, 3, 5}) {
        Json lin = Json::array();
        for (const auto& pr : fixtures::three_lin_predicates(p)) {
          std::string bits;
          for (auto b : pr.table) bits.push_back(b ? '1' : '0');
          lin.push_back(bits);
        }
        std::string name = "preds_3lin_p" + std::to_string(p) + ".json";
        std::ofstream f(out_path + "/" + name, std::ios::binary);
        f << lin.dump(2) << "\n";
        written.push_back(name);
      }
      Json r;
      r["directory"] = out_path;
      r["files"] = written;
      out.out_path.clear();
      return out.emit(r);
    }
  } catch (const domain_error& e) {
    Json err;
    err["error"] = e.code();
    err["detail"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const consistency_error& e) {
    Json err;
    err["error"] = e.code();
    err["detail"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "internal";
    err["detail"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 2;
}
