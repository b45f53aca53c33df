#include "kwise/json_io.hpp"

#include <algorithm>

namespace kwise {

namespace {

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw domain_error("bad_json", "complex values are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json measure_to_json(const std::vector<std::vector<Rational>>& measure) {
  Json out = Json::array();
  for (const auto& coord : measure) {
    Json c = Json::array();
    for (const auto& p : coord) c.push_back(format_rational(p));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::vector<Rational>> measure_from_json(const Json& j) {
  std::vector<std::vector<Rational>> out;
  for (const auto& coord : j) {
    std::vector<Rational> c;
    for (const auto& p : coord) c.push_back(parse_rational(p.get<std::string>()));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Json distribution_to_json(const JointDistribution& mu) {
  Json j;
  j["alphabets"] = mu.alphabets();
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) {
    Json atom;
    atom["tuple"] = a.tuple;
    atom["p"] = format_rational(a.p);
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

JointDistribution distribution_from_json(const Json& j) {
  std::vector<int> alphabets = j.at("alphabets").get<std::vector<int>>();
  std::vector<JointDistribution::Atom> atoms;
  for (const auto& a : j.at("atoms"))
    atoms.push_back({a.at("tuple").get<std::vector<int>>(),
                     parse_rational(a.at("p").get<std::string>())});
  return JointDistribution(std::move(alphabets), std::move(atoms));
}

Json table_to_json(const FunctionTable& f) {
  Json j;
  j["radices"] = f.space().radices();
  j["measure"] = measure_to_json(f.measure());
  Json vals = Json::array();
  for (const auto& v : f.values()) vals.push_back(complex_to_json(v));
  j["values"] = std::move(vals);
  return j;
}

FunctionTable table_from_json(const Json& j) {
  ProductSpace sp(j.at("radices").get<std::vector<int>>());
  auto measure = measure_from_json(j.at("measure"));
  std::vector<Complex> vals;
  for (const auto& v : j.at("values")) vals.push_back(complex_from_json(v));
  return FunctionTable(std::move(sp), std::move(measure), std::move(vals));
}

Json witness_to_json(const EmbeddingWitness& w) {
  Json j;
  if (w.integer_target) {
    j["group"] = "Z";
  } else {
    j["group"] = w.group.orders;
  }
  Json sigma = Json::array();
  for (const auto& coord : w.sigma) {
    Json c = Json::array();
    for (const auto& v : coord) {
      if (w.element_rank() == 1)
        c.push_back(v[0]);
      else
        c.push_back(v);
    }
    sigma.push_back(std::move(c));
  }
  j["sigma"] = std::move(sigma);
  return j;
}

EmbeddingWitness witness_from_json(const Json& j) {
  EmbeddingWitness w;
  const Json& g = j.at("group");
  if (g.is_string() && g.get<std::string>() == "Z") {
    w.integer_target = true;
  } else {
    w.integer_target = false;
    w.group.orders = g.get<std::vector<long long>>();
  }
  for (const auto& coord : j.at("sigma")) {
    std::vector<std::vector<long long>> c;
    for (const auto& v : coord) {
      if (v.is_array())
        c.push_back(v.get<std::vector<long long>>());
      else
        c.push_back({v.get<long long>()});
    }
    w.sigma.push_back(std::move(c));
  }
  return w;
}

Json report_to_json(const ConnectivityReport& rep) {
  Json j;
  j["connected"] = rep.connected;
  j["has_abelian_embedding"] = rep.has_abelian_embedding;
  j["has_z_embedding"] = rep.has_z_embedding;
  j["pairwise_connected"] = rep.pairwise_connected;
  j["support_components"] = rep.support_partition.component_count;
  if (rep.abelian_witness)
    j["abelian_witness"] = witness_to_json(*rep.abelian_witness);
  if (rep.z_witness) j["z_witness"] = witness_to_json(*rep.z_witness);
  return j;
}

Json norm_report_to_json(const NormReport& rep) {
  Json j;
  j["value"] = rep.value;
  j["method"] = rep.method;
  j["samples"] = rep.samples;
  j["stderr"] = rep.stderr_est;
  return j;
}

Json form_report_to_json(const FormReport& rep) {
  Json j;
  j["value"] = complex_to_json(rep.value);
  j["method"] = rep.method;
  j["samples"] = rep.samples;
  j["stderr"] = rep.stderr_est;
  return j;
}

Json correlation_report_to_json(const CorrelationReport& rep) {
  Json j;
  j["value"] = rep.value;
  Json factors = Json::array();
  for (const auto& f : rep.product_part.factors()) {
    Json fac = Json::array();
    for (const auto& v : f) fac.push_back(complex_to_json(v));
    factors.push_back(std::move(fac));
  }
  j["product_factors"] = std::move(factors);
  if (rep.low_degree_part) j["low_degree_part"] = table_to_json(*rep.low_degree_part);
  j["restarts"] = rep.restarts_used;
  j["sweeps"] = rep.sweeps;
  j["converged"] = rep.converged;
  return j;
}

Json gap_report_to_json(const GapReport& rep) {
  Json j;
  j["lambda_hat"] = rep.lambda_hat;
  j["best_correlation"] = rep.best_correlation;
  Json cert = Json::array();
  for (const auto& fn : rep.certificate) {
    Json c = Json::array();
    for (const auto& v : fn) c.push_back(complex_to_json(v));
    cert.push_back(std::move(c));
  }
  j["certificate"] = std::move(cert);
  j["restarts"] = rep.restarts_used;
  j["converged"] = rep.converged;
  return j;
}

Json probe_report_to_json(const ProbeReport& rep) {
  Json j;
  j["success_rate"] = rep.success_rate;
  j["threshold"] = rep.threshold;
  j["pairwise_connected"] = rep.pairwise_connected;
  j["initial_correlation"] = complex_to_json(rep.initial_correlation);
  j["values"] = rep.values;
  return j;
}

Json trace_to_json(const MeshulamTrace& trace) {
  Json j;
  Json entries = Json::array();
  for (const auto& e : trace.entries) {
    Json entry;
    entry["dims"] = e.dims;
    entry["density"] = to_double(e.density);
    entry["density_exact"] = format_rational(e.density);
    entry["codim"] = e.codim;
    entries.push_back(std::move(entry));
  }
  j["trace"] = std::move(entries);
  switch (trace.outcome) {
    case MeshulamOutcome::ap_found:
      j["outcome"] = "ap_found";
      break;
    case MeshulamOutcome::hypothesis_failed:
      j["outcome"] = "hypothesis_failed";
      break;
    case MeshulamOutcome::dimension_exhausted:
      j["outcome"] = "dimension_exhausted";
      break;
  }
  if (trace.witness) j["witness"] = trace.witness->points;
  return j;
}

Json csp_to_json(const CspInstance& inst) {
  Json j;
  j["vars"] = inst.nvars;
  j["alphabet"] = inst.alphabet;
  Json cons = Json::array();
  for (const auto& c : inst.constraints) {
    Json cj;
    cj["vars"] = c.vars;
    std::string bits;
    for (auto b : c.pred.table) bits.push_back(b ? '1' : '0');
    cj["table"] = bits;
    cons.push_back(std::move(cj));
  }
  j["constraints"] = std::move(cons);
  return j;
}

CspInstance csp_from_json(const Json& j) {
  CspInstance inst;
  inst.nvars = j.at("vars").get<int>();
  inst.alphabet = j.at("alphabet").get<int>();
  for (const auto& cj : j.at("constraints")) {
    auto vars = cj.at("vars").get<std::vector<int>>();
    inst.constraints.push_back(
        {vars, Predicate::from_bitstring(static_cast<int>(vars.size()),
                                         inst.alphabet,
                                         cj.at("table").get<std::string>())});
  }
  inst.validate();
  return inst;
}

Json game_to_json(const Game& g) {
  Json j;
  j["players"] = g.players;
  j["vertices"] = g.vertex_counts;
  j["alphabets"] = g.alphabets;
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json ej;
    ej["verts"] = e.verts;
    Json acc = Json::array();
    for (const auto& t : e.accepted) acc.push_back(t);
    ej["accept"] = std::move(acc);
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  return j;
}

Game game_from_json(const Json& j) {
  Game g;
  g.players = j.at("players").get<int>();
  g.vertex_counts = j.at("vertices").get<std::vector<int>>();
  g.alphabets = j.at("alphabets").get<std::vector<int>>();
  for (const auto& ej : j.at("edges")) {
    Game::Edge e;
    e.verts = ej.at("verts").get<std::vector<int>>();
    for (const auto& t : ej.at("accept"))
      e.accepted.insert(t.get<std::vector<int>>());
    g.edges.push_back(std::move(e));
  }
  g.validate();
  return g;
}

Json point_set_to_json(const PointSet& s) {
  Json j;
  j["radix"] = s.space.radix(0);
  j["n"] = s.space.arity();
  Json pts = Json::array();
  for (std::size_t i = 0; i < s.membership.size(); ++i)
    if (s.membership[i]) pts.push_back(i);
  j["points"] = std::move(pts);
  return j;
}

PointSet point_set_from_json(const Json& j) {
  int radix = j.at("radix").get<int>();
  int n = j.at("n").get<int>();
  if (j.contains("hex")) {
    std::string hex = j.at("hex").get<std::string>();
    ProductSpace sp = ProductSpace::power(radix, n);
    std::vector<std::uint8_t> mask(sp.total_size(), 0);
    // Low nibbles first: bit b of nibble t covers point index 4t+b.
    for (std::size_t t = 0; t < hex.size(); ++t) {
      char c = hex[t];
      int v = c >= '0' && c <= '9'   ? c - '0'
              : c >= 'a' && c <= 'f' ? c - 'a' + 10
              : c >= 'A' && c <= 'F' ? c - 'A' + 10
                                     : -1;
      if (v < 0) throw domain_error("bad_set", "invalid hex digit");
      for (int b = 0; b < 4; ++b) {
        std::size_t idx = 4 * t + b;
        if (idx < mask.size() && (v >> b & 1)) mask[idx] = 1;
      }
    }
    return PointSet(std::move(sp), std::move(mask));
  }
  auto pts = j.at("points").get<std::vector<std::size_t>>();
  return PointSet::of_indices(radix, n, pts);
}

}  // namespace kwise
