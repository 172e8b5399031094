#include "padic_rmt/io.hpp"

#include <stdexcept>

namespace padic {

namespace {

using nlohmann::json;

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return get_field<T>(j, key);
}

Signature signature_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("signature must be an array of integers");
  IntVector parts;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ConfigError("signature parts must be integers");
    parts.push_back(x.get<std::int64_t>());
  }
  try {
    return Signature(std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

mpq_class rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return mpq_class(mpz_class(j.get<long>()));
  throw ConfigError("rationals are given as strings like \"1/3\"");
}

}  // namespace

std::string rational_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) throw ConfigError("not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw ConfigError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

json matrix_to_json(const PadicMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      // A residue that vanishes to precision is written as p^N so that it
      // is not read back as an exact zero.
      if (a.is_exact_zero(i, j)) {
        row.push_back("0");
      } else if (a.residue(i, j) == 0) {
        row.push_back(a.modulus().get_str());
      } else {
        row.push_back(a.residue(i, j).get_str());
      }
    }
    rows.push_back(row);
  }
  return {{"p", a.prime().value()}, {"precision", a.precision()}, {"shift", a.shift()}, {"entries", rows}};
}

PadicMatrix matrix_from_json(const json& j) {
  const auto p_raw = get_field<std::int64_t>(j, "p");
  if (!is_prime(p_raw)) throw ConfigError("p = " + std::to_string(p_raw) + " is not prime");
  const Prime p(p_raw);
  const int precision = get_field<int>(j, "precision");
  if (precision < 1) throw ConfigError("precision must be >= 1");
  const auto shift = get_or<std::int64_t>(j, "shift", 0);
  const json& entries = j.at("entries");
  if (!entries.is_array() || entries.empty() || !entries.front().is_array()) {
    throw ConfigError("entries must be a non-empty array of rows");
  }
  RationalMatrix m;
  for (const auto& row : entries) {
    if (!row.is_array() || row.size() != entries.front().size()) throw ConfigError("ragged matrix rows");
    std::vector<mpq_class> r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    m.push_back(std::move(r));
  }
  bool integral = true;
  for (const auto& row : m) {
    for (const auto& x : row) integral = integral && x.get_den() == 1;
  }
  if (integral) {
    PadicMatrix a(p, m.size(), m.front().size(), precision, shift);
    for (std::size_t r = 0; r < m.size(); ++r) {
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        if (m[r][c] == 0) {
          a.set_exact_zero(r, c);
        } else {
          a.set(r, c, m[r][c].get_num());
        }
      }
    }
    return a;
  }
  PadicMatrix a = reduce(m, p, precision);
  a.set_shift(a.shift() + shift);
  return a;
}

json signature_to_json(const Signature& s) { return json(s.parts()); }

json spec_to_json(const EnsembleSpec& spec) {
  json kind;
  kind["type"] = spec.kind_name();
  if (const auto* f = std::get_if<FixedSN>(&spec.kind)) kind["lambda"] = signature_to_json(f->lambda);
  if (const auto* g = std::get_if<GSpFixedSN>(&spec.kind)) kind["lambda"] = signature_to_json(g->lambda);
  if (const auto* m = std::get_if<SNMixture>(&spec.kind)) {
    json comps = json::array();
    for (const auto& [sig, prob] : m->components) {
      comps.push_back({{"signature", signature_to_json(sig)}, {"prob", rational_string(prob)}});
    }
    kind["components"] = comps;
  }
  if (const auto* c = std::get_if<CornerOfHaar>(&spec.kind)) {
    kind["ambient"] = c->ambient ? json(*c->ambient) : json(nullptr);
  }
  return {{"p", spec.p.value()}, {"n", spec.n}, {"precision_base", spec.precision_base}, {"kind", kind}};
}

EnsembleSpec spec_from_json(const json& j) {
  EnsembleSpec spec;
  const auto p_raw = get_or<std::int64_t>(j, "p", 2);
  if (!is_prime(p_raw)) throw ConfigError("p = " + std::to_string(p_raw) + " is not prime");
  spec.p = Prime(p_raw);
  spec.n = get_or<std::size_t>(j, "n", 2);
  spec.precision_base = get_or<int>(j, "precision_base", 32);
  if (!j.contains("kind")) throw ConfigError("missing field 'kind'");
  const json& kind = j.at("kind");
  const auto type = get_field<std::string>(kind, "type");
  if (type == "FixedSN") {
    spec.kind = FixedSN{signature_from_json(kind.at("lambda"))};
  } else if (type == "GSpFixedSN") {
    spec.kind = GSpFixedSN{signature_from_json(kind.at("lambda"))};
  } else if (type == "SNMixture") {
    SNLaw law;
    if (!kind.contains("components") || !kind.at("components").is_array()) {
      throw ConfigError("SNMixture needs a components array");
    }
    for (const auto& c : kind.at("components")) {
      law.emplace_back(signature_from_json(c.at("signature")), rational_from_json(c.at("prob")));
    }
    spec.kind = SNMixture{law};
  } else if (type == "CornerOfHaar") {
    CornerOfHaar c;
    if (kind.contains("ambient") && !kind.at("ambient").is_null()) c.ambient = get_field<std::int64_t>(kind, "ambient");
    spec.kind = c;
  } else if (type == "HaarEntries") {
    spec.kind = HaarEntries{};
  } else if (type == "GSpHaar") {
    spec.kind = GSpHaar{spec.n / 2};
  } else if (type == "DoublingDiagonal") {
    spec.kind = DoublingDiagonal{};
  } else {
    throw ConfigError("unknown ensemble type '" + type + "'");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

json config_to_json(const ExperimentConfig& config) {
  return {{"spec", spec_to_json(config.spec)},
          {"k_max", config.k_max},
          {"trials", config.trials},
          {"seed", config.master_seed},
          {"jobs", config.jobs},
          {"tolerances",
           {{"lln_abs", config.tol.lln_abs},
            {"clt_rel", config.tol.clt_rel},
            {"tv_max", config.tol.tv_max},
            {"stabilization", config.tol.stabilization},
            {"gsp_symmetry", config.tol.gsp_symmetry}}}};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  if (!j.contains("spec")) throw ConfigError("missing field 'spec'");
  c.spec = spec_from_json(j.at("spec"));
  c.k_max = get_or<std::int64_t>(j, "k_max", c.k_max);
  c.trials = get_or<std::int64_t>(j, "trials", c.trials);
  c.master_seed = get_or<std::uint64_t>(j, "seed", c.master_seed);
  c.jobs = get_or<int>(j, "jobs", c.jobs);
  if (c.k_max < 1) throw ConfigError("k_max must be >= 1");
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    c.tol.lln_abs = get_or<double>(t, "lln_abs", c.tol.lln_abs);
    c.tol.clt_rel = get_or<double>(t, "clt_rel", c.tol.clt_rel);
    c.tol.tv_max = get_or<double>(t, "tv_max", c.tol.tv_max);
    c.tol.stabilization = get_or<double>(t, "stabilization", c.tol.stabilization);
    c.tol.gsp_symmetry = get_or<double>(t, "gsp_symmetry", c.tol.gsp_symmetry);
  }
  return c;
}

json distribution_to_json(const SignatureDistribution& d) {
  json out = json::array();
  for (const auto& [sig, prob] : d) out.push_back({{"signature", signature_to_json(sig)}, {"prob", rational_string(prob)}});
  return out;
}

SignatureDistribution distribution_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("distribution must be an array");
  SignatureDistribution d;
  for (const auto& e : j) {
    if (!e.contains("signature") || !e.contains("prob")) throw ConfigError("distribution entry needs signature and prob");
    d[signature_from_json(e.at("signature"))] = rational_from_json(e.at("prob"));
  }
  return d;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const std::size_t n = traj.n;
  const bool interp = !traj.steps.empty() && !traj.steps.back().interpolation.empty();
  out << "# padic-rmt trajectory csv v" << kTrajectoryCsvVersion << "\n";
  out << "k";
  for (std::size_t i = 1; i <= n; ++i) out << ",lambda_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",v_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",w_" << i;
  for (std::size_t i = 1; i < n; ++i) out << ",margin_" << i;
  out << ",sn_last";
  for (std::size_t i = 1; i <= n; ++i) out << ",lyapunov_" << i;
  if (interp) {
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t i = 1; i <= n; ++i) out << ",interp_" << j << "_" << i;
    }
  }
  out << "\n";
  for (const auto& s : traj.steps) {
    out << s.k;
    for (std::size_t i = 0; i < n; ++i) out << "," << s.lambda[i];
    for (std::size_t i = 0; i < n; ++i) out << "," << s.v[i];
    for (std::size_t i = 0; i < n; ++i) out << "," << (s.k > 0 && i < s.w.size() ? std::to_string(s.w[i]) : "");
    for (std::size_t i = 0; i + 1 < n; ++i) out << "," << (s.k > 0 && i < s.margin.size() ? std::to_string(s.margin[i]) : "");
    out << "," << (s.k > 0 ? std::to_string(s.sn_last) : "");
    for (std::size_t i = 0; i < n; ++i) {
      out << ",";
      if (s.k > 0) out << static_cast<double>(s.lambda[i]) / static_cast<double>(s.k);
    }
    if (interp) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          out << ",";
          if (j < s.interpolation.size() && i < s.interpolation[j].size()) out << s.interpolation[j][i];
        }
      }
    }
    out << "\n";
  }
  if (!out) throw std::ios_base::failure("failed writing trajectory CSV");
}

}  // namespace padic
