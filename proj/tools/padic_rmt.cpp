// padic-rmt: command-line front end. Exit codes: 0 ok, 1 bad config or
// usage, 2 numeric failure or failed criterion, 3 I/O.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "padic_rmt/errors.hpp"
#include "padic_rmt/hall_littlewood.hpp"
#include "padic_rmt/harness.hpp"
#include "padic_rmt/io.hpp"
#include "padic_rmt/presets.hpp"
#include "padic_rmt/selftest.hpp"
#include "padic_rmt/smith.hpp"
#include "padic_rmt/symplectic.hpp"

namespace fs = std::filesystem;
using namespace padic;

namespace {

enum Exit { kOk = 0, kBadConfig = 1, kNumeric = 2, kIo = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string config_path;
  std::string preset;
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> kmax;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string signature;
  std::string out;
  bool with_interpolation = false;
};

void add_run_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config_path, "experiment config JSON");
  cmd->add_option("--preset", o.preset, "named preset (see README)");
  cmd->add_option("--p", o.p, "prime, overrides the config");
  cmd->add_option("--kmax", o.kmax, "number of steps");
  cmd->add_option("--trials", o.trials, "number of independent trials");
  cmd->add_option("--seed", o.seed, "master seed (fallback: PADIC_RMT_SEED)");
  cmd->add_option("--jobs", o.jobs, "worker threads, 1 = serial, default all cores");
  cmd->add_option("--signature", o.signature, "use FixedSN with this SN, e.g. 1,0");
  cmd->add_option("--out", o.out, "output directory");
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("PADIC_RMT_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("PADIC_RMT_SEED is not an unsigned integer: ") + s);
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

// require_source: fail with usage text when neither --config nor --preset
// nor --signature is given.
ExperimentConfig resolve_config(const RunOptions& o, bool require_source,
                                const std::optional<ExperimentConfig>& fallback = std::nullopt) {
  ExperimentConfig c;
  if (!o.config_path.empty() && !o.preset.empty()) throw ConfigError("--config and --preset are exclusive");
  if (!o.config_path.empty()) {
    c = config_from_json(read_json_file(o.config_path));
  } else if (!o.preset.empty()) {
    auto found = find_preset(o.preset);
    if (!found) throw ConfigError("unknown preset '" + o.preset + "'");
    c = *found;
  } else if (fallback) {
    c = *fallback;
  } else if (require_source && o.signature.empty()) {
    throw UsageError("a config is required: pass --config FILE, --preset NAME or --signature SN");
  }
  if (!o.signature.empty()) {
    try {
      const Signature sig = parse_signature(o.signature);
      c.spec.n = sig.size();
      c.spec.kind = FixedSN{sig};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (o.p) {
    if (!is_prime(*o.p)) throw ConfigError("--p " + std::to_string(*o.p) + " is not prime");
    c.spec.p = Prime(*o.p);
  }
  if (o.kmax) c.k_max = *o.kmax;
  if (o.trials) c.trials = *o.trials;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.seed) {
    c.master_seed = *o.seed;
  } else if (auto s = env_seed()) {
    c.master_seed = *s;
  }
  if (c.k_max < 1) throw ConfigError("--kmax must be >= 1");
  if (c.trials < 1) throw ConfigError("--trials must be >= 1");
  if (c.jobs < 0) throw ConfigError("--jobs must be >= 0");
  try {
    c.spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

fs::path ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  return fs::path(dir);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

int simulate(const ExperimentConfig& c, const RunOptions& o, bool gsp_checks) {
  const fs::path dir = ensure_dir(o.out.empty() ? "padic-rmt-out" : o.out);
  const auto trajectories = map_trials<Trajectory>(c.trials, c.jobs, [&](std::int64_t i) {
    return run_coupled_trajectory(c.spec, c.k_max, RngStream(c.master_seed, static_cast<std::uint64_t>(i)),
                                  o.with_interpolation);
  });
  nlohmann::json meta;
  meta["schema_version"] = 1;
  meta["csv_version"] = kTrajectoryCsvVersion;
  meta["config"] = config_to_json(c);
  meta["with_interpolation"] = o.with_interpolation;
  meta["files"] = nlohmann::json::array();
  bool balanced = true;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& traj = trajectories[i];
    std::ostringstream csv;
    write_trajectory_csv(traj, csv);
    const std::string name = "trajectory_" + std::to_string(i) + ".csv";
    write_text(dir / name, csv.str());
    nlohmann::json esc = nlohmann::json::array();
    for (const auto& e : traj.escalations) esc.push_back({{"k", e.k}, {"precision", e.precision}});
    const auto& last = traj.steps.back();
    nlohmann::json lyap = nlohmann::json::array();
    for (const auto& q : lyapunov_estimates(last)) lyap.push_back(q.get_d());
    meta["files"].push_back({{"file", name}, {"trial", i}, {"escalations", esc}, {"lyapunov", lyap}});
    std::cout << "trial " << i << ": lambda(" << last.k << ") = " << last.lambda.to_string() << ", lambda/k =";
    for (const auto& x : lyap) std::cout << " " << x.get<double>();
    std::cout << "\n";
    if (gsp_checks) {
      for (const auto& s : traj.steps) balanced = balanced && is_balanced(s.lambda);
    }
  }
  if (gsp_checks) {
    meta["balanced"] = balanced;
    std::cout << (balanced ? "every lambda(k) is balanced\n" : "unbalanced lambda(k) found\n");
  }
  meta["generated_at"] = timestamp();
  write_text(dir / "metadata.json", meta.dump(2) + "\n");
  std::cout << "wrote " << trajectories.size() << " trajectories to " << dir.string() << "\n";
  return balanced ? kOk : kNumeric;
}

int experiment(const std::string& which, const ExperimentConfig& c, const RunOptions& o) {
  ExperimentReport r;
  if (which == "lln") {
    r = run_lln_experiment(c);
  } else if (which == "clt") {
    r = run_clt_experiment(c);
  } else {
    r = run_bounded_difference_experiment(c);
  }
  std::cout << r.summary();
  if (!o.out.empty()) {
    const fs::path dir = ensure_dir(o.out);
    const fs::path path = dir / (which + "_report.json");
    write_text(path, r.to_json().dump(2) + "\n");
    std::cout << "report: " << path.string() << "\n";
  }
  return r.all_pass() ? kOk : kNumeric;
}

std::vector<mpq_class> parse_points(const std::string& text) {
  std::vector<mpq_class> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) pts.push_back(parse_rational(item));
  return pts;
}

struct CornerOptions {
  std::string signature;
  std::int64_t p = 2;
  std::size_t level = 2;
  std::int64_t monte_carlo = 0;
  std::optional<std::uint64_t> seed;
  int jobs = 0;
};

int corner_dist(const CornerOptions& o) {
  Signature lambda;
  try {
    lambda = parse_signature(o.signature);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!is_prime(o.p)) throw ConfigError("--p " + std::to_string(o.p) + " is not prime");
  const Prime p(o.p);
  if (o.level < 1 || o.level > lambda.size()) throw ConfigError("--level must be in 1..len(signature)");
  const auto exact = kth_corner_distribution(lambda, o.level, t_of(p));
  Histogram hist;
  if (o.monte_carlo > 0) {
    const std::uint64_t seed = o.seed ? *o.seed : env_seed().value_or(1);
    const int precision = static_cast<int>(lambda.front() - lambda.back()) + 32;
    hist = sample_histogram(o.monte_carlo, seed, o.jobs, [&](RngStream& rng) {
      for (int attempt = 0;; ++attempt) {
        RngStream r = rng.derive(static_cast<std::uint64_t>(attempt));
        const PadicMatrix a = sample_bi_invariant(lambda, lambda.size(), lambda.size(), p, precision << attempt, r);
        try {
          return smith_singular_numbers(corner(a, o.level));
        } catch (const PrecisionExhausted&) {
          if (attempt >= 8) throw;
        }
      }
    });
  }
  std::cout << "SN(A^(" << o.level << ")) for SN(A) = " << lambda.to_string() << ", p = " << o.p << "\n";
  std::cout << "signature\tprob";
  if (o.monte_carlo > 0) std::cout << "\tempirical";
  std::cout << "\n";
  for (auto it = exact.rbegin(); it != exact.rend(); ++it) {
    std::cout << it->first.to_string() << "\t" << rational_string(it->second);
    if (o.monte_carlo > 0) {
      auto h = hist.find(it->first);
      const double c = h == hist.end() ? 0.0 : static_cast<double>(h->second);
      std::cout << "\t" << c / static_cast<double>(o.monte_carlo);
    }
    std::cout << "\n";
  }
  if (o.monte_carlo > 0) std::cout << "tv_distance\t" << tv_distance(hist, exact).get_d() << "\n";
  return kOk;
}

struct HlOptions {
  std::string signature;
  std::string mu;
  std::string points;
  std::int64_t p = 2;
};

int hl_eval(const HlOptions& o) {
  Signature lambda, mu;
  std::vector<mpq_class> pts;
  try {
    lambda = parse_signature(o.signature);
    if (!o.mu.empty()) mu = parse_signature(o.mu);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!is_prime(o.p)) throw ConfigError("--p " + std::to_string(o.p) + " is not prime");
  const mpq_class t = t_of(Prime(o.p));
  const std::size_t count = lambda.size() - mu.size();
  if (o.points.empty()) {
    mpq_class x = 1;
    for (std::size_t i = 0; i < count; ++i, x *= t) pts.push_back(x);
  } else {
    pts = parse_points(o.points);
  }
  if (pts.size() != count) throw ConfigError("expected " + std::to_string(count) + " points");
  std::cout << "t = " << rational_string(t) << "\n";
  if (mu.empty()) {
    std::cout << "P" << lambda.to_string() << " = " << rational_string(hl_p_eval(lambda, pts, t)) << "\n";
    bool nonneg = lambda.back() >= 0;
    if (nonneg) std::cout << "Q" << lambda.to_string() << " = " << rational_string(hl_q_eval(lambda, pts, t)) << "\n";
  } else {
    std::cout << "P" << lambda.to_string() << "/" << mu.to_string() << " = "
              << rational_string(hl_skew_eval(lambda, mu, pts, t)) << "\n";
  }
  return kOk;
}

int selftest(const std::string& filter, const std::string& data_dir) {
  const auto results = run_selftest(filter, data_dir.empty() ? fs::path(PADIC_RMT_DATA_DIR) : fs::path(data_dir));
  if (results.empty()) {
    std::cerr << "no suite matches filter '" << filter << "'\n";
    return kBadConfig;
  }
  int failed = 0;
  for (const auto& r : results) {
    std::cout << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.suite << ": " << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    failed += !r.pass;
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
  return failed ? kNumeric : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic random matrix products: singular numbers, simulations, Hall-Littlewood predictions"};
  app.require_subcommand(1, 1);

  RunOptions sim, lln, clt, bd, gsp;
  auto* c_sim = app.add_subcommand("simulate", "write trajectory CSVs and a metadata sidecar");
  add_run_flags(c_sim, sim);
  c_sim->add_flag("--with-interpolation", sim.with_interpolation, "also record the interpolating processes");
  auto* c_lln = app.add_subcommand("lln", "law of large numbers experiment");
  add_run_flags(c_lln, lln);
  auto* c_clt = app.add_subcommand("clt", "central limit experiment");
  add_run_flags(c_clt, clt);
  auto* c_bd = app.add_subcommand("bounded-diff", "boundedness of lambda(k) - v(k)");
  add_run_flags(c_bd, bd);
  auto* c_gsp = app.add_subcommand("gsp-simulate", "GSp trajectories with the balanced-pairs check");
  add_run_flags(c_gsp, gsp);
  c_gsp->add_flag("--with-interpolation", gsp.with_interpolation, "also record the interpolating processes");

  CornerOptions corner_opts;
  auto* c_corner = app.add_subcommand("corner-dist", "exact law of a corner's singular numbers");
  c_corner->add_option("--signature", corner_opts.signature, "SN(A), e.g. 1,0,0")->required();
  c_corner->add_option("--p", corner_opts.p, "prime");
  c_corner->add_option("--level", corner_opts.level, "corner index k: the last n-k+1 rows");
  c_corner->add_option("--monte-carlo", corner_opts.monte_carlo, "append an empirical column from N samples");
  c_corner->add_option("--seed", corner_opts.seed, "master seed (fallback: PADIC_RMT_SEED)");
  c_corner->add_option("--jobs", corner_opts.jobs, "worker threads");

  HlOptions hl_opts;
  auto* c_hl = app.add_subcommand("hl-eval", "evaluate P, Q or a skew P at rational points");
  c_hl->add_option("--signature", hl_opts.signature, "lambda")->required();
  c_hl->add_option("--mu", hl_opts.mu, "inner signature for a skew evaluation");
  c_hl->add_option("--points", hl_opts.points, "comma-separated rationals (default 1, t, t^2, ...)");
  c_hl->add_option("--p", hl_opts.p, "prime, t = 1/p");

  std::string filter, data_dir;
  auto* c_self = app.add_subcommand("selftest", "exact identity suites and golden tables");
  c_self->add_option("--filter", filter, "run only suites whose name contains this");
  c_self->add_option("--data-dir", data_dir, "directory holding hl/*.json goldens");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == c_sim) return simulate(resolve_config(sim, true), sim, false);
    if (active == c_gsp) {
      auto demo = find_preset("gsp4-demo");
      const auto c = resolve_config(gsp, false, demo);
      if (!c.spec.is_symplectic()) throw ConfigError("gsp-simulate needs a GSp ensemble");
      return simulate(c, gsp, true);
    }
    if (active == c_lln) return experiment("lln", resolve_config(lln, false), lln);
    if (active == c_clt) {
      ExperimentConfig def;
      def.k_max = 500;
      def.trials = 2000;
      return experiment("clt", resolve_config(clt, false, def), clt);
    }
    if (active == c_bd) {
      ExperimentConfig def;
      def.k_max = 2000;
      def.trials = 100;
      return experiment("bounded-diff", resolve_config(bd, false, def), bd);
    }
    if (active == c_corner) return corner_dist(corner_opts);
    if (active == c_hl) return hl_eval(hl_opts);
    if (active == c_self) return selftest(filter, data_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->help();
    return kBadConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "numeric error: precision exhausted: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  }
  return kBadConfig;
}
