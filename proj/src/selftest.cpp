#include "padic_rmt/selftest.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include <json.hpp>

#include "padic_rmt/ensembles.hpp"
#include "padic_rmt/hall_littlewood.hpp"
#include "padic_rmt/io.hpp"
#include "padic_rmt/smith.hpp"
#include "padic_rmt/symplectic.hpp"

namespace padic {

namespace {

const std::vector<mpq_class>& probe_points() {
  static const std::vector<mpq_class> pts = {mpq_class(2), mpq_class(1, 3), mpq_class(-3, 2), mpq_class(5, 7),
                                             mpq_class(-4, 9)};
  return pts;
}

std::vector<mpq_class> first_points(std::size_t n) {
  return {probe_points().begin(), probe_points().begin() + static_cast<std::ptrdiff_t>(n)};
}

const std::vector<mpq_class>& probe_ts() {
  static const std::vector<mpq_class> ts = {mpq_class(1, 2), mpq_class(1, 3), mpq_class(2, 5)};
  return ts;
}

CheckResult over_box(const std::string& name, std::size_t max_n, std::int64_t lo, std::int64_t hi,
                     const std::function<bool(const Signature&, const mpq_class&)>& identity) {
  CheckResult r{"hl", name, true, ""};
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const auto& lambda : signatures_in_box(n, lo, hi)) {
      for (const auto& t : probe_ts()) {
        ++checked;
        if (!identity(lambda, t)) {
          r.pass = false;
          r.detail = "fails at " + lambda.to_string() + ", t = " + t.get_str();
          return r;
        }
      }
    }
  }
  r.detail = std::to_string(checked) + " cases";
  return r;
}

std::vector<Signature> signatures_below(const Signature& lambda, std::size_t len) {
  return signatures_in_box(len, lambda.back(), lambda.front());
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open");
  return nlohmann::json::parse(in);
}

Signature sig_of(const nlohmann::json& j) { return Signature(j.get<IntVector>()); }

bool same_distribution(const SignatureDistribution& got, const nlohmann::json& expected, std::string& why) {
  SignatureDistribution want = distribution_from_json(expected);
  for (const auto& [sig, p] : want) {
    auto it = got.find(sig);
    const mpq_class g = it == got.end() ? mpq_class(0) : it->second;
    if (g != p) {
      why = sig.to_string() + ": library " + rational_string(g) + ", golden " + rational_string(p);
      return false;
    }
  }
  for (const auto& [sig, p] : got) {
    if (p != 0 && !want.count(sig)) {
      why = sig.to_string() + " missing from golden";
      return false;
    }
  }
  return true;
}

bool check_golden_file(const nlohmann::json& g, std::string& why) {
  const std::string kind = g.at("kind").get<std::string>();
  if (kind == "corner_distribution") {
    const Signature lambda = sig_of(g.at("signature"));
    const mpq_class t = t_of(Prime(g.at("p").get<std::int64_t>()));
    for (const auto& level : g.at("levels")) {
      const auto k = level.at("level").get<std::size_t>();
      if (!same_distribution(kth_corner_distribution(lambda, k, t), level.at("distribution"), why)) {
        why = "level " + std::to_string(k) + ", " + why;
        return false;
      }
    }
    return true;
  }
  if (kind == "lln_gaps") {
    SNLaw law;
    for (const auto& [sig, p] : distribution_from_json(g.at("law"))) law.emplace_back(sig, p);
    const mpq_class t = t_of(Prime(g.at("p").get<std::int64_t>()));
    const auto gaps = lln_prediction(law, t);
    const auto& want = g.at("gaps");
    if (want.size() != gaps.size()) {
      why = "gap count";
      return false;
    }
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      if (gaps[i] != parse_rational(want[i].get<std::string>())) {
        why = "gap " + std::to_string(i + 1) + ": library " + rational_string(gaps[i]) + ", golden " +
              want[i].get<std::string>();
        return false;
      }
    }
    const auto report = verify_corner_inequality(law, t);
    if (!report.degenerate && !report.strict) {
      why = "corner inequality not strict";
      return false;
    }
    return true;
  }
  if (kind == "p_eval") {
    std::vector<mpq_class> pts;
    for (const auto& x : g.at("points")) pts.push_back(parse_rational(x.get<std::string>()));
    for (const auto& e : g.at("values")) {
      const Signature lambda = sig_of(e.at("signature"));
      const mpq_class t = t_of(Prime(e.at("p").get<std::int64_t>()));
      const mpq_class got = hl_p_eval(lambda, pts, t);
      if (got != parse_rational(e.at("value").get<std::string>())) {
        why = "P" + lambda.to_string() + ": library " + rational_string(got);
        return false;
      }
    }
    return true;
  }
  if (kind == "haar_corner") {
    const auto cutoff = g.at("cutoff").get<std::int64_t>();
    const auto m = hl_haar_corner_measure(g.at("n").get<std::size_t>(), g.at("m").get<std::size_t>(),
                                          g.at("ambient").get<std::int64_t>(), Prime(g.at("p").get<std::int64_t>()));
    SignatureDistribution head;
    for (const auto& [sig, p] : m.probs) {
      if (sig.front() <= cutoff) head.emplace(sig, p);
    }
    return same_distribution(head, g.at("distribution"), why);
  }
  why = "unknown golden kind '" + kind + "'";
  return false;
}

std::vector<CheckResult> normalization_suite() {
  std::vector<CheckResult> out;
  const mpq_class half(1, 2);
  out.push_back({"normalization", "Q of the zero signature is 1",
                 hl_q_eval(Signature{0, 0}, {half, mpq_class(1, 4)}, half) == 1, ""});
  out.push_back({"normalization", "Cauchy kernel with an empty list is 1", cauchy_kernel({half, 1}, {}, half) == 1, ""});
  const auto law = corner_distribution(Signature{1, 0}, half);
  out.push_back({"normalization", "corner law of (1,0) at t = 1/2",
                 law == SignatureDistribution{{Signature{1}, mpq_class(1, 3)}, {Signature{0}, mpq_class(2, 3)}}, ""});
  bool sums = true;
  for (const auto& lambda : signatures_in_box(3, -1, 2)) {
    mpq_class total = 0;
    for (const auto& [sig, p] : corner_distribution(lambda, mpq_class(1, 3))) {
      sums = sums && p >= 0;
      total += p;
    }
    sums = sums && total == 1;
  }
  out.push_back({"normalization", "corner laws are probability vectors", sums, "n = 3, parts in [-1, 2], t = 1/3"});
  const auto hc = hl_haar_corner_measure(2, 2, 3, Prime(2));
  auto it = hc.probs.find(Signature{0, 0});
  out.push_back({"normalization", "Haar corner n=m=2, N=3, p=2: P(0,0) = 4/7",
                 it != hc.probs.end() && it->second == mpq_class(4, 7), ""});
  bool strict = true;
  for (const auto& lambda : {Signature{1, 0}, Signature{2, 1, 0}, Signature{1, 1, 0}}) {
    for (std::int64_t p : {2, 3}) {
      strict = strict && verify_corner_inequality({{lambda, mpq_class(1)}}, t_of(Prime(p))).strict;
    }
  }
  out.push_back({"normalization", "strict corner inequality", strict, "(1,0), (2,1,0), (1,1,0) at p = 2, 3"});
  return out;
}

std::vector<CheckResult> gsp_suite() {
  std::vector<CheckResult> out;
  bool ok = true;
  RngStream rng(7, 0);
  for (std::size_t h = 1; h <= 2; ++h) {
    for (int i = 0; i < 20; ++i) {
      auto s = sample_haar_sp(h, Prime(3), 20, rng);
      auto mu = is_gsp(s);
      ok = ok && mu && mu->shift == 0 && mu->residue == 1;
    }
  }
  out.push_back({"gsp", "Haar Sp samples are symplectic", ok, "h = 1, 2 at p = 3"});
  bool balanced = true;
  for (int i = 0; i < 20; ++i) {
    auto g = sample_bi_invariant_gsp(Signature{2, 1, 1, 0}, Prime(2), 30, rng);
    balanced = balanced && gsp_singular_numbers(g.matrix) == Signature{2, 1, 1, 0};
  }
  out.push_back({"gsp", "bi-invariant GSp samples keep their SN", balanced, "(2,1,1,0) at p = 2"});
  return out;
}

std::vector<CheckResult> rng_suite() {
  std::vector<CheckResult> out;
  RngStream a(42, 3), b(42, 3);
  bool same = true;
  for (int i = 0; i < 100; ++i) same = same && a.next_u64() == b.next_u64();
  out.push_back({"rng", "same key gives the same stream", same, ""});
  RngStream c(42, 3);
  const auto before = c.position();
  (void)c.derive(5);
  out.push_back({"rng", "derive does not advance the parent", c.position() == before, ""});
  RngStream d(1, 0), e(1, 0);
  const mpz_class short_digits = sample_uniform_residue(d, Prime(3), 10);
  const mpz_class long_digits = sample_uniform_residue(e, Prime(3), 50);
  out.push_back({"rng", "higher precision extends the same digits",
                 long_digits % prime_power(Prime(3), 10) == short_digits, ""});
  return out;
}

}  // namespace

std::vector<Signature> signatures_in_box(std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::vector<Signature> out;
  IntVector parts(n, lo);
  if (n == 0) return {Signature{}};
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t cap) {
    if (i == n) {
      out.emplace_back(parts);
      return;
    }
    for (std::int64_t x = cap; x >= lo; --x) {
      parts[i] = x;
      rec(i + 1, x);
    }
  };
  rec(0, hi);
  return out;
}

CheckResult check_snf_oracle(int count, std::size_t max_n, std::uint64_t seed) {
  CheckResult r{"snf", "elimination matches the minors oracle", true, ""};
  const std::int64_t primes[] = {2, 3, 5};
  for (int i = 0; i < count; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const std::size_t n = 1 + rng.uniform_below(max_n);
    const Prime p(primes[rng.uniform_below(3)]);
    IntVector parts(n);
    for (auto& x : parts) x = static_cast<std::int64_t>(rng.uniform_below(9)) - 3;
    std::sort(parts.rbegin(), parts.rend());
    const Signature lambda(parts);
    const int precision = 30 + static_cast<int>(rng.uniform_below(20));
    const PadicMatrix a = sample_bi_invariant(lambda, n, n, p, precision, rng);
    const Signature fast = smith_singular_numbers(a);
    const Signature slow = singular_numbers_via_minors(a);
    if (fast != slow || fast != lambda) {
      r.pass = false;
      r.detail = "matrix " + std::to_string(i) + ": planted " + lambda.to_string() + ", elimination " +
                 fast.to_string() + ", minors " + slow.to_string();
      return r;
    }
  }
  r.detail = std::to_string(count) + " planted matrices";
  return r;
}

CheckResult check_hl_branching(std::size_t max_n, std::int64_t lo, std::int64_t hi) {
  return over_box("branching consistency", max_n, lo, hi, [](const Signature& lambda, const mpq_class& t) {
    const std::size_t n = lambda.size();
    const auto pts = first_points(n);
    const mpq_class whole = hl_p_eval(lambda, pts, t);
    // Split the variables as (x_1..x_k | x_{k+1}..x_n) for every k.
    for (std::size_t k = 1; k < n; ++k) {
      const std::vector<mpq_class> head(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(k));
      const std::vector<mpq_class> tail(pts.begin() + static_cast<std::ptrdiff_t>(k), pts.end());
      mpq_class sum = 0;
      for (const auto& mu : signatures_below(lambda, k)) {
        sum += hl_skew_eval(lambda, mu, tail, t) * hl_p_eval(mu, head, t);
      }
      if (sum != whole) return false;
    }
    return true;
  });
}

CheckResult check_hl_symmetrized(std::size_t max_n, std::int64_t lo, std::int64_t hi) {
  return over_box("symmetrized oracle", max_n, lo, hi, [](const Signature& lambda, const mpq_class& t) {
    const auto pts = first_points(lambda.size());
    return hl_p_eval(lambda, pts, t) == hl_p_symmetrized_oracle(lambda, pts, t);
  });
}

CheckResult check_hl_principal(std::size_t max_n, std::int64_t lo, std::int64_t hi) {
  return over_box("principal specialization", max_n, lo, hi, [](const Signature& lambda, const mpq_class& t) {
    for (const mpq_class& x : {mpq_class(1), mpq_class(3, 5), mpq_class(-2)}) {
      std::vector<mpq_class> pts;
      mpq_class c = x;
      for (std::size_t i = 0; i < lambda.size(); ++i, c *= t) pts.push_back(c);
      if (hl_p_eval(lambda, pts, t) != principal_specialization(lambda, x, t)) return false;
    }
    return true;
  });
}

std::vector<CheckResult> check_goldens(const std::filesystem::path& dir) {
  std::vector<CheckResult> out;
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (ec || files.empty()) {
    out.push_back({"hl-golden", dir.string(), false, "no golden files found"});
    return out;
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    CheckResult r{"hl-golden", f.filename().string(), false, ""};
    try {
      r.pass = check_golden_file(read_json(f), r.detail);
    } catch (const std::exception& e) {
      r.detail = std::string("unreadable: ") + e.what();
    }
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> run_selftest(const std::string& filter, const std::filesystem::path& data_dir) {
  auto wanted = [&](const std::string& suite) { return suite.find(filter) != std::string::npos; };
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) out.push_back(std::move(r));
  };
  if (wanted("snf")) out.push_back(check_snf_oracle(200, 4, 11));
  if (wanted("hl")) {
    out.push_back(check_hl_branching(4, -2, 3));
    out.push_back(check_hl_symmetrized(4, -2, 3));
    out.push_back(check_hl_principal(4, -2, 3));
  }
  if (wanted("hl-golden")) append(check_goldens(data_dir / "hl"));
  if (wanted("normalization")) append(normalization_suite());
  if (wanted("gsp")) append(gsp_suite());
  if (wanted("rng")) append(rng_suite());
  return out;
}

}  // namespace padic
