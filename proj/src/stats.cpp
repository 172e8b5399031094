#include "padic_rmt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace padic {

mpq_class tv_distance(const Histogram& empirical, const SignatureDistribution& exact) {
  std::uint64_t total = 0;
  for (const auto& [sig, c] : empirical) total += c;
  if (total == 0) throw std::invalid_argument("empty histogram");
  const mpz_class n(std::to_string(total));
  mpq_class sum = 0;
  for (const auto& [sig, c] : empirical) {
    auto it = exact.find(sig);
    const mpq_class p = it == exact.end() ? mpq_class(0) : it->second;
    sum += abs(mpq_class(mpz_class(std::to_string(c)), n) - p);
  }
  for (const auto& [sig, p] : exact) {
    if (!empirical.count(sig)) sum += p;
  }
  return sum / 2;
}

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<mpq_class>& probs,
                               double min_expected) {
  if (observed.size() != probs.size()) throw std::invalid_argument("chi-square: size mismatch");
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  struct Cell {
    double obs;
    double expected;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    cells.push_back({static_cast<double>(observed[i]), probs[i].get_d() * total});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.expected < b.expected; });
  // Pool the smallest cells together until the pooled cell is large enough.
  std::vector<Cell> pooled;
  Cell acc{0, 0};
  for (const auto& c : cells) {
    if (acc.expected < min_expected) {
      acc.obs += c.obs;
      acc.expected += c.expected;
      if (acc.expected >= min_expected) {
        pooled.push_back(acc);
        acc = {0, 0};
      }
    } else {
      pooled.push_back(c);
    }
  }
  if (acc.expected > 0 || acc.obs > 0) {
    if (pooled.empty()) {
      pooled.push_back(acc);
    } else {
      pooled.front().obs += acc.obs;
      pooled.front().expected += acc.expected;
    }
  }
  ChiSquareResult r;
  r.cells = pooled.size();
  for (const auto& c : pooled) {
    if (c.expected > 0) r.statistic += (c.obs - c.expected) * (c.obs - c.expected) / c.expected;
  }
  r.dof = static_cast<int>(pooled.size()) - 1;
  if (r.dof >= 1) {
    boost::math::chi_squared dist(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  }
  return r;
}

ChiSquareResult chi_square_gof(const Histogram& empirical, const SignatureDistribution& exact, double min_expected) {
  std::vector<std::uint64_t> obs;
  std::vector<mpq_class> probs;
  std::uint64_t outside = 0;
  for (const auto& [sig, p] : exact) {
    auto it = empirical.find(sig);
    obs.push_back(it == empirical.end() ? 0 : it->second);
    probs.push_back(p);
  }
  for (const auto& [sig, c] : empirical) {
    if (!exact.count(sig)) outside += c;
  }
  mpq_class covered = 0;
  for (const auto& p : probs) covered += p;
  if (outside > 0 || covered < 1) {
    obs.push_back(outside);
    probs.push_back(1 - covered);
  }
  return chi_square_gof(obs, probs, min_expected);
}

double normal_two_sided_p(double z) {
  boost::math::normal dist;
  return 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(z)));
}

void MomentSums::add(std::int64_t x) {
  const mpz_class v(static_cast<long>(x));
  ++count;
  s1 += v;
  const mpz_class v2 = v * v;
  s2 += v2;
  s3 += v2 * v;
  s4 += v2 * v2;
}

void MomentSums::merge(const MomentSums& o) {
  count += o.count;
  s1 += o.s1;
  s2 += o.s2;
  s3 += o.s3;
  s4 += o.s4;
}

mpq_class MomentSums::mean() const {
  if (count == 0) return 0;
  mpq_class m(s1, mpz_class(std::to_string(count)));
  m.canonicalize();
  return m;
}

mpq_class MomentSums::central(int k) const {
  if (count == 0) return 0;
  const mpq_class n(mpz_class(std::to_string(count)));
  const mpq_class mu = mean();
  const mpq_class e2 = mpq_class(s2) / n, e3 = mpq_class(s3) / n, e4 = mpq_class(s4) / n;
  switch (k) {
    case 2:
      return e2 - mu * mu;
    case 3:
      return e3 - 3 * mu * e2 + 2 * mu * mu * mu;
    case 4:
      return e4 - 4 * mu * e3 + 6 * mu * mu * e2 - 3 * mu * mu * mu * mu;
    default:
      throw std::invalid_argument("central moment order must be 2, 3 or 4");
  }
}

double MomentSums::skewness() const {
  const double m2 = central(2).get_d();
  if (m2 <= 0) return 0;
  return central(3).get_d() / std::pow(m2, 1.5);
}

double MomentSums::excess_kurtosis() const {
  const double m2 = central(2).get_d();
  if (m2 <= 0) return 0;
  return central(4).get_d() / (m2 * m2) - 3.0;
}

double correlation(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("correlation: need paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += static_cast<double>(x[i]);
    my += static_cast<double>(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = static_cast<double>(x[i]) - mx;
    const double dy = static_cast<double>(y[i]) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace padic
