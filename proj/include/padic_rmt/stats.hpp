#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "padic_rmt/hall_littlewood.hpp"
#include "padic_rmt/signature.hpp"

namespace padic {

using Histogram = std::map<Signature, std::uint64_t>;

// 1/2 sum |count/total - prob| over the union of supports, exactly.
mpq_class tv_distance(const Histogram& empirical, const SignatureDistribution& exact);

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  std::size_t cells = 0;  // after pooling
};

// Pearson goodness of fit. Cells with expected count below min_expected are
// pooled (smallest first) until every cell reaches it.
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<mpq_class>& probs,
                               double min_expected = 5.0);
ChiSquareResult chi_square_gof(const Histogram& empirical, const SignatureDistribution& exact,
                               double min_expected = 5.0);

// Upper tail of the standard normal, two-sided.
double normal_two_sided_p(double z);

// Exact integer moment accumulator for one coordinate.
struct MomentSums {
  std::uint64_t count = 0;
  mpz_class s1, s2, s3, s4;

  void add(std::int64_t x);
  void merge(const MomentSums& o);
  mpq_class mean() const;
  // Central moments m_k = (1/N) sum (x - mean)^k, exact.
  mpq_class central(int k) const;
  double skewness() const;
  double excess_kurtosis() const;
};

// Sample correlation of paired integer observations.
double correlation(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y);

}  // namespace padic
