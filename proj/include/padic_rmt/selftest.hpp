#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "padic_rmt/signature.hpp"

namespace padic {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Non-increasing signatures of length n with parts in [lo, hi].
std::vector<Signature> signatures_in_box(std::size_t n, std::int64_t lo, std::int64_t hi);

// Elimination against the minors oracle on planted bi-invariant matrices
// (n <= max_n, parts in [-3, 5], precision >= 30).
CheckResult check_snf_oracle(int count, std::size_t max_n, std::uint64_t seed);

// Exact identities over every signature with 1 <= n <= max_n and parts in [lo, hi].
CheckResult check_hl_branching(std::size_t max_n, std::int64_t lo, std::int64_t hi);
CheckResult check_hl_symmetrized(std::size_t max_n, std::int64_t lo, std::int64_t hi);
CheckResult check_hl_principal(std::size_t max_n, std::int64_t lo, std::int64_t hi);

// One result per golden file under dir (suite "golden"). A file that is
// missing, unreadable or disagrees with the library is a named failure.
std::vector<CheckResult> check_goldens(const std::filesystem::path& dir);

// All suites; filter keeps results whose suite name contains it.
std::vector<CheckResult> run_selftest(const std::string& filter,
                                      const std::filesystem::path& data_dir = PADIC_RMT_DATA_DIR);

}  // namespace padic
