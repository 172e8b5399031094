#include "padic_rmt/presets.hpp"

namespace padic {

namespace {

ExperimentConfig make(EnsembleKind kind, std::size_t n, std::int64_t k_max, std::int64_t trials) {
  ExperimentConfig c;
  c.spec.n = n;
  c.spec.kind = std::move(kind);
  c.k_max = k_max;
  c.trials = trials;
  return c;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"paper-counterexample", "A_k = diag(1, 2^(2^(k-1))): a non-split sequence where lambda - v is unbounded",
       make(DoublingDiagonal{}, 2, 20, 1)},
      {"fixed-10", "i.i.d. bi-invariant steps with SN (1,0)", make(FixedSN{Signature{1, 0}}, 2, 5000, 50)},
      {"mixture-10", "SN (1,0) or (0,0) with probability 1/2 each",
       make(SNMixture{{{Signature{1, 0}, mpq_class(1, 2)}, {Signature{0, 0}, mpq_class(1, 2)}}}, 2, 2000, 100)},
      {"constant-sn", "SN (1,1): every step is p times a unit, so the covariance degenerates",
       make(FixedSN{Signature{1, 1}}, 2, 1000, 50)},
      {"haar-corner", "top 2 x 2 block of a Haar element of GL_3(Z_p)", make(CornerOfHaar{3}, 2, 2000, 50)},
      {"haar-entries", "i.i.d. uniform Z_p entries", make(HaarEntries{}, 2, 2000, 50)},
      {"gsp4-demo", "GSp_4 bi-invariant steps with SN (1,1,0,0)",
       make(GSpFixedSN{Signature{1, 1, 0, 0}}, 4, 5000, 20)},
  };
  return all;
}

std::optional<ExperimentConfig> find_preset(const std::string& name) {
  const std::string key = name == "non-split-counterexample" ? "paper-counterexample" : name;
  for (const auto& p : presets()) {
    if (p.name == key) return p.config;
  }
  return std::nullopt;
}

}  // namespace padic
