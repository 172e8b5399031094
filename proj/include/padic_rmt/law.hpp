#pragma once

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padic_rmt/signature.hpp"

namespace padic {

// Finitely supported law on signatures with exact probabilities.
using SNLaw = std::vector<std::pair<Signature, mpq_class>>;

}  // namespace padic
