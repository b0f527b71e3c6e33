#include "pii/parameters.hpp"

#include "pii/error.hpp"

#include <cmath>
#include <sstream>

namespace pii {

void Parameters::validate() const {
  if (!std::isfinite(sigma) || !std::isfinite(tau) || !std::isfinite(nu) || !std::isfinite(mu))
    throw ValidationError("parameters must be finite: " + describe());
  if (!(nu > 0.0))
    throw ValidationError("nu must be positive: " + describe());
  if (!(sigma > 0.0 && sigma < 1.0))
    throw ValidationError("sigma must lie in (0, 1): " + describe());
  if (!(tau > -1.0 && tau < 1.0))
    throw ValidationError("tau must lie in (-1, 1): " + describe());
}

std::string Parameters::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "(sigma=" << sigma << ", tau=" << tau << ", nu=" << nu << ", mu=" << mu << ")";
  return os.str();
}

} // namespace pii
