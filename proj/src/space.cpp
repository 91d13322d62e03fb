#include "seqlab/space.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "seqlab/errors.hpp"

namespace seqlab {

AmbientSpace AmbientSpace::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "p must satisfy 1 <= p < inf, got " << p;
    throw Error(Errc::ConfigError, os.str());
  }
  return AmbientSpace(SpaceKind::Lp, p);
}

bool AmbientSpace::integer_p() const noexcept {
  return kind_ == SpaceKind::Lp && std::floor(p_) == p_;
}

double AmbientSpace::dual_exponent() const noexcept {
  if (kind_ != SpaceKind::Lp) return 1.0;
  if (p_ == 1.0) return std::numeric_limits<double>::infinity();
  return p_ / (p_ - 1.0);
}

std::string AmbientSpace::name() const {
  switch (kind_) {
    case SpaceKind::LInfty: return "linf";
    case SpaceKind::C0: return "c0";
    case SpaceKind::Lp: {
      std::ostringstream os;
      os << "l" << p_;
      return os.str();
    }
  }
  return "?";
}

void Tolerances::validate() const {
  if (!(eta > 0.0)) throw Error(Errc::ConfigError, "eta must satisfy eta > 0");
  if (depth < 1) throw Error(Errc::ConfigError, "depth must satisfy depth >= 1");
  if (truncation < 4 * depth) {
    throw Error(Errc::ConfigError, "truncation must satisfy T >= 4*depth");
  }
}

}  // namespace seqlab
