#pragma once

#include <cstddef>
#include <string>

namespace seqlab {

enum class SpaceKind { Lp, LInfty, C0 };

/// Which norm governs a workspace. C0 uses the sup norm like LInfty; the
/// difference is only that c0 fixtures must have coordinates tending to 0.
class AmbientSpace {
 public:
  static AmbientSpace lp(double p);
  static AmbientSpace linf() { return AmbientSpace(SpaceKind::LInfty, 0.0); }
  static AmbientSpace c0() { return AmbientSpace(SpaceKind::C0, 0.0); }

  SpaceKind kind() const noexcept { return kind_; }
  /// Exponent for Lp; meaningless for sup-norm spaces.
  double p() const noexcept { return p_; }
  bool is_sup() const noexcept { return kind_ != SpaceKind::Lp; }
  bool integer_p() const noexcept;
  /// Hoelder conjugate of p (infinity for p = 1).
  double dual_exponent() const noexcept;
  std::string name() const;

  friend bool operator==(const AmbientSpace&, const AmbientSpace&) = default;

 private:
  AmbientSpace(SpaceKind kind, double p) : kind_(kind), p_(p) {}

  SpaceKind kind_;
  double p_;
};

/// Workspace-wide knobs shared by the pipelines.
struct Tolerances {
  double eta = 1e-9;        ///< zero / residual tolerance in float mode
  std::size_t truncation = 0;
  std::size_t depth = 1;

  /// Throws ConfigError naming the violated bound.
  void validate() const;
};

}  // namespace seqlab
