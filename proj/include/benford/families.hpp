#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "benford/specfun.hpp"

namespace benford {

enum class FamilyId { exponential, uniform, half_gaussian, benford };

/// Lowercase name used in chain-spec files ("exponential", "uniform", ...).
std::string_view family_name(FamilyId id);
std::optional<FamilyId> parse_family_name(std::string_view name);

/// Upper bound on |Mellin value| of the shape
///   scale * l^{-poly_exponent} * exp(log_ratio * l),   l >= 1.
/// Products of profiles are profiles, which is what lets the chain engine
/// bound its truncated tails in closed form.
struct MajorantProfile {
  double scale = 0.0;
  double poly_exponent = 0.0;
  double log_ratio = 0.0;  // <= 0

  double at(double l) const;
  /// The profile of l -> this->at(|r| * l).
  MajorantProfile dilated(long r) const;
  MajorantProfile operator*(const MajorantProfile& other) const;
};

/// A one-parameter family closed under scaling: f_theta(x) = f(x/theta)/theta.
///
/// Immutable value. The benford family carries its own base; its support
/// at unit scale is [1, base).
class ScaleFamily {
 public:
  static ScaleFamily exponential();
  static ScaleFamily uniform();
  static ScaleFamily half_gaussian();
  static ScaleFamily benford(int base);

  /// Throws InputError for benford without a base >= 2.
  static ScaleFamily from_id(FamilyId id, int base);

  FamilyId id() const { return id_; }
  std::string_view name() const { return family_name(id_); }
  /// Only meaningful for the benford family.
  int base() const { return base_; }

  double density_at_unit(double x) const;
  double cdf_at_unit(double x) const;

  /// (Mf)(1 - 2 pi i l / ln B), exact closed form. 1 at l = 0.
  ComplexValue mellin_exact(long l, int base) const;

  /// Upper bound on |mellin_exact(l, base)|, nonincreasing in |l| >= 1.
  double majorant(long l, int base) const;
  MajorantProfile majorant_profile(int base) const;

  /// Points of [0, inf) where the unit density is not smooth.
  std::vector<double> breakpoints() const;

  friend bool operator==(const ScaleFamily&, const ScaleFamily&) = default;

 private:
  ScaleFamily(FamilyId id, int base) : id_(id), base_(base) {}

  FamilyId id_;
  int base_;
};

/// Exact Mellin value of the family's unit density at 1 - 2 pi i l / ln B.
ComplexValue mellin_at(const ScaleFamily& family, long l, int base);

using Density = std::function<double(double)>;

/// Quadrature evaluation of  int_0^inf f(t) t^{-2 pi i l / ln B} dt  after the
/// substitution t = e^u. `breakpoints` are points in t where f has kinks or
/// jumps. Throws NonConvergence when the absolute error estimate exceeds tol
/// within the evaluation budget.
ComplexValue mellin_numeric(const Density& density, long l, int base, double tol,
                            std::span<const double> breakpoints = {});

/// Density of W^r, W distributed as the family at unit scale:
///   psi_r(u) = phi(u^{1/r}) u^{(1-r)/r} / |r|.
/// Throws DomainError for r == 0 or u <= 0.
double power_density(const ScaleFamily& family, long r, double u);

/// Mellin value of the density of W^r at 1 - 2 pi i l / ln B, which is the
/// family's own Mellin value at r * l.
ComplexValue power_shift(const ScaleFamily& family, long r, long l, int base);

}  // namespace benford
