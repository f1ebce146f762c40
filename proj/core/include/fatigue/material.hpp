#pragma once

#include <cmath>
#include <cstdint>

#include "fatigue/errors.hpp"

namespace fatigue {

// Uniaxial reduction of the anisotropic continuum damage model for concrete
// under compressive fatigue. The state is fully described by the lateral
// damage omega2 (omega2 == omega3) and the axial stress.
//
// Sign convention: compressive stress is carried as a positive magnitude
// sbar1 = -sigma1, and the damage-driving term uses |g|. With that choice the
// lateral strain eps2 stays >= 0 and the elastic limit reproduces
// E = 45000 MPa, nu = 0.2 from the default Lame constants. The axial strain
// eps1 is likewise reported as a compressive magnitude.
struct MaterialParameters {
  double lambda = 12500.0; // MPa
  double mu = 18750.0;     // MPa
  double g = -10.0;        // MPa
  double K = 0.00485;      // MPa
  double C0 = 0.0;         // MPa
  double C1 = 0.0019;      // MPa
  double alpha = 2237.5;   // MPa
  double beta = -2116.5;   // MPa
  double n = 10.0;
  double fc = 70.0;        // compressive strength, MPa

  void validate() const;
};

// The tangent factor kappa is printed with ambiguous bracketing in the
// source constitutive law. The factored form multiplies the 4(alpha+beta)w
// term by (lambda+2mu), matching the denominator of the lateral-strain
// solve; the unfactored form leaves it bare. The factored form is the
// default; the alternative is kept as a switch for sensitivity checks.
enum class KappaGrouping { Factored, Unfactored };

struct UniaxialState {
  double omega2 = 0.0; // lateral damage, non-decreasing
  double eps1 = 0.0;   // axial strain, compressive magnitude
  double eps2 = 0.0;   // lateral strain, >= 0
  double sbar1 = 0.0;  // compressive stress magnitude, MPa
  std::uint64_t cycles_completed = 0;
};

// D(omega2): denominator of the lateral strain solve and the leading block
// of kappa. D <= 0 means the reduced stiffness is singular.
inline double tangent_denominator(const MaterialParameters& p, double omega2) {
  const double l2m = p.lambda + 2.0 * p.mu;
  const double law = p.lambda + p.alpha * omega2;
  return l2m * (2.0 * (p.lambda + p.mu) + 4.0 * (p.alpha + p.beta) * omega2) -
         2.0 * law * law;
}

double lateral_strain(const MaterialParameters& p, double sbar1, double omega2);

double axial_strain(const MaterialParameters& p, double sbar1, double eps2,
                    double omega2);

// Damage threshold k(omega) = C0 - C1*tr(omega) = C0 - 2*C1*omega2: the
// threshold softens as damage grows, so sub-threshold states at a low level
// are re-activated by damage accumulated at a higher level. A hardening
// threshold (C0 + 2*C1*omega2) was tried first and rejected: it inverts the
// observed loading-sequence effect (H-L runs come out life-extending) because
// the damage at a low level jumps to its quasi-steady value within a
// negligible fraction of the lifetime.
inline double yield_value(const MaterialParameters& p, double eps2,
                          double omega2) {
  return std::abs(p.g) * eps2 - (p.C0 - 2.0 * p.C1 * omega2);
}

double kappa(const MaterialParameters& p, double eps1, double eps2,
             double omega2, KappaGrouping grouping = KappaGrouping::Factored);

double damage_increment(const MaterialParameters& p, const UniaxialState& state,
                        double dsbar1,
                        KappaGrouping grouping = KappaGrouping::Factored);

// Advances the stress linearly to sbar1_target in `substeps` explicit
// increments. Damage is evaluated at the increment-start state; strains are
// refreshed after every increment. Throws SingularTangent on failure.
UniaxialState step(const MaterialParameters& p, UniaxialState state,
                   double sbar1_target, int substeps,
                   KappaGrouping grouping = KappaGrouping::Factored);

} // namespace fatigue
