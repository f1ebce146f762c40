#include "fatigue/material.hpp"

#include <cmath>
#include <string>

namespace fatigue {

void MaterialParameters::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(mu > 0.0)) fail("mu must be > 0");
  if (!(lambda >= 0.0)) fail("lambda must be >= 0");
  if (!(C1 > 0.0)) fail("C1 must be > 0 (divisor in the damage law)");
  if (!(K > 0.0)) fail("K must be > 0");
  if (!(n >= 1.0)) fail("n must be >= 1");
  if (g == 0.0) fail("g must be nonzero");
  if (!(fc > 0.0)) fail("fc must be > 0");
}

double lateral_strain(const MaterialParameters& p, double sbar1,
                      double omega2) {
  const double den = tangent_denominator(p, omega2);
  if (den <= 0.0) {
    throw SingularTangent("lateral strain denominator D(omega2) <= 0 at omega2=" +
                          std::to_string(omega2));
  }
  const double num = (p.lambda + p.alpha * omega2) * sbar1 +
                     std::abs(p.g) * omega2 * (p.lambda + 2.0 * p.mu);
  return num / den;
}

double axial_strain(const MaterialParameters& p, double sbar1, double eps2,
                    double omega2) {
  // Magnitude convention: the signed axial strain is
  // (sigma1 - 2(lambda+alpha*w)eps2)/(lambda+2mu) with sigma1 = -sbar1 < 0;
  // negating gives the compressive magnitude below. At omega2=0 this
  // reproduces |eps1| = sbar1/E with E = 45000 MPa.
  return (sbar1 + 2.0 * (p.lambda + p.alpha * omega2) * eps2) /
         (p.lambda + 2.0 * p.mu);
}

double kappa(const MaterialParameters& p, double eps1, double eps2,
             double omega2, KappaGrouping grouping) {
  const double half_gc = p.g / (2.0 * p.C1);
  const double strain_term = p.alpha * half_gc * (2.0 * eps2 - eps1);
  const double g_term = p.g * p.g / (2.0 * p.C1);
  if (grouping == KappaGrouping::Factored) {
    return tangent_denominator(p, omega2) - strain_term - g_term;
  }
  // Unfactored: the 4(alpha+beta)w term is not multiplied by (lambda+2mu).
  const double l2m = p.lambda + 2.0 * p.mu;
  const double law = p.lambda + p.alpha * omega2;
  return l2m * 2.0 * (p.lambda + p.mu) + 4.0 * (p.alpha + p.beta) * omega2 -
         2.0 * law * law - strain_term - g_term;
}

double damage_increment(const MaterialParameters& p, const UniaxialState& state,
                        double dsbar1, KappaGrouping grouping) {
  if (dsbar1 <= 0.0) return 0.0;
  const double f = yield_value(p, state.eps2, state.omega2);
  if (f <= 0.0) return 0.0;
  const double kv = kappa(p, state.eps1, state.eps2, state.omega2, grouping);
  if (kv <= 0.0) {
    throw SingularTangent("kappa <= 0 at omega2=" + std::to_string(state.omega2));
  }
  const double drive = (p.lambda + p.alpha * state.omega2) / kv;
  if (drive <= 0.0) return 0.0;
  return std::abs(p.g) / (2.0 * p.C1) * std::pow(f / p.K, p.n) * drive * dsbar1;
}

UniaxialState step(const MaterialParameters& p, UniaxialState state,
                   double sbar1_target, int substeps, KappaGrouping grouping) {
  const double s0 = state.sbar1;
  const double ds = (sbar1_target - s0) / static_cast<double>(substeps);
  for (int k = 1; k <= substeps; ++k) {
    state.omega2 += damage_increment(p, state, ds, grouping);
    state.sbar1 = (k == substeps) ? sbar1_target : s0 + static_cast<double>(k) * ds;
    // lateral_strain throws SingularTangent when D(omega2) <= 0.
    state.eps2 = lateral_strain(p, state.sbar1, state.omega2);
    state.eps1 = axial_strain(p, state.sbar1, state.eps2, state.omega2);
  }
  return state;
}

} // namespace fatigue
