#ifndef LEVIFLAT_FLATNESS_HPP
#define LEVIFLAT_FLATNESS_HPP

#include <optional>
#include <string>

#include "leviflat/hypersurface.hpp"

namespace leviflat {

struct LeviCertificate {
  std::string method;              // "symbolic" or "numeric"
  bool verdict = false;
  std::optional<BiPoly> quotient;  // symbolic: Lambda = quotient * rho, exactly
  double max_eig = 0;              // numeric: max |Levi eigenvalue| over samples
  int samples = 0;
  std::string note;
};

// Levi form of rho evaluated on the complex tangent vector (rho_{z2}, -rho_{z1});
// n = 2 only. Vanishing of Lambda on Gamma* is equivalent to Levi-flatness.
BiPoly levi_determinant(const Hypersurface& h);

struct FlatnessOpts {
  double tol_flat = 1e-8;
  int samples = 200;
  int min_samples = 20;
  double sample_radius = 1.0;
  double regular_grad_floor = 1e-6;
};

// n = 2: exact divisibility Lambda = q * rho decides symbolically; a nonzero
// remainder falls back to numeric Levi-form sampling (rho may not generate the
// full real ideal of Gamma). n > 2: numeric only.
LeviCertificate is_levi_flat(const Hypersurface& h, const FlatnessOpts& opts, uint64_t seed);

}  // namespace leviflat

#endif
