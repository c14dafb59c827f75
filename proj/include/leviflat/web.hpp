#ifndef LEVIFLAT_WEB_HPP
#define LEVIFLAT_WEB_HPP

#include <optional>
#include <string>
#include <vector>

#include "leviflat/hypersurface.hpp"

namespace leviflat {

// Variable layout for the web polynomials (n = 2):
//   family polynomial F:  vars [z1, z2, t]
//   web polynomial phi:   vars [z1, z2, p]
inline constexpr int kWebVarT = 2;
inline constexpr int kWebVarP = 2;

extern const std::vector<std::string> kFamilyNames;  // {"z1","z2","t"}
extern const std::vector<std::string> kWebNames;     // {"z1","z2","p"}

// Segre-variety family along the complex line with conjugate-slot direction b:
// F(z, t) = rho_c(z, w̄ := (b1 t, b2 t)).
struct LineFamily {
  std::vector<GQ> b;  // direction, 2 entries
  Poly F;             // vars [z1, z2, t]
  int deg_t = 0;
};

// Throws PreconditionError when the origin is off Gamma or Segre degenerate,
// and rejects directions whose line lies inside Q_0 (or kills F entirely).
LineFamily build_line_family(const Hypersurface& h, std::span<const GQ> b);

struct WebEquation {
  Poly phi;  // vars [z1, z2, p], squarefree in p, no p-free factor, monic
  int d = 0;
  std::vector<std::vector<GQ>> directions;  // admissible directions used
  std::vector<std::string> cleanup_log;
  std::string str() const;
};

struct WebOpts {
  int min_directions = 3;
  int max_tries = 16;
};

// Resultant elimination R = Res_t(F, F_{z1} + p F_{z2}) per direction, content
// and multiple-factor cleanup, then the common factor across directions.
WebEquation compute_web(const Hypersurface& h, const WebOpts& opts = {}, uint64_t seed = 0);

struct IntegralCheck {
  bool ok = false;
  Poly residual;  // vars [z1, z2, p]; zero iff ok
};

// Substitutes p = -(dh/dz1)/(dh/dz2) into phi and clears denominators.
IntegralCheck verify_first_integral(const WebEquation& web, const RationalFunction& h);

// Exact leaf-constancy: numerator of (f_{z1} rho_{z2} - f_{z2} rho_{z1})
// reduces to zero modulo rho. Usable when no web is available (e.g. smooth Γ).
bool constant_on_levi_leaves(const Hypersurface& h, const RationalFunction& f);

struct FirstIntegral {
  std::optional<RationalFunction> f;
  std::string reason;  // set when unavailable
};

// deg_t F = 1 gives f = -F0/F1 (verified against the web when provided).
FirstIntegral extract_first_integral(const LineFamily& fam, const WebEquation* web);

// Labels t of the leaves through q: numeric roots of t -> F(q, t) with
// multiplicities. Throws PreconditionError when F(q, .) vanishes identically.
std::vector<std::pair<Cx, int>> leaf_through_point(const LineFamily& fam, std::span<const Cx> q);

}  // namespace leviflat

#endif
