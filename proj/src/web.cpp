#include "leviflat/web.hpp"

#include <algorithm>
#include <cassert>

namespace leviflat {

const std::vector<std::string> kFamilyNames = {"z1", "z2", "t"};
const std::vector<std::string> kWebNames = {"z1", "z2", "p"};

std::string WebEquation::str() const { return phi.str(kWebNames); }

LineFamily build_line_family(const Hypersurface& h, std::span<const GQ> b) {
  if (h.n() != 2) throw PreconditionError("web extraction is implemented for n = 2 only");
  std::vector<GQ> origin(2, GQ(0));
  if (!h.rho().eval_exact(origin, origin).is_zero())
    throw PreconditionError("origin is not on the hypersurface");
  if (h.segre_origin_degenerate())
    throw PreconditionError("Segre degenerate origin: the line family is undefined");

  // Admissibility: the line (in w-space, direction conj b) must not sit inside
  // Q_0, i.e. s -> rho_c(s b', 0) with b' = conj(b) must not vanish identically.
  Poly q0 = h.rho_c().conj_slots_fixed(std::vector<GQ>{GQ(0), GQ(0)}).poly();
  // substituting z = (b'_1 s, b'_2 s): reuse var 0 as s
  std::vector<Poly> line_images = {Poly::variable(4, 0) * b[0].conj(),
                                   Poly::variable(4, 0) * b[1].conj(),
                                   Poly(4), Poly(4)};
  Poly q_of_s = q0.compose(4, line_images);
  if (q_of_s.is_zero())
    throw PreconditionError("inadmissible direction: the line lies inside Q_0");

  // F(z, t) = rho_c with conjugate slots (b1 t, b2 t).
  Poly t = Poly::variable(3, kWebVarT);
  std::vector<Poly> images = {Poly::variable(3, 0), Poly::variable(3, 1),
                              t * b[0], t * b[1]};
  Poly F = h.rho_c().poly().compose(3, images);
  if (F.is_zero())
    throw PreconditionError("inadmissible direction: the substituted family vanishes identically");

  LineFamily fam;
  fam.b.assign(b.begin(), b.end());
  fam.F = std::move(F);
  fam.deg_t = fam.F.degree(kWebVarT);
  return fam;
}

namespace {

// Remove the content w.r.t. p (this kills every p-free factor) and the
// multiple factors; normalize monic.
Poly clean_web_poly(Poly R, std::vector<std::string>& log) {
  if (R.is_zero()) throw NumericFailure("resultant vanished identically");
  Poly content = Poly::content_wrt(R, kWebVarP);
  if (!content.is_constant())
    log.push_back("removed p-free content " + content.str(kWebNames));
  auto sf = Poly::squarefree_wrt(R, kWebVarP);
  if (!sf.multiple_part.is_constant())
    log.push_back("removed multiple factor " + sf.multiple_part.str(kWebNames));
  Poly out = sf.squarefree.normalized_monic();
  if (out.degree(kWebVarP) < 1)
    throw NumericFailure("resultant is independent of p after cleanup");
  return out;
}

// Deterministic sequence of small Gaussian-rational directions.
std::vector<std::vector<GQ>> direction_sequence(uint64_t seed, int count) {
  std::vector<std::vector<GQ>> dirs = {
      {GQ(0), GQ(1)}, {GQ(1), GQ(1)}, {GQ(1), GQ(-1)}, {GQ(1), GQ(0)},
      {GQ(1), GQ(2)}, {GQ(2), GQ(1)}, {GQ(1), GQ::i()}, {GQ::i(), GQ(1)},
      {GQ(1) + GQ::i(), GQ(1)}, {GQ(2), GQ(-1)}, {GQ(1), GQ(-2)}, {GQ(3), GQ(1)}};
  Rng rng(Rng::task(seed, 0xd1a, 0).next_u64());
  while (static_cast<int>(dirs.size()) < count) {
    long a = static_cast<long>(rng.next_u64() % 7) - 3;
    long b = static_cast<long>(rng.next_u64() % 7) - 3;
    long c = static_cast<long>(rng.next_u64() % 3) - 1;
    if (a == 0 && b == 0) continue;
    dirs.push_back({GQ(a), GQ(b) + GQ(c) * GQ::i()});
  }
  return dirs;
}

}  // namespace

WebEquation compute_web(const Hypersurface& h, const WebOpts& opts, uint64_t seed) {
  WebEquation web;
  std::vector<Poly> candidates;
  std::vector<int> cand_deg;
  auto dirs = direction_sequence(seed, opts.max_tries);
  for (const auto& b : dirs) {
    if (static_cast<int>(candidates.size()) >= opts.min_directions) break;
    LineFamily fam;
    try {
      fam = build_line_family(h, b);
    } catch (const PreconditionError& e) {
      if (candidates.empty() && std::string(e.what()).find("Segre degenerate") != std::string::npos)
        throw;  // not direction-specific
      if (std::string(e.what()).find("origin is not on") != std::string::npos) throw;
      web.cleanup_log.push_back("direction (" + b[0].str() + ", " + b[1].str() + ") rejected: " +
                                e.what());
      continue;
    }
    // Lift into 4 variables [z1, z2, t, p] so the slope polynomial
    // F_{z1} + p F_{z2} can coexist with t before the elimination.
    std::vector<Poly> liftF = {Poly::variable(4, 0), Poly::variable(4, 1), Poly::variable(4, 2)};
    Poly F4 = fam.F.compose(4, liftF);
    Poly dz1 = fam.F.derivative(0).compose(4, liftF);
    Poly dz2 = fam.F.derivative(1).compose(4, liftF);
    Poly G4 = dz1 + Poly::variable(4, 3) * dz2;
    if (G4.is_zero()) {
      web.cleanup_log.push_back("direction (" + b[0].str() + ", " + b[1].str() +
                                ") rejected: slope polynomial vanishes");
      continue;
    }
    Poly R4;
    if (F4.degree(2) < 1 && G4.degree(2) < 1) {
      web.cleanup_log.push_back("direction (" + b[0].str() + ", " + b[1].str() +
                                ") rejected: family independent of t");
      continue;
    }
    R4 = Poly::resultant(F4, G4, 2);
    // Drop the now-unused t slot: [z1, z2, _, p] -> [z1, z2, p].
    std::vector<Poly> drop = {Poly::variable(3, 0), Poly::variable(3, 1), Poly(3),
                              Poly::variable(3, kWebVarP)};
    assert(R4.degree(2) <= 0);
    Poly R = R4.compose(3, drop);
    try {
      Poly cleaned = clean_web_poly(R, web.cleanup_log);
      candidates.push_back(cleaned);
      cand_deg.push_back(cleaned.degree(kWebVarP));
      web.directions.push_back(b);
      web.cleanup_log.push_back("direction (" + b[0].str() + ", " + b[1].str() + "): degree " +
                                std::to_string(cand_deg.back()) + " candidate " +
                                cleaned.str(kWebNames));
    } catch (const NumericFailure& e) {
      web.cleanup_log.push_back("direction (" + b[0].str() + ", " + b[1].str() + ") rejected: " +
                                e.what());
    }
  }
  if (static_cast<int>(candidates.size()) < opts.min_directions)
    throw BudgetExhausted("fewer than " + std::to_string(opts.min_directions) +
                          " admissible directions found for the web");

  // Candidates may carry direction-specific spurious factors; the web itself
  // divides every candidate, so intersect via gcd.
  Poly common = candidates[0];
  bool all_equal = true;
  for (size_t k = 1; k < candidates.size(); ++k) {
    if (candidates[k] != candidates[0]) all_equal = false;
    common = Poly::gcd(common, candidates[k]);
  }
  if (!all_equal)
    web.cleanup_log.push_back("candidates differ across directions; took the common factor " +
                              common.str(kWebNames));
  if (common.degree(kWebVarP) < 1) {
    std::string degs;
    for (int d : cand_deg) degs += (degs.empty() ? "" : ", ") + std::to_string(d);
    throw NumericFailure("web degree inconsistent across directions (degrees " + degs +
                         " share no p-dependent factor)");
  }
  web.phi = clean_web_poly(common, web.cleanup_log);
  web.d = web.phi.degree(kWebVarP);
  return web;
}

IntegralCheck verify_first_integral(const WebEquation& web, const RationalFunction& h) {
  if (h.is_constant()) throw PreconditionError("first integral candidate is constant");
  // p = -h_{z1}/h_{z2} with the derivative numerators (common den^2 cancels).
  BiPoly n1 = h.deriv_numerator(0);
  BiPoly n2 = h.deriv_numerator(1);
  if (n1.is_zero() && n2.is_zero())
    throw PreconditionError("candidate has identically zero differential");
  // phi(z, p) with p = -n1/n2, cleared by n2^d. The z-polynomials live in
  // BiPoly slots; move them into the web variable space [z1, z2, p].
  auto lift = [&](const BiPoly& b) {
    std::vector<Poly> images = {Poly::variable(3, 0), Poly::variable(3, 1), Poly(3), Poly(3)};
    return b.poly().compose(3, images);
  };
  Poly N1 = lift(n1), N2 = lift(n2);
  int d = web.d;
  std::vector<Poly> phi_coeffs = web.phi.coeffs_wrt(kWebVarP);
  Poly acc(3);
  for (int j = 0; j <= d; ++j) {
    if (static_cast<int>(phi_coeffs.size()) <= j || phi_coeffs[j].is_zero()) continue;
    Poly term = phi_coeffs[j] * (-N1).pow(static_cast<unsigned>(j)) *
                N2.pow(static_cast<unsigned>(d - j));
    acc += term;
  }
  IntegralCheck out;
  out.residual = acc;
  out.ok = acc.is_zero();
  return out;
}

bool constant_on_levi_leaves(const Hypersurface& h, const RationalFunction& f) {
  if (h.n() != 2) throw PreconditionError("leaf-constancy check is implemented for n = 2");
  BiPoly n1 = f.deriv_numerator(0);
  BiPoly n2 = f.deriv_numerator(1);
  BiPoly t = n1 * h.rho_z(1) - n2 * h.rho_z(0);
  if (t.is_zero()) return true;
  auto [q, r] = t.poly().divrem(h.rho().poly());
  return r.is_zero();
}

FirstIntegral extract_first_integral(const LineFamily& fam, const WebEquation* web) {
  FirstIntegral out;
  if (fam.deg_t != 1) {
    out.reason = "deg_t F = " + std::to_string(fam.deg_t) +
                 " > 1; provide a candidate integral for verification";
    return out;
  }
  Poly F0 = fam.F.coeff_wrt(kWebVarT, 0);
  Poly F1 = fam.F.coeff_wrt(kWebVarT, 1);
  if (F1.is_zero()) throw PreconditionError("degenerate family: leading t-coefficient vanishes");
  // -F0/F1 as a rational function of z (t slot is gone).
  auto to_bipoly = [&](const Poly& p) {
    std::vector<Poly> images = {Poly::variable(4, 0), Poly::variable(4, 1), Poly(4)};
    return BiPoly(2, p.compose(4, images));
  };
  RationalFunction f(to_bipoly(-F0), to_bipoly(F1));
  if (web) {
    IntegralCheck chk = verify_first_integral(*web, f);
    if (!chk.ok) {
      out.reason = "extracted candidate failed verification against the web";
      return out;
    }
  }
  out.f = std::move(f);
  return out;
}

std::vector<std::pair<Cx, int>> leaf_through_point(const LineFamily& fam,
                                                   std::span<const Cx> q) {
  std::vector<Poly> tcoeffs = fam.F.coeffs_wrt(kWebVarT);
  std::vector<Cx> coeffs;
  CxVec point = {q[0], q[1], Cx(0, 0)};
  double maxc = 0;
  for (const Poly& c : tcoeffs) {
    coeffs.push_back(c.eval(point));
    maxc = std::max(maxc, std::abs(coeffs.back()));
  }
  if (maxc < 1e-14)
    throw PreconditionError("point lies on every leaf of the family (F(q, .) == 0)");
  std::vector<Cx> roots = polynomial_roots(coeffs);
  double spread = 1.0;
  for (const Cx& r : roots) spread = std::max(spread, std::abs(r));
  return cluster_roots(std::move(roots), 1e-6 * spread);
}

}  // namespace leviflat
