#include "leviflat/hypersurface.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace leviflat {

namespace {

// Positive integer lcm of all coefficient denominators.
mpz_class denominator_lcm(const Poly& p) {
  mpz_class l(1);
  for (const auto& [e, c] : p.terms()) {
    mpz_class dr = c.re().get_den(), di = c.im().get_den();
    mpz_class g;
    mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), dr.get_mpz_t());
    l = g;
    mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), di.get_mpz_t());
    l = g;
  }
  return l;
}

// gcd of all numerators of an integer-coefficient polynomial.
mpz_class numerator_gcd(const Poly& p) {
  mpz_class g(0);
  for (const auto& [e, c] : p.terms()) {
    mpz_class nr = c.re().get_num(), ni = c.im().get_num();
    mpz_class t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), nr.get_mpz_t());
    g = t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), ni.get_mpz_t());
    g = t;
  }
  return g == 0 ? mpz_class(1) : g;
}

}  // namespace

Hypersurface::Hypersurface(BiPoly rho, NormalizationLog log)
    : rho_(std::move(rho)), log_(std::move(log)) {
  int n = rho_.n();
  dz_.reserve(n);
  dzbar_.reserve(n);
  mixed_.reserve(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) dz_.push_back(rho_.dz(j));
  for (int j = 0; j < n; ++j) dzbar_.push_back(rho_.dzbar(j));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) mixed_.push_back(dz_[j].dzbar(k));
}

Hypersurface Hypersurface::from_bipoly(BiPoly raw) {
  if (raw.is_zero()) throw std::domain_error("defining function is identically zero");
  NormalizationLog log;
  int n = raw.n();

  BiPoly p = raw;
  BiPoly t = p.hermitian_transpose();
  if (t != p) {
    // Try the unimodular repair: P† = λ P with |λ| = 1 forces cP Hermitian
    // for c = 1 + λ (or c = i when λ = -1).
    const GQ& c_lead = p.poly().leading_coeff();
    const GQ& t_lead = t.poly().coeff(p.poly().leading_exp());
    if (t_lead.is_zero())
      throw NotHermitianError("defining function is not real-valued");
    GQ lambda = t_lead / c_lead;
    if (lambda.norm2() != 1 || t != p * lambda)
      throw NotHermitianError("defining function is not real-valued");
    GQ c = (lambda == GQ(-1)) ? GQ::i() : GQ(1) + lambda;
    p = p * c;
    if (!p.is_hermitian())
      throw NotHermitianError("defining function is not real-valued");
    log.repaired = true;
    log.repair_factor = c.str();
    log.notes.push_back("input was real-valued only up to the unimodular factor " +
                        lambda.str() + "; multiplied by " + c.str());
  }

  // Integer normalization: clear denominators, divide by the content. Both
  // factors are positive rationals, so Hermitian-ness is preserved.
  mpz_class l = denominator_lcm(p.poly());
  Poly q = p.poly();
  if (l != 1) q *= GQ(mpq_class(l));
  mpz_class g = numerator_gcd(q);
  if (g != 1) q *= GQ(mpq_class(mpz_class(1), g));
  mpq_class scale = mpq_class(l) / mpq_class(g);

  // Canonical sign: leading coefficient gets positive real (or positive
  // imaginary when purely imaginary) part.
  BiPoly out(n, std::move(q));
  const GQ& lead = out.poly().leading_coeff();
  if (lead.re() < 0 || (lead.re() == 0 && lead.im() < 0)) {
    out = -out;
    scale = -scale;
  }
  if (scale != 1) log.scale_factor = scale.get_str();
  return Hypersurface(std::move(out), std::move(log));
}

double Hypersurface::rho_at(std::span<const Cx> z) const {
  return rho_.eval_diag(z).real();
}

double Hypersurface::residual(std::span<const Cx> z) const {
  double r = 0;
  for (const Cx& v : z) r = std::max(r, std::abs(v));
  return std::abs(rho_.eval_diag(z)) / rho_.scale(r);
}

CxVec Hypersurface::gradient(std::span<const Cx> z) const {
  CxVec g(n());
  for (int j = 0; j < n(); ++j) g[j] = dz_[j].eval(z, z);
  return g;
}

double Hypersurface::gradient_scale(double r) const {
  double s = 0;
  for (int j = 0; j < n(); ++j) s = std::max(s, dz_[j].scale(r));
  return std::max(s, 1e-300);
}

Hypersurface Hypersurface::translated(std::span<const GQ> p) const {
  BiPoly moved = rho_.translate(p);
  NormalizationLog log = log_;
  log.notes.push_back("translated so that the reference point is the origin");
  return Hypersurface(std::move(moved), std::move(log));
}

std::string SegreVariety::str() const {
  if (exact) return exact->str();
  std::string s = "numeric[";
  bool first = true;
  for (const auto& [e, c] : numeric_coeffs) {
    if (!first) s += ", ";
    first = false;
    s += "(";
    for (size_t k = 0; k < e.size(); ++k) s += (k ? "," : "") + std::to_string(e[k]);
    s += "): " + std::to_string(c.real()) + (c.imag() < 0 ? "-" : "+") +
         std::to_string(std::abs(c.imag())) + "i";
  }
  return s + "]";
}

SegreVariety Hypersurface::segre_exact(std::span<const GQ> w) const {
  SegreVariety s;
  s.center.resize(n());
  for (int j = 0; j < n(); ++j) s.center[j] = w[j].to_complex();
  BiPoly fixed = rho_.conj_slots_fixed(w);
  s.degenerate = fixed.is_zero();
  s.exact = std::move(fixed);
  s.numeric = false;
  return s;
}

SegreVariety Hypersurface::segre_numeric(std::span<const Cx> w, double rel_tol) const {
  SegreVariety s;
  s.center.assign(w.begin(), w.end());
  s.numeric = true;
  std::map<ExpVec, Cx, GrlexLess> acc;
  int nn = n();
  for (const auto& [e, c] : rho_.poly().terms()) {
    Cx val = c.to_complex();
    for (int j = 0; j < nn; ++j) {
      Cx cw = std::conj(w[j]);
      for (uint32_t k = 0; k < e[nn + j]; ++k) val *= cw;
    }
    ExpVec ze(e.begin(), e.begin() + nn);
    ze.resize(2 * nn, 0);
    acc[ze] += val;
  }
  double maxc = 0;
  for (const auto& [e, c] : acc) maxc = std::max(maxc, std::abs(c));
  double wr = 0;
  for (const Cx& v : w) wr = std::max(wr, std::abs(v));
  double floor = rel_tol * rho_.scale(wr);
  s.degenerate = maxc < floor;
  for (const auto& [e, c] : acc)
    if (std::abs(c) >= floor) s.numeric_coeffs.emplace_back(e, c);
  return s;
}

bool Hypersurface::segre_origin_degenerate() const {
  // Every monomial must contain a conjugate slot with positive exponent.
  for (const auto& [e, c] : rho_.poly().terms()) {
    bool has_conj = false;
    for (int j = 0; j < n(); ++j)
      if (e[n() + j] > 0) {
        has_conj = true;
        break;
      }
    if (!has_conj) return false;
  }
  return true;
}

bool Hypersurface::segre_symmetry_exact(std::span<const GQ> z, std::span<const GQ> w) const {
  GQ zw = rho_.eval_exact(z, w);        // rho_c(z, conj w)
  GQ wz = rho_.eval_exact(w, z);        // rho_c(w, conj z)
  return wz == zw.conj();
}

std::pair<double, double> Hypersurface::segre_symmetry_values(std::span<const Cx> z,
                                                              std::span<const Cx> w) const {
  return {std::abs(rho_.eval(z, w)), std::abs(rho_.eval(w, z))};
}

// ---- sampling --------------------------------------------------------------

namespace {

CxVec reals_to_cx(std::span<const double> x, int n) {
  CxVec z(n);
  for (int j = 0; j < n; ++j) z[j] = Cx(x[2 * j], x[2 * j + 1]);
  return z;
}

double grad_norm_of(const Hypersurface& h, std::span<const Cx> z) {
  double s = 0;
  for (const Cx& g : h.gradient(z)) s += std::norm(g);
  return std::sqrt(s);
}

}  // namespace

std::vector<GammaSample> sample_gamma(const Hypersurface& h, double radius, uint64_t seed,
                                      const SampleOpts& opts) {
  const int n = h.n(), dim = 2 * n;
  std::vector<GammaSample> out;
  int attempts = 0;
  uint64_t task = 0;
  while (static_cast<int>(out.size()) < opts.want && attempts < opts.max_attempts) {
    Rng rng = Rng::task(seed, opts.site, task++);
    ++attempts;
    std::vector<double> p0 = rng.ball(dim, radius);
    std::vector<double> u = rng.unit_vector(dim);
    auto phi = [&](double s) {
      std::vector<double> x(dim);
      for (int k = 0; k < dim; ++k) x[k] = p0[k] + s * u[k];
      CxVec z = reals_to_cx(x, n);
      return h.rho_at(z);
    };
    const int steps = 64;
    double lo = -2 * radius, hi = 2 * radius, prev = phi(lo);
    double root = NAN;
    for (int k = 1; k <= steps; ++k) {
      double s = lo + (hi - lo) * k / steps;
      double cur = phi(s);
      if (prev == 0.0) {
        root = lo + (hi - lo) * (k - 1) / steps;
        break;
      }
      if (prev * cur < 0) {
        double a = lo + (hi - lo) * (k - 1) / steps, b = s;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (a + b);
          double v = phi(mid);
          if (v == 0.0) {
            a = b = mid;
            break;
          }
          if (v * prev < 0)
            b = mid;
          else
            a = mid;
        }
        root = 0.5 * (a + b);
        break;
      }
      prev = cur;
    }
    if (std::isnan(root)) continue;
    std::vector<double> x(dim);
    for (int k = 0; k < dim; ++k) x[k] = p0[k] + root * u[k];
    CxVec z = reals_to_cx(x, n);
    double r = 0;
    for (const Cx& v : z) r = std::max(r, std::abs(v));
    double zn = 0;
    for (const Cx& v : z) zn += std::norm(v);
    if (std::sqrt(zn) > radius) continue;
    GammaSample s;
    s.z = std::move(z);
    s.residual = h.residual(s.z);
    if (s.residual > opts.on_gamma_tol) continue;
    s.grad_norm = grad_norm_of(h, s.z);
    out.push_back(std::move(s));
  }
  return out;
}

// ---- singular locus ---------------------------------------------------------

namespace {

// Real system {rho = 0, Re/Im of each Wirtinger partial = 0}.
void singular_system(const Hypersurface& h, std::span<const double> x, std::vector<double>& f) {
  const int n = h.n();
  CxVec z = reals_to_cx(x, n);
  f.assign(1 + 2 * n, 0.0);
  f[0] = h.rho_at(z);
  for (int j = 0; j < n; ++j) {
    Cx g = h.rho_z(j).eval(z, z);
    f[1 + 2 * j] = g.real();
    f[2 + 2 * j] = g.imag();
  }
}

// Real Jacobian via Wirtinger calculus. For a function u with holomorphic
// derivative u_z and antiholomorphic u_zbar (evaluated on the diagonal):
//   du/dx_j = u_{z_j} + u_{zbar_j},  du/dy_j = i (u_{z_j} - u_{zbar_j}).
void singular_jacobian(const Hypersurface& h, std::span<const double> x,
                       std::vector<std::vector<double>>& J) {
  const int n = h.n(), dim = 2 * n;
  CxVec z = reals_to_cx(x, n);
  J.assign(1 + 2 * n, std::vector<double>(dim, 0.0));
  for (int j = 0; j < n; ++j) {
    Cx gz = h.rho_z(j).eval(z, z);
    Cx gzb = h.rho_zbar(j).eval(z, z);
    Cx dx = gz + gzb, dy = Cx(0, 1) * (gz - gzb);
    J[0][2 * j] = dx.real();
    J[0][2 * j + 1] = dy.real();
  }
  for (int i = 0; i < n; ++i) {
    // row for rho_{z_i}: derivatives of a complex function
    for (int j = 0; j < n; ++j) {
      Cx uz = h.rho_mixed(i, j).eval(z, z);        // d/dzbar_j of rho_{z_i} ... careful below
      Cx uzz = h.rho_z(i).dz(j).eval(z, z);        // d/dz_j of rho_{z_i}
      Cx dx = uzz + uz, dy = Cx(0, 1) * (uzz - uz);
      J[1 + 2 * i][2 * j] = dx.real();
      J[1 + 2 * i][2 * j + 1] = dy.real();
      J[2 + 2 * i][2 * j] = dx.imag();
      J[2 + 2 * i][2 * j + 1] = dy.imag();
    }
  }
}

}  // namespace

SingularLocusReport singular_locus(const Hypersurface& h, const SingularLocusOpts& opts,
                                   uint64_t seed) {
  const int n = h.n(), dim = 2 * n;
  SingularLocusReport rep;
  rep.defining_system.push_back(h.rho().str());
  for (int j = 0; j < n; ++j) rep.defining_system.push_back(h.rho_z(j).str());

  auto f = [&](std::span<const double> x, std::vector<double>& out) { singular_system(h, x, out); };
  auto jac = [&](std::span<const double> x, std::vector<std::vector<double>>& J) {
    singular_jacobian(h, x, J);
  };

  double gscale = h.gradient_scale(opts.box_radius);
  double rscale = h.rho().scale(opts.box_radius);

  for (int s = 0; s < opts.starts; ++s) {
    Rng rng = Rng::task(seed, 0x51a6, static_cast<uint64_t>(s));
    std::vector<double> x = rng.ball(dim, opts.box_radius);
    GaussNewtonOpts gn;
    gn.max_iter = 120;
    gn.tol = 1e-13 * std::max(rscale, gscale);
    if (!gauss_newton(f, jac, x, gn)) continue;
    CxVec z = reals_to_cx(x, n);
    double zr = 0;
    for (const Cx& v : z) zr = std::max(zr, std::abs(v));
    if (zr > opts.box_radius) continue;
    double rres = std::abs(h.rho_at(z)) / rscale;
    double gres = grad_norm_of(h, z) / gscale;
    if (rres > opts.rho_tol || gres > opts.grad_tol) continue;
    bool dup = false;
    for (const auto& prev : rep.samples) {
      double d = 0;
      for (int j = 0; j < n; ++j) d += std::norm(prev.z[j] - z[j]);
      if (std::sqrt(d) < opts.dedupe_dist) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    SingularSample smp;
    smp.z = z;
    smp.rho_residual = rres;
    smp.grad_residual = gres;

    // Stick test: look for nearby regular points of Gamma. Project random
    // offsets back to {rho = 0} with a 1-equation Gauss-Newton and count the
    // hits that are regular (gradient bounded away from zero) and close.
    int found = 0;
    for (int probe = 0; probe < opts.stick_probes; ++probe) {
      Rng prng = Rng::task(seed, 0x571c, static_cast<uint64_t>(s) * 1000 + probe);
      std::vector<double> off = prng.ball(dim, opts.r_stick);
      std::vector<double> y(dim);
      for (int k = 0; k < dim; ++k) y[k] = x[k] + off[k];
      auto f1 = [&](std::span<const double> xx, std::vector<double>& out) {
        CxVec zz = reals_to_cx(xx, n);
        out.assign(1, h.rho_at(zz));
      };
      auto j1 = [&](std::span<const double> xx, std::vector<std::vector<double>>& J) {
        CxVec zz = reals_to_cx(xx, n);
        J.assign(1, std::vector<double>(dim, 0.0));
        for (int j = 0; j < n; ++j) {
          Cx gz = h.rho_z(j).eval(zz, zz);
          Cx gzb = h.rho_zbar(j).eval(zz, zz);
          Cx dx = gz + gzb, dy = Cx(0, 1) * (gz - gzb);
          J[0][2 * j] = dx.real();
          J[0][2 * j + 1] = dy.real();
        }
      };
      GaussNewtonOpts g1;
      g1.max_iter = 60;
      g1.tol = 1e-11 * rscale;
      if (!gauss_newton(f1, j1, y, g1)) continue;
      CxVec zz = reals_to_cx(y, n);
      double d = 0;
      for (int j = 0; j < n; ++j) d += std::norm(zz[j] - z[j]);
      if (std::sqrt(d) > opts.r_stick) continue;
      if (std::sqrt(d) < 1e-9) continue;  // converged back onto the singular sample
      if (grad_norm_of(h, zz) / gscale > opts.regular_grad_floor) ++found;
    }
    smp.nearby_regular = found;
    smp.stick_candidate = (found == 0);
    rep.samples.push_back(std::move(smp));
  }
  return rep;
}

// ---- classification ---------------------------------------------------------

SingularityReport classify_point(const Hypersurface& h, std::span<const GQ> p, bool levi_flat,
                                 const std::string& levi_method,
                                 std::optional<int> web_degree, uint64_t seed) {
  SingularityReport rep;
  rep.levi_flat = levi_flat;
  rep.levi_method = levi_method;
  const int n = h.n();

  std::vector<GQ> pv(p.begin(), p.end());
  GQ rho_p = h.rho().eval_exact(pv, pv);
  if (!rho_p.is_zero()) {
    double rel = rho_p.abs_approx();
    double r = 0;
    for (const GQ& c : pv) r = std::max(r, c.abs_approx());
    if (rel / h.rho().scale(r) > 1e-10)
      throw PreconditionError("point is not on the hypersurface");
  }
  if (!levi_flat) {
    rep.cls = PointClass::NotLeviFlat;
    return rep;
  }

  // Regularity: exact Wirtinger gradient at p plus a numeric graph probe.
  CxVec pz(n);
  for (int j = 0; j < n; ++j) pz[j] = p[j].to_complex();
  bool grad_nonzero = false;
  for (int j = 0; j < n; ++j) {
    GQ g = h.rho_z(j).eval_exact(pv, pv);
    if (!g.is_zero()) grad_nonzero = true;
  }
  if (grad_nonzero) {
    // Graph test: small tangential offsets must project back to Gamma with a
    // correction of second order.
    CxVec g = h.gradient(pz);
    double gn = 0;
    for (const Cx& v : g) gn += std::norm(v);
    gn = std::sqrt(gn);
    bool graph_ok = true;
    const int dim = 2 * n;
    std::vector<double> gr(dim);
    for (int j = 0; j < n; ++j) {
      gr[2 * j] = 2 * g[j].real();
      gr[2 * j + 1] = -2 * g[j].imag();
    }
    for (int probe = 0; probe < 6 && graph_ok; ++probe) {
      Rng rng = Rng::task(seed, 0x96af, probe);
      std::vector<double> v = rng.unit_vector(dim);
      double dot = 0;
      for (int k = 0; k < dim; ++k) dot += v[k] * gr[k];
      double gg = 0;
      for (int k = 0; k < dim; ++k) gg += gr[k] * gr[k];
      for (int k = 0; k < dim; ++k) v[k] -= dot / gg * gr[k];
      double h0 = 1e-3;
      std::vector<double> x(dim);
      for (int j = 0; j < n; ++j) {
        x[2 * j] = pz[j].real() + h0 * v[2 * j];
        x[2 * j + 1] = pz[j].imag() + h0 * v[2 * j + 1];
      }
      // Newton along the gradient direction.
      for (int it = 0; it < 40; ++it) {
        CxVec z = reals_to_cx(x, n);
        double val = h.rho_at(z);
        CxVec gz = h.gradient(z);
        std::vector<double> grad(dim);
        double norm2 = 0;
        for (int j = 0; j < n; ++j) {
          grad[2 * j] = 2 * gz[j].real();
          grad[2 * j + 1] = -2 * gz[j].imag();
          norm2 += grad[2 * j] * grad[2 * j] + grad[2 * j + 1] * grad[2 * j + 1];
        }
        if (norm2 < 1e-30) {
          graph_ok = false;
          break;
        }
        for (int k = 0; k < dim; ++k) x[k] -= val / norm2 * grad[k];
        if (std::abs(val) < 1e-14 * h.rho().scale(1.0)) break;
      }
      CxVec z = reals_to_cx(x, n);
      double moved = 0;
      for (int j = 0; j < n; ++j) moved += std::norm(z[j] - pz[j]);
      moved = std::sqrt(moved);
      if (h.residual(z) > 1e-10 || moved > 10 * h0) graph_ok = false;
    }
    if (graph_ok) {
      rep.cls = PointClass::Regular;
      return rep;
    }
    rep.notes.push_back("gradient nonzero but the local graph probe failed; continuing as singular");
  }

  Hypersurface at_origin = h.translated(pv);
  if (at_origin.segre_origin_degenerate()) {
    rep.cls = PointClass::SegreDegenerate;
    return rep;
  }
  rep.cls = PointClass::Nondegenerate;
  if (n == 2) {
    rep.d = web_degree;
    if (!web_degree) rep.notes.push_back("web degree not supplied");
  } else {
    rep.notes.push_back("branch degree is computed only in dimension 2");
  }
  return rep;
}

}  // namespace leviflat
