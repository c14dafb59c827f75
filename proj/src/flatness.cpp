#include "leviflat/flatness.hpp"

#include <algorithm>
#include <cmath>

namespace leviflat {

BiPoly levi_determinant(const Hypersurface& h) {
  if (h.n() != 2)
    throw PreconditionError("levi_determinant is defined for n = 2 only");
  const BiPoly& r11 = h.rho_mixed(0, 0);
  const BiPoly& r12 = h.rho_mixed(0, 1);
  const BiPoly& r21 = h.rho_mixed(1, 0);
  const BiPoly& r22 = h.rho_mixed(1, 1);
  const BiPoly& z1 = h.rho_z(0);
  const BiPoly& z2 = h.rho_z(1);
  const BiPoly& b1 = h.rho_zbar(0);
  const BiPoly& b2 = h.rho_zbar(1);
  return r11 * z2 * b2 - r12 * z2 * b1 - r21 * z1 * b2 + r22 * z1 * b1;
}

LeviCertificate is_levi_flat(const Hypersurface& h, const FlatnessOpts& opts, uint64_t seed) {
  LeviCertificate cert;
  if (h.n() == 2) {
    BiPoly lambda = levi_determinant(h);
    if (lambda.is_zero()) {
      cert.method = "symbolic";
      cert.verdict = true;
      cert.quotient = BiPoly::zero(2);
      return cert;
    }
    auto q = lambda.poly().divide_exact(h.rho().poly());
    if (q) {
      cert.method = "symbolic";
      cert.verdict = true;
      cert.quotient = BiPoly(2, std::move(*q));
      return cert;
    }
    cert.note = "Levi determinant not divisible by rho; deciding numerically";
  }

  // Numeric path: restrict the mixed Hessian to the holomorphic tangent space
  // at regular samples of Gamma.
  cert.method = "numeric";
  const int n = h.n();
  SampleOpts sopts;
  sopts.want = opts.samples;
  sopts.site = 0xf1a7;
  std::vector<GammaSample> samples = sample_gamma(h, opts.sample_radius, seed, sopts);
  double gscale = h.gradient_scale(opts.sample_radius);
  double max_eig = 0;
  int used = 0;
  for (const GammaSample& s : samples) {
    if (s.grad_norm < opts.regular_grad_floor * gscale) continue;
    CxVec g = h.gradient(s.z);
    auto basis = kernel_basis(g);
    const int m = n - 1;
    std::vector<Cx> hess(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        hess[static_cast<size_t>(j) * n + k] = h.rho_mixed(j, k).eval(s.z, s.z);
    // B = V^H H V with the orthonormal kernel columns.
    std::vector<Cx> B(static_cast<size_t>(m) * m, Cx(0, 0));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        Cx acc(0, 0);
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            acc += std::conj(basis[a][j]) * hess[static_cast<size_t>(j) * n + k] * basis[b][k];
        B[static_cast<size_t>(a) * m + b] = acc;
      }
    max_eig = std::max(max_eig, hermitian_max_abs_eig(B, m));
    ++used;
  }
  if (used < opts.min_samples)
    throw NumericFailure("too few regular Gamma samples for the Levi-form test (" +
                         std::to_string(used) + ")");
  cert.samples = used;
  cert.max_eig = max_eig;
  double hscale = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) hscale = std::max(hscale, h.rho_mixed(j, k).scale(opts.sample_radius));
  cert.verdict = max_eig < opts.tol_flat * std::max(1.0, hscale);
  return cert;
}

}  // namespace leviflat
