#include "leviflat/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace leviflat {

uint64_t Rng::mix(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform01(); }

std::vector<double> Rng::ball(int dim, double radius) {
  while (true) {
    std::vector<double> x(dim);
    double s = 0;
    for (int k = 0; k < dim; ++k) {
      x[k] = uniform(-1.0, 1.0);
      s += x[k] * x[k];
    }
    if (s <= 1.0) {
      for (double& v : x) v *= radius;
      return x;
    }
  }
}

std::vector<double> Rng::unit_vector(int dim) {
  while (true) {
    std::vector<double> x = ball(dim, 1.0);
    double s = 0;
    for (double v : x) s += v * v;
    if (s > 1e-4) {
      double inv = 1.0 / std::sqrt(s);
      for (double& v : x) v *= inv;
      return x;
    }
  }
}

void fft(std::vector<Cx>& a, bool inverse) {
  size_t n = a.size();
  assert((n & (n - 1)) == 0);
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = 2 * std::numbers::pi / static_cast<double>(len) * (inverse ? -1 : 1);
    Cx wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      Cx w(1, 0);
      for (size_t k = 0; k < len / 2; ++k) {
        Cx u = a[i + k], v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (Cx& x : a) x /= static_cast<double>(n);
}

std::vector<Cx> spectral_derivative(const std::vector<Cx>& samples) {
  size_t n = samples.size();
  std::vector<Cx> a = samples;
  fft(a, false);
  for (size_t k = 0; k < n; ++k) {
    long m = static_cast<long>(k);
    if (k > n / 2) m = static_cast<long>(k) - static_cast<long>(n);
    if (k == n / 2) m = 0;  // drop the Nyquist mode's derivative
    a[k] *= Cx(0, static_cast<double>(m));
  }
  fft(a, true);
  return a;
}

std::vector<Cx> polynomial_roots(std::vector<Cx> coeffs) {
  while (!coeffs.empty() && std::abs(coeffs.back()) < 1e-300) coeffs.pop_back();
  if (coeffs.size() <= 1) return {};
  size_t deg = coeffs.size() - 1;
  Cx lead = coeffs.back();
  for (Cx& c : coeffs) c /= lead;

  // Cauchy bound for the initial circle.
  double bound = 0;
  for (size_t k = 0; k < deg; ++k) bound = std::max(bound, std::abs(coeffs[k]));
  double r = 1.0 + bound;

  std::vector<Cx> x(deg);
  for (size_t k = 0; k < deg; ++k) {
    double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(deg) + 0.37;
    x[k] = 0.5 * r * Cx(std::cos(ang), std::sin(ang));
  }
  auto eval = [&](Cx v) {
    Cx s(0, 0);
    for (size_t k = coeffs.size(); k-- > 0;) s = s * v + coeffs[k];
    return s;
  };
  for (int iter = 0; iter < 400; ++iter) {
    double move = 0;
    for (size_t k = 0; k < deg; ++k) {
      Cx num = eval(x[k]);
      Cx den(1, 0);
      for (size_t j = 0; j < deg; ++j)
        if (j != k) den *= (x[k] - x[j]);
      if (std::abs(den) < 1e-280) {
        x[k] += Cx(1e-8, 1e-8);
        continue;
      }
      Cx delta = num / den;
      x[k] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-14 * (1.0 + r)) break;
  }
  return x;
}

std::vector<std::pair<Cx, int>> cluster_roots(std::vector<Cx> roots, double tol) {
  std::vector<std::pair<Cx, int>> out;
  std::vector<bool> used(roots.size(), false);
  for (size_t k = 0; k < roots.size(); ++k) {
    if (used[k]) continue;
    Cx sum = roots[k];
    int cnt = 1;
    used[k] = true;
    for (size_t j = k + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[k]) < tol) {
        used[j] = true;
        sum += roots[j];
        ++cnt;
      }
    }
    out.emplace_back(sum / static_cast<double>(cnt), cnt);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  return out;
}

bool gauss_newton(const std::function<void(std::span<const double>, std::vector<double>&)>& f,
                  const std::function<void(std::span<const double>, std::vector<std::vector<double>>&)>& jac,
                  std::vector<double>& x, const GaussNewtonOpts& opts) {
  const int n = static_cast<int>(x.size());
  std::vector<double> fx;
  std::vector<std::vector<double>> J;
  f(x, fx);
  auto norm2 = [](const std::vector<double>& v) {
    double s = 0;
    for (double a : v) s += a * a;
    return s;
  };
  double fn = norm2(fx);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (std::sqrt(fn) < opts.tol) return true;
    jac(x, J);
    const int m = static_cast<int>(J.size());
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
      b(i) = -fx[i];
      for (int j = 0; j < n; ++j) A(i, j) = J[i][j];
    }
    Eigen::VectorXd step = A.colPivHouseholderQr().solve(b);
    double lam = 1.0;
    bool improved = false;
    for (int back = 0; back < 30; ++back) {
      std::vector<double> xt(x);
      for (int j = 0; j < n; ++j) xt[j] += lam * step(j);
      std::vector<double> ft;
      f(xt, ft);
      double fnt = norm2(ft);
      if (fnt < fn) {
        x = std::move(xt);
        fx = std::move(ft);
        fn = fnt;
        improved = true;
        break;
      }
      lam *= 0.5;
      if (lam * step.norm() < opts.min_step) break;
    }
    if (!improved) break;
  }
  return std::sqrt(fn) < opts.tol;
}

std::vector<double> jacobian_kernel_dir(const std::vector<std::vector<double>>& jac, int n) {
  const int m = static_cast<int>(jac.size());
  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = jac[i][j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(n - 1);
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = v(j);
  return out;
}

double hermitian_max_abs_eig(const std::vector<Cx>& mat, int n) {
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = mat[static_cast<size_t>(i) * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  double m = 0;
  for (int k = 0; k < n; ++k) m = std::max(m, std::abs(es.eigenvalues()(k)));
  return m;
}

std::vector<std::vector<Cx>> kernel_basis(std::span<const Cx> g) {
  const int n = static_cast<int>(g.size());
  Eigen::MatrixXcd A(1, n);
  for (int j = 0; j < n; ++j) A(0, j) = g[j];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  std::vector<std::vector<Cx>> basis;
  for (int c = 1; c < n; ++c) {
    std::vector<Cx> v(n);
    for (int j = 0; j < n; ++j) v[j] = svd.matrixV()(j, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

CircleFit fit_circle(std::span<const Cx> pts) {
  if (pts.size() < 3) throw std::invalid_argument("fit_circle needs >= 3 points");
  // x^2 + y^2 + D x + E y + F = 0, linear least squares in (D, E, F).
  Eigen::MatrixXd A(pts.size(), 3);
  Eigen::VectorXd b(pts.size());
  for (size_t k = 0; k < pts.size(); ++k) {
    double x = pts[k].real(), y = pts[k].imag();
    A(static_cast<Eigen::Index>(k), 0) = x;
    A(static_cast<Eigen::Index>(k), 1) = y;
    A(static_cast<Eigen::Index>(k), 2) = 1.0;
    b(static_cast<Eigen::Index>(k)) = -(x * x + y * y);
  }
  Eigen::Vector3d sol = A.colPivHouseholderQr().solve(b);
  CircleFit fit;
  fit.center = Cx(-sol(0) / 2.0, -sol(1) / 2.0);
  double r2 = std::norm(fit.center) - sol(2);
  fit.radius = r2 > 0 ? std::sqrt(r2) : 0.0;
  fit.max_residual = 0;
  for (const Cx& p : pts)
    fit.max_residual = std::max(fit.max_residual, std::abs(std::abs(p - fit.center) - fit.radius));
  return fit;
}

}  // namespace leviflat
