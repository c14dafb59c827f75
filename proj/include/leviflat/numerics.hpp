#ifndef LEVIFLAT_NUMERICS_HPP
#define LEVIFLAT_NUMERICS_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace leviflat {

using Cx = std::complex<double>;

// SplitMix64; used to derive deterministic per-task streams from
// (global seed, site tag, task index).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  static Rng task(uint64_t seed, uint64_t site, uint64_t index) {
    return Rng(mix(mix(seed ^ 0x9e3779b97f4a7c15ull, site), index));
  }

  uint64_t next_u64();
  double uniform01();                       // [0,1)
  double uniform(double a, double b);
  // Uniform in the real ball of the given dimension (rejection sampling).
  std::vector<double> ball(int dim, double radius);
  std::vector<double> unit_vector(int dim);

 private:
  static uint64_t mix(uint64_t a, uint64_t b);
  uint64_t state_;
};

// In-place radix-2 FFT, n must be a power of two. inverse=true applies 1/n.
void fft(std::vector<Cx>& a, bool inverse);

// Derivative of a periodic sequence sampled at n equispaced parameter values
// on [0, 2pi): spectral differentiation. n must be a power of two.
std::vector<Cx> spectral_derivative(const std::vector<Cx>& samples);

// All complex roots of sum_k coeffs[k] x^k (Durand-Kerner). Leading zero
// coefficients are stripped; returns an empty vector for degree <= 0.
std::vector<Cx> polynomial_roots(std::vector<Cx> coeffs);

// Cluster roots within tol into (representative, multiplicity) pairs.
std::vector<std::pair<Cx, int>> cluster_roots(std::vector<Cx> roots, double tol);

// Damped Gauss-Newton for F: R^n -> R^m (m >= n not required; least squares).
// Returns true when |F| drops below tol. jac rows are gradients of F_i.
struct GaussNewtonOpts {
  int max_iter = 60;
  double tol = 1e-12;
  double min_step = 1e-14;
};
bool gauss_newton(const std::function<void(std::span<const double>, std::vector<double>&)>& f,
                  const std::function<void(std::span<const double>, std::vector<std::vector<double>>&)>& jac,
                  std::vector<double>& x, const GaussNewtonOpts& opts = {});

// One-dimensional tangent direction of the solution curve of F = 0 at x
// (kernel of the m x n Jacobian, m = n-1); unit length.
std::vector<double> jacobian_kernel_dir(const std::vector<std::vector<double>>& jac, int n);

// Largest |eigenvalue| of a Hermitian matrix given row-major (n x n).
double hermitian_max_abs_eig(const std::vector<Cx>& mat, int n);

// Orthonormal basis of the kernel of the row vector g in C^n ( (n-1) columns ).
std::vector<std::vector<Cx>> kernel_basis(std::span<const Cx> g);

// Least-squares circle fit to planar points; returns center and radius.
struct CircleFit {
  Cx center;
  double radius;
  double max_residual;
};
CircleFit fit_circle(std::span<const Cx> pts);

}  // namespace leviflat

#endif
