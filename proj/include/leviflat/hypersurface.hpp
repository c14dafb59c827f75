#ifndef LEVIFLAT_HYPERSURFACE_HPP
#define LEVIFLAT_HYPERSURFACE_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "leviflat/bipoly.hpp"
#include "leviflat/numerics.hpp"

namespace leviflat {

struct NotHermitianError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NormalizationLog {
  bool repaired = false;        // unimodular Hermitian repair applied
  std::string repair_factor;    // the multiplier, printed
  std::string scale_factor;     // positive rational normalization, printed
  std::vector<std::string> notes;
};

// Segre variety Q_w = { z : rho_c(z, conj w) = 0 } of a fixed center w.
struct SegreVariety {
  CxVec center;
  std::optional<BiPoly> exact;     // present on the exact path (z slots only)
  std::vector<std::pair<ExpVec, Cx>> numeric_coeffs;  // numeric path
  bool degenerate = false;         // identically zero polynomial
  bool numeric = false;            // degeneracy decided with tolerances
  std::string str() const;
};

// Gamma = rho^{-1}(0) for an exact Hermitian polynomial rho.
class Hypersurface {
 public:
  // Validates/normalizes: clears denominators by the positive integer lcm,
  // divides by the integer content, repairs a global unimodular factor
  // (logged), fixes the sign of the leading coefficient. Throws
  // NotHermitianError when the input is not real-valued up to a unimodular
  // constant, std::domain_error for the zero polynomial.
  static Hypersurface from_bipoly(BiPoly raw);

  int n() const { return rho_.n(); }
  const BiPoly& rho() const { return rho_; }
  // Complexification rho(z, conj w): identical coefficient data, conjugate
  // slots reinterpreted as the w-slots.
  const BiPoly& rho_c() const { return rho_; }
  const NormalizationLog& normalization() const { return log_; }

  const BiPoly& rho_z(int j) const { return dz_[j]; }
  const BiPoly& rho_zbar(int j) const { return dzbar_[j]; }
  const BiPoly& rho_mixed(int j, int k) const { return mixed_[j * n() + k]; }  // d2/dz_j dzbar_k

  double rho_at(std::span<const Cx> z) const;             // real value on the diagonal
  double residual(std::span<const Cx> z) const;           // |rho| / scale(|z|)
  // Wirtinger gradient (d rho/d z_j) on the diagonal.
  CxVec gradient(std::span<const Cx> z) const;
  double gradient_scale(double r) const;

  Hypersurface translated(std::span<const GQ> p) const;   // moves p to the origin

  SegreVariety segre_exact(std::span<const GQ> w) const;
  SegreVariety segre_numeric(std::span<const Cx> w, double rel_tol = 1e-12) const;
  bool segre_origin_degenerate() const;

  // Exact identity rho_c(w, conj z) == conj(rho_c(z, conj w)) specialized to
  // two points; the numeric variant reports both residuals.
  bool segre_symmetry_exact(std::span<const GQ> z, std::span<const GQ> w) const;
  std::pair<double, double> segre_symmetry_values(std::span<const Cx> z,
                                                  std::span<const Cx> w) const;

 private:
  explicit Hypersurface(BiPoly rho, NormalizationLog log);
  BiPoly rho_;
  NormalizationLog log_;
  std::vector<BiPoly> dz_, dzbar_, mixed_;
};

// ---- sampling --------------------------------------------------------------

struct GammaSample {
  CxVec z;
  double residual;    // relative |rho|
  double grad_norm;   // |Wirtinger gradient|
};

struct SampleOpts {
  int want = 200;
  int max_attempts = 200000;
  double on_gamma_tol = 1e-10;
  uint64_t site = 0x5a5a;
};

// Random-line shooting + 1-d Newton refinement onto Gamma inside the closed
// ball of the given radius.
std::vector<GammaSample> sample_gamma(const Hypersurface& h, double radius, uint64_t seed,
                                      const SampleOpts& opts = {});

// ---- singular locus ---------------------------------------------------------

struct SingularSample {
  CxVec z;
  double rho_residual;
  double grad_residual;
  bool stick_candidate;       // no nearby regular Gamma points found
  int nearby_regular;         // count found within r_stick
};

struct SingularLocusReport {
  std::vector<std::string> defining_system;  // rho and its Wirtinger partials
  std::vector<SingularSample> samples;
};

struct SingularLocusOpts {
  double box_radius = 1.0;
  int starts = 120;
  double rho_tol = 1e-10;     // relative
  double grad_tol = 1e-8;     // relative
  double r_stick = 0.08;
  int stick_probes = 60;
  double regular_grad_floor = 1e-4;
  double dedupe_dist = 0.05;
};

SingularLocusReport singular_locus(const Hypersurface& h, const SingularLocusOpts& opts,
                                   uint64_t seed);

// ---- classification ---------------------------------------------------------

enum class PointClass { NotLeviFlat, Regular, SegreDegenerate, Nondegenerate };

struct SingularityReport {
  PointClass cls;
  std::optional<int> d;          // branch degree, n = 2 only
  bool levi_flat = false;
  std::string levi_method;
  std::vector<std::string> notes;
};

// Web degree is supplied by the caller (computed by the web module at the
// translated origin) -- classify itself performs the on-Gamma check, the
// regularity test and the Segre degeneracy test.
SingularityReport classify_point(const Hypersurface& h, std::span<const GQ> p, bool levi_flat,
                                 const std::string& levi_method,
                                 std::optional<int> web_degree, uint64_t seed);

}  // namespace leviflat

#endif
