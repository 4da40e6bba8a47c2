#pragma once

#include <optional>

#include "spectral/field.hpp"
#include "spectral/transform.hpp"

namespace vvv::ops {

using spectral::ScalarField;
using spectral::Transformer;
using spectral::VectorField;

/// Body force f(x,t) = a(t) f(x), ingested once: the Leray projection and
/// the curl are precomputed spectrally.
class Forcing {
 public:
  enum class Kind { none, steady, modulated };

  static Forcing none() { return {}; }
  static Forcing steady(const VectorField& f);
  /// f(x,t) = cos(2 pi frequency t) f(x)
  static Forcing modulated(const VectorField& f, double frequency);

  Kind kind() const { return kind_; }
  bool active() const { return kind_ != Kind::none; }
  double frequency() const { return frequency_; }
  double amplitude(double t) const;

  /// P_sigma f(t); nullopt when inactive.
  std::optional<VectorField> projected(double t) const;
  /// curl f(t); nullopt when inactive.
  std::optional<VectorField> curl(double t) const;
  const std::optional<VectorField>& raw() const { return raw_; }

 private:
  Kind kind_ = Kind::none;
  double frequency_ = 0.0;
  std::optional<VectorField> raw_;
  std::optional<VectorField> projected_;
  std::optional<VectorField> curl_;
};

struct ModelParams {
  double nu = 1.0;
  double alpha = 0.1;
  Forcing forcing;

  /// Throws ConfigError unless nu > 0 and alpha >= 0.
  void validate() const;
};

enum class Projection { none, leray };

/// v(k) - k (k . v(k)) / |k|^2 on every retained mode.
VectorField leray_project(const VectorField& v);
/// Division by (1 + alpha^2 4 pi^2 |k|^2). Equals (I + alpha^2 A)^{-1} on
/// solenoidal input; alpha = 0 is the identity.
VectorField helmholtz_invert(const VectorField& v, double alpha);
/// Multiplication by (1 + alpha^2 4 pi^2 |k|^2), the inverse of helmholtz_invert.
VectorField helmholtz_apply(const VectorField& v, double alpha);

/// P_sigma(w x u), products evaluated alias-free on the padded grid.
VectorField cross_term(Transformer& tr, const VectorField& w, const VectorField& u);

/// (u . grad) v, alias-free; Leray-projected when requested (this is B(u,v)).
/// Throws InvariantError when ||div u|| > 1e-10 ||u||_{H1}.
VectorField advect(Transformer& tr, const VectorField& u, const VectorField& v,
                   Projection projection = Projection::none);

/// P f - nu A u - P(w x u): right-hand side of the (I + alpha^2 A) u equation.
VectorField vvv_momentum_rhs(Transformer& tr, const VectorField& u, const VectorField& w,
                             const ModelParams& params, double t = 0.0);

/// curl f + nu Delta w - (u.grad) w + (w.grad) u, not projected.
VectorField vorticity_rhs(Transformer& tr, const VectorField& u, const VectorField& w,
                          const ModelParams& params, double t = 0.0);

/// The explicit (nonlinear) parts of both equations, evaluated together so
/// the padded transforms of u and w are shared.
struct NonlinearTerms {
  VectorField momentum;   // -P(w x u)
  VectorField vorticity;  // -(u.grad) w + (w.grad) u
};
NonlinearTerms vvv_nonlinear(Transformer& tr, const VectorField& u, const VectorField& w);

/// -P((curl u) x u), the rotational-form NSE nonlinearity.
VectorField nse_nonlinear(Transformer& tr, const VectorField& u);

/// Bernoulli pressure p + |u|^2/2 from Delta P = div f - div(w x u).
ScalarField reconstruct_pressure(Transformer& tr, const VectorField& u, const VectorField& w,
                                 const ModelParams& params, double t = 0.0);

/// Throws InvariantError when ||div u||_{L2} > tol * ||u||_{H1}.
void require_solenoidal(const VectorField& u, const char* what, double tol = 1e-10);

}  // namespace vvv::ops
