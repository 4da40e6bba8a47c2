#include "operators/operators.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"
#include "spectral/calculus.hpp"

namespace vvv::ops {

using spectral::Axis;
using spectral::Complex;
using spectral::Grid;
using spectral::PhysicalField;

namespace {

using PaddedVector = std::array<PhysicalField, 3>;

PaddedVector to_padded(Transformer& tr, const VectorField& v) {
  PaddedVector out;
  for (int i = 0; i < 3; ++i) tr.to_padded(v[i], out[i]);
  return out;
}

// grad[i][j] = d v_i / d x_j on the padded grid.
std::array<PaddedVector, 3> padded_gradient(Transformer& tr, const VectorField& v) {
  std::array<PaddedVector, 3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tr.to_padded(spectral::derivative(v[i], static_cast<Axis>(j)), out[i][j]);
  return out;
}

VectorField from_padded(Transformer& tr, const PaddedVector& p) {
  return {tr.from_padded(p[0].values), tr.from_padded(p[1].values), tr.from_padded(p[2].values)};
}

PaddedVector padded_cross(const PaddedVector& a, const PaddedVector& b) {
  PaddedVector out;
  const std::size_t np = a[0].values.size();
  for (auto& c : out) c = {a[0].m, std::vector<double>(np)};
  for (std::size_t q = 0; q < np; ++q) {
    const double a1 = a[0].values[q], a2 = a[1].values[q], a3 = a[2].values[q];
    const double b1 = b[0].values[q], b2 = b[1].values[q], b3 = b[2].values[q];
    out[0].values[q] = a2 * b3 - a3 * b2;
    out[1].values[q] = a3 * b1 - a1 * b3;
    out[2].values[q] = a1 * b2 - a2 * b1;
  }
  return out;
}

// sum_j a_j grad[i][j] for each i.
PaddedVector padded_directional(const PaddedVector& a, const std::array<PaddedVector, 3>& grad) {
  PaddedVector out;
  const std::size_t np = a[0].values.size();
  for (auto& c : out) c = {a[0].m, std::vector<double>(np)};
  for (int i = 0; i < 3; ++i)
    for (std::size_t q = 0; q < np; ++q)
      out[i].values[q] = a[0].values[q] * grad[i][0].values[q] + a[1].values[q] * grad[i][1].values[q] +
                         a[2].values[q] * grad[i][2].values[q];
  return out;
}

}  // namespace

Forcing Forcing::steady(const VectorField& f) {
  Forcing out;
  out.kind_ = Kind::steady;
  out.raw_ = f;
  out.projected_ = leray_project(f);
  out.curl_ = spectral::curl(f);
  return out;
}

Forcing Forcing::modulated(const VectorField& f, double frequency) {
  Forcing out = steady(f);
  out.kind_ = Kind::modulated;
  out.frequency_ = frequency;
  return out;
}

double Forcing::amplitude(double t) const {
  switch (kind_) {
    case Kind::none: return 0.0;
    case Kind::steady: return 1.0;
    case Kind::modulated: return std::cos(2.0 * std::numbers::pi * frequency_ * t);
  }
  return 0.0;
}

std::optional<VectorField> Forcing::projected(double t) const {
  if (!active()) return std::nullopt;
  return amplitude(t) * *projected_;
}

std::optional<VectorField> Forcing::curl(double t) const {
  if (!active()) return std::nullopt;
  return amplitude(t) * *curl_;
}

void ModelParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu must be positive (got " + std::to_string(nu) + ")");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw ConfigError("alpha must satisfy alpha >= 0 (got " + std::to_string(alpha) + ")");
}

VectorField leray_project(const VectorField& v) {
  const Grid& g = v.grid();
  VectorField out(v.grid_ptr());
  for (std::size_t r = 0; r < g.mode_count(); ++r) {
    const double k1 = g.wavenumber(r, 0), k2 = g.wavenumber(r, 1), k3 = g.wavenumber(r, 2);
    const double kk = k1 * k1 + k2 * k2 + k3 * k3;
    const Complex kv = (k1 * v[0][r] + k2 * v[1][r] + k3 * v[2][r]) / kk;
    out[0][r] = v[0][r] - k1 * kv;
    out[1][r] = v[1][r] - k2 * kv;
    out[2][r] = v[2][r] - k3 * kv;
  }
  return out;
}

VectorField helmholtz_invert(const VectorField& v, double alpha) {
  const Grid& g = v.grid();
  VectorField out = v;
  if (alpha == 0.0) return out;
  const double a2 = alpha * alpha;
  for (std::size_t r = 0; r < g.mode_count(); ++r) {
    const double inv = 1.0 / (1.0 + a2 * g.laplace_eigenvalue(r));
    for (int i = 0; i < 3; ++i) out[i][r] *= inv;
  }
  return out;
}

VectorField helmholtz_apply(const VectorField& v, double alpha) {
  const Grid& g = v.grid();
  VectorField out = v;
  const double a2 = alpha * alpha;
  for (std::size_t r = 0; r < g.mode_count(); ++r) {
    const double m = 1.0 + a2 * g.laplace_eigenvalue(r);
    for (int i = 0; i < 3; ++i) out[i][r] *= m;
  }
  return out;
}

void require_solenoidal(const VectorField& u, const char* what, double tol) {
  const double div = std::sqrt(spectral::weighted_square_norm(spectral::divergence(u), 0));
  const double h1 = std::sqrt(spectral::weighted_square_norm(u, 1));
  if (div > tol * h1)
    throw InvariantError(std::string(what) + ": velocity is not solenoidal (||div u|| = " + std::to_string(div) +
                         ", ||grad u|| = " + std::to_string(h1) + ")");
}

VectorField cross_term(Transformer& tr, const VectorField& w, const VectorField& u) {
  spectral::require_same_grid(w.grid(), u.grid(), "cross_term");
  spectral::require_same_grid(tr.grid(), u.grid(), "cross_term");
  const PaddedVector pw = to_padded(tr, w);
  const PaddedVector pu = to_padded(tr, u);
  return leray_project(from_padded(tr, padded_cross(pw, pu)));
}

VectorField advect(Transformer& tr, const VectorField& u, const VectorField& v, Projection projection) {
  spectral::require_same_grid(u.grid(), v.grid(), "advect");
  spectral::require_same_grid(tr.grid(), u.grid(), "advect");
  require_solenoidal(u, "advect");
  const PaddedVector pu = to_padded(tr, u);
  VectorField out = from_padded(tr, padded_directional(pu, padded_gradient(tr, v)));
  return projection == Projection::leray ? leray_project(out) : out;
}

// (w.grad) u - (u.grad) w
static VectorField padded_stretching(Transformer& tr, const PaddedVector& pu, const PaddedVector& pw,
                              const VectorField& u, const VectorField& w) {
  const PaddedVector u_grad_w = padded_directional(pu, padded_gradient(tr, w));
  PaddedVector stretch = padded_directional(pw, padded_gradient(tr, u));
  for (int i = 0; i < 3; ++i)
    for (std::size_t q = 0; q < stretch[i].values.size(); ++q) stretch[i].values[q] -= u_grad_w[i].values[q];
  return from_padded(tr, stretch);
}

NonlinearTerms vvv_nonlinear(Transformer& tr, const VectorField& u, const VectorField& w) {
  spectral::require_same_grid(u.grid(), w.grid(), "vvv_nonlinear");
  spectral::require_same_grid(tr.grid(), u.grid(), "vvv_nonlinear");
  const PaddedVector pu = to_padded(tr, u);
  const PaddedVector pw = to_padded(tr, w);
  NonlinearTerms out;
  out.momentum = leray_project(from_padded(tr, padded_cross(pw, pu)));
  out.momentum *= -1.0;
  out.vorticity = padded_stretching(tr, pu, pw, u, w);
  return out;
}

VectorField nse_nonlinear(Transformer& tr, const VectorField& u) {
  VectorField out = cross_term(tr, spectral::curl(u), u);
  out *= -1.0;
  return out;
}

VectorField vvv_momentum_rhs(Transformer& tr, const VectorField& u, const VectorField& w,
                             const ModelParams& params, double t) {
  require_solenoidal(u, "vvv_momentum_rhs");
  VectorField out = cross_term(tr, w, u);
  out *= -1.0;
  out.axpy(-params.nu, spectral::stokes_apply(u));
  if (auto f = params.forcing.projected(t)) out += *f;
  return out;
}

VectorField vorticity_rhs(Transformer& tr, const VectorField& u, const VectorField& w,
                          const ModelParams& params, double t) {
  spectral::require_same_grid(u.grid(), w.grid(), "vorticity_rhs");
  spectral::require_same_grid(tr.grid(), u.grid(), "vorticity_rhs");
  require_solenoidal(u, "vorticity_rhs");
  VectorField out = padded_stretching(tr, to_padded(tr, u), to_padded(tr, w), u, w);
  out.axpy(params.nu, spectral::laplacian(w));
  if (auto cf = params.forcing.curl(t)) out += *cf;
  return out;
}

ScalarField reconstruct_pressure(Transformer& tr, const VectorField& u, const VectorField& w,
                                 const ModelParams& params, double t) {
  const PaddedVector pw = to_padded(tr, w);
  const PaddedVector pu = to_padded(tr, u);
  VectorField source = from_padded(tr, padded_cross(pw, pu));
  source *= -1.0;
  if (params.forcing.active()) source.axpy(params.forcing.amplitude(t), *params.forcing.raw());
  ScalarField div = spectral::divergence(source);
  const Grid& g = u.grid();
  for (std::size_t r = 0; r < g.mode_count(); ++r) div[r] /= -g.laplace_eigenvalue(r);
  return div;
}

}  // namespace vvv::ops
