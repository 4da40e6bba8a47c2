#include "spectral/calculus.hpp"

#include "operators/operators.hpp"

namespace vvv::spectral {

ScalarField derivative(const ScalarField& f, Axis axis) {
  const Grid& g = f.grid();
  const int a = static_cast<int>(axis);
  ScalarField out(f.grid_ptr());
  for (std::size_t r = 0; r < f.size(); ++r) out[r] = Complex(0.0, g.wavenumber(r, a)) * f[r];
  return out;
}

VectorField gradient(const ScalarField& f) {
  return {derivative(f, Axis::x), derivative(f, Axis::y), derivative(f, Axis::z)};
}

ScalarField divergence(const VectorField& v) {
  const Grid& g = v.grid();
  ScalarField out(v.grid_ptr());
  for (std::size_t r = 0; r < g.mode_count(); ++r) {
    const Complex s = g.wavenumber(r, 0) * v[0][r] + g.wavenumber(r, 1) * v[1][r] + g.wavenumber(r, 2) * v[2][r];
    out[r] = Complex(0.0, 1.0) * s;
  }
  return out;
}

VectorField curl(const VectorField& v) {
  const Grid& g = v.grid();
  VectorField out(v.grid_ptr());
  const Complex i(0.0, 1.0);
  for (std::size_t r = 0; r < g.mode_count(); ++r) {
    const double k1 = g.wavenumber(r, 0), k2 = g.wavenumber(r, 1), k3 = g.wavenumber(r, 2);
    out[0][r] = i * (k2 * v[2][r] - k3 * v[1][r]);
    out[1][r] = i * (k3 * v[0][r] - k1 * v[2][r]);
    out[2][r] = i * (k1 * v[1][r] - k2 * v[0][r]);
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  for (std::size_t r = 0; r < f.size(); ++r) out[r] = -g.laplace_eigenvalue(r) * f[r];
  return out;
}

VectorField laplacian(const VectorField& v) { return {laplacian(v[0]), laplacian(v[1]), laplacian(v[2])}; }

VectorField stokes_apply(const VectorField& v) {
  VectorField p = ops::leray_project(v);
  p *= -1.0;
  return laplacian(p);
}

}  // namespace vvv::spectral
