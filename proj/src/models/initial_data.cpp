#include "models/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "operators/operators.hpp"
#include "spectral/calculus.hpp"

namespace vvv::models {

using spectral::Complex;
using spectral::Grid;
using spectral::ScalarField;

VectorField taylor_green(const GridPtr& grid, double amplitude) {
  VectorField u(grid);
  const Complex i(0.0, 1.0);
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) {
        const auto r = static_cast<std::size_t>(grid->index_of({s1, s2, s3}));
        u[0][r] = -i * (amplitude * s1 / 8.0);
        u[1][r] = i * (amplitude * s2 / 8.0);
      }
  return u;
}

VectorField random_field(const GridPtr& grid, const RandomFieldOptions& opts) {
  const Grid& g = *grid;
  const int cut = opts.mode_cutoff <= 0 ? g.cutoff() : std::min(opts.mode_cutoff, g.cutoff());
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorField v(grid);
  for (std::size_t r = 0; r < g.mode_count(); ++r) {
    const auto& k = g.mode(r);
    const bool excited = std::abs(k.k1) <= cut && std::abs(k.k2) <= cut && std::abs(k.k3) <= cut;
    const double weight = 1.0 / std::pow(1.0 + k.norm2(), 2.0);
    for (int c = 0; c < 3; ++c) {
      // Draw for every mode so the stream does not depend on the cutoff.
      const double re = normal(rng), im = normal(rng);
      if (excited) v[c][r] = weight * Complex(re, im);
    }
  }
  for (int c = 0; c < 3; ++c) v[c].symmetrize();
  if (opts.solenoidal) v = ops::leray_project(v);
  const double norm = std::sqrt(spectral::weighted_square_norm(v, 0));
  if (norm > 0.0) v *= opts.amplitude / norm;
  return v;
}

VectorField add_divergence_perturbation(const VectorField& base, std::uint64_t seed, double amplitude) {
  const GridPtr& grid = base.grid_ptr();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ScalarField phi(grid);
  for (std::size_t r = 0; r < grid->mode_count(); ++r) {
    const double re = normal(rng), im = normal(rng);
    if (grid->mode(r).norm2() == 1) phi[r] = Complex(re, im);
  }
  phi.symmetrize();
  VectorField grad = spectral::gradient(phi);
  const double norm = std::sqrt(spectral::weighted_square_norm(grad, 0));
  VectorField out = base;
  if (norm > 0.0) out.axpy(amplitude / norm, grad);
  return out;
}

}  // namespace vvv::models
