#include "spectral/field.hpp"

#include <algorithm>
#include <cmath>

namespace vvv::spectral {

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)), coeffs_(grid_->mode_count()) {}

ScalarField::ScalarField(GridPtr grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  coeffs_.resize(grid_->mode_count());
}

double ScalarField::symmetry_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < coeffs_.size(); ++r)
    worst = std::max(worst, 0.5 * std::abs(coeffs_[r] - std::conj(coeffs_[grid_->conjugate(r)])));
  return worst;
}

void ScalarField::symmetrize() {
  for (std::size_t r = 0; r < coeffs_.size(); ++r) {
    const std::size_t c = grid_->conjugate(r);
    if (c < r) continue;
    const Complex h = 0.5 * (coeffs_[r] + std::conj(coeffs_[c]));
    coeffs_[r] = h;
    coeffs_[c] = std::conj(h);
  }
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(*grid_, o.grid(), "field addition");
  for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] += o.coeffs_[r];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(*grid_, o.grid(), "field subtraction");
  for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] -= o.coeffs_[r];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

void ScalarField::axpy(double s, const ScalarField& o) {
  require_same_grid(*grid_, o.grid(), "field axpy");
  for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] += s * o.coeffs_[r];
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

VectorField::VectorField(GridPtr grid) : c_{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : c_{std::move(x), std::move(y), std::move(z)} {
  require_same_grid(c_[0].grid(), c_[1].grid(), "vector field");
  require_same_grid(c_[0].grid(), c_[2].grid(), "vector field");
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

void VectorField::axpy(double s, const VectorField& o) {
  for (int i = 0; i < 3; ++i) c_[i].axpy(s, o.c_[i]);
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "inner product");
  double sum = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) sum += (std::conj(a[r]) * b[r]).real();
  return sum;
}

double inner(const VectorField& a, const VectorField& b) {
  return inner(a[0], b[0]) + inner(a[1], b[1]) + inner(a[2], b[2]);
}

double weighted_square_norm(const ScalarField& f, int s) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (std::size_t r = 0; r < f.size(); ++r) {
    const double w = s == 0 ? 1.0 : std::pow(g.laplace_eigenvalue(r), s);
    sum += w * std::norm(f[r]);
  }
  return sum;
}

double weighted_square_norm(const VectorField& f, int s) {
  return weighted_square_norm(f[0], s) + weighted_square_norm(f[1], s) + weighted_square_norm(f[2], s);
}

}  // namespace vvv::spectral
