#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "spectral/grid.hpp"

namespace vvv::spectral {

using Complex = std::complex<double>;

/// Mean-free real scalar field stored as Fourier coefficients on the retained
/// modes of a grid. The k = 0 coefficient is not stored and is identically 0.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid);
  ScalarField(GridPtr grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex& operator[](std::size_t r) { return coeffs_[r]; }
  const Complex& operator[](std::size_t r) const { return coeffs_[r]; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Largest |c(k) - conj(c(-k))| / 2, i.e. the anti-Hermitian residue.
  double symmetry_defect() const;
  /// Replace the coefficients by their Hermitian part.
  void symmetrize();

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  /// this += s * o
  void axpy(double s, const ScalarField& o);

 private:
  GridPtr grid_;
  std::vector<Complex> coeffs_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Three scalar components. No solenoidality is implied.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(GridPtr grid);
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  const Grid& grid() const { return c_[0].grid(); }
  const GridPtr& grid_ptr() const { return c_[0].grid_ptr(); }

  ScalarField& operator[](int i) { return c_[i]; }
  const ScalarField& operator[](int i) const { return c_[i]; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  void axpy(double s, const VectorField& o);

 private:
  std::array<ScalarField, 3> c_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// L2 inner product on the unit torus (Parseval): Re sum conj(a_k) b_k.
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);

/// Sum over modes of |c_k|^2 weighted by (4 pi^2 |k|^2)^s.
double weighted_square_norm(const ScalarField& f, int s);
double weighted_square_norm(const VectorField& f, int s);

}  // namespace vvv::spectral
