#pragma once

#include <memory>
#include <span>
#include <vector>

#include "spectral/field.hpp"

namespace vvv::spectral {

/// Real samples on an m^3 uniform grid, x slowest: index (i*m + j)*m + l
/// is the point (i/m, j/m, l/m).
struct PhysicalField {
  int m = 0;
  std::vector<double> values;

  std::size_t index(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * m + j) * m + l;
  }
};

/// FFT plans and scratch for one grid: the n^3 collocation grid and the
/// (3n/2)^3 alias-free product grid. One instance per invocation context;
/// instances are not shared between threads.
class Transformer {
 public:
  explicit Transformer(GridPtr grid, int threads = 1);
  ~Transformer();
  Transformer(const Transformer&) = delete;
  Transformer& operator=(const Transformer&) = delete;
  Transformer(Transformer&&) noexcept;
  Transformer& operator=(Transformer&&) noexcept;

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  /// Samples on the n^3 grid -> retained, mean-free coefficients.
  ScalarField forward(std::span<const double> samples);
  /// Coefficients -> samples on the n^3 grid. Throws InvariantError when the
  /// relative imaginary residue exceeds 1e-12; smaller residue is dropped.
  PhysicalField inverse(const ScalarField& f);

  /// Coefficients -> samples on the padded grid (input assumed Hermitian).
  void to_padded(const ScalarField& f, PhysicalField& out);
  /// Padded samples -> coefficients truncated to the retained modes.
  ScalarField from_padded(std::span<const double> samples);

 private:
  struct Plan;
  void scatter(const ScalarField& f, Plan& p);
  ScalarField gather(Plan& p);

  GridPtr grid_;
  std::unique_ptr<Plan> plain_;
  std::unique_ptr<Plan> padded_;
};

/// Relative L2 size of the anti-Hermitian part of the coefficients, which is
/// the relative imaginary residue of the synthesized samples.
double relative_imaginary_residue(const ScalarField& f);

ScalarField forward_transform(const GridPtr& grid, std::span<const double> samples);
PhysicalField inverse_transform(const ScalarField& f);

}  // namespace vvv::spectral
