#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace vvv::spectral {

struct Wavevector {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  int norm2() const { return k1 * k1 + k2 * k2 + k3 * k3; }
  int operator[](int axis) const { return axis == 0 ? k1 : (axis == 1 ? k2 : k3); }
  friend bool operator==(const Wavevector&, const Wavevector&) = default;
};

/// Collocation grid and retained wavevector set on the unit torus [0,1]^3.
///
/// A mode k is retained iff |k_j| <= floor(n/3) on every axis and k != 0.
/// Retained modes are stored compactly in lexicographic (k1,k2,k3) order where
/// each axis is walked in DFT wrap-around order 0,1,..,c,-c,..,-1. This order
/// is the coefficient layout of every field and of the snapshot payload.
class Grid {
 public:
  /// Throws ConfigError unless n is even and n >= 8.
  static std::shared_ptr<const Grid> make(int n);

  int n() const { return n_; }
  int cutoff() const { return cutoff_; }
  /// Points per axis of the alias-free product grid (3n/2).
  int padded_n() const { return padded_n_; }
  std::size_t mode_count() const { return modes_.size(); }
  double volume() const { return 1.0; }

  const Wavevector& mode(std::size_t r) const { return modes_[r]; }
  const std::vector<Wavevector>& modes() const { return modes_; }
  /// Index of -k for the mode stored at r.
  std::size_t conjugate(std::size_t r) const { return conj_[r]; }
  /// Physical wavenumber 2*pi*k_axis for mode r.
  double wavenumber(std::size_t r, int axis) const { return kphys_[r][axis]; }
  /// Eigenvalue of -Delta on mode r: 4 pi^2 |k|^2.
  double laplace_eigenvalue(std::size_t r) const { return lambda_[r]; }
  /// Smallest Stokes eigenvalue, 4 pi^2.
  double lambda1() const;

  /// True iff the integer wavevector is in the retained set.
  bool retained(const Wavevector& k) const;
  /// Compact index of a retained wavevector; -1 when not retained.
  long index_of(const Wavevector& k) const;

  bool same_as(const Grid& other) const { return n_ == other.n_; }

 private:
  explicit Grid(int n);

  int n_;
  int cutoff_;
  int padded_n_;
  std::vector<Wavevector> modes_;
  std::vector<std::size_t> conj_;
  std::vector<std::array<double, 3>> kphys_;
  std::vector<double> lambda_;
  std::vector<long> lookup_;  // (2c+1)^3 cube -> compact index
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws GridMismatchError when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace vvv::spectral
