#include "spectral/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace vvv::spectral {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Axis walk in DFT wrap-around order restricted to |k| <= c.
std::vector<int> axis_order(int c) {
  std::vector<int> order;
  for (int k = 0; k <= c; ++k) order.push_back(k);
  for (int k = -c; k < 0; ++k) order.push_back(k);
  return order;
}

}  // namespace

std::shared_ptr<const Grid> Grid::make(int n) {
  if (n < 8) throw ConfigError("grid size n=" + std::to_string(n) + " is too small (need n >= 8)");
  if (n % 2 != 0) throw ConfigError("grid size n=" + std::to_string(n) + " must be even");
  return std::shared_ptr<const Grid>(new Grid(n));
}

Grid::Grid(int n) : n_(n), cutoff_(n / 3), padded_n_(3 * n / 2) {
  const int c = cutoff_;
  const int side = 2 * c + 1;
  lookup_.assign(static_cast<std::size_t>(side) * side * side, -1);
  const auto order = axis_order(c);
  for (int k1 : order)
    for (int k2 : order)
      for (int k3 : order) {
        if (k1 == 0 && k2 == 0 && k3 == 0) continue;
        const std::size_t cube = (static_cast<std::size_t>(k1 + c) * side + (k2 + c)) * side + (k3 + c);
        lookup_[cube] = static_cast<long>(modes_.size());
        modes_.push_back({k1, k2, k3});
      }
  conj_.resize(modes_.size());
  kphys_.resize(modes_.size());
  lambda_.resize(modes_.size());
  for (std::size_t r = 0; r < modes_.size(); ++r) {
    const auto& k = modes_[r];
    conj_[r] = static_cast<std::size_t>(index_of({-k.k1, -k.k2, -k.k3}));
    kphys_[r] = {kTwoPi * k.k1, kTwoPi * k.k2, kTwoPi * k.k3};
    lambda_[r] = kTwoPi * kTwoPi * k.norm2();
  }
}

double Grid::lambda1() const { return kTwoPi * kTwoPi; }

bool Grid::retained(const Wavevector& k) const { return index_of(k) >= 0; }

long Grid::index_of(const Wavevector& k) const {
  const int c = cutoff_;
  if (std::abs(k.k1) > c || std::abs(k.k2) > c || std::abs(k.k3) > c) return -1;
  const int side = 2 * c + 1;
  return lookup_[(static_cast<std::size_t>(k.k1 + c) * side + (k.k2 + c)) * side + (k.k3 + c)];
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!a.same_as(b))
    throw GridMismatchError(std::string(what) + ": grid mismatch (n=" + std::to_string(a.n()) +
                            " vs n=" + std::to_string(b.n()) + ")");
}

}  // namespace vvv::spectral
