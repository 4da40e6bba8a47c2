#include "spectral/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "common/error.hpp"

namespace vvv::spectral {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void init_fftw_threads() {
  static std::once_flag once;
  std::call_once(once, [] { fftw_init_threads(); });
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline int wrap(int k, int m) { return k >= 0 ? k : k + m; }

}  // namespace

struct Transformer::Plan {
  int m = 0;
  int mh = 0;  // m/2 + 1
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  Plan(int m_, int threads) : m(m_), mh(m_ / 2 + 1) {
    const std::size_t nreal = static_cast<std::size_t>(m) * m * m;
    const std::size_t nspec = static_cast<std::size_t>(m) * m * mh;
    std::lock_guard lock(planner_mutex());
    init_fftw_threads();
    fftw_plan_with_nthreads(threads);
    real = fftw_alloc_real(nreal);
    spec = fftw_alloc_complex(nspec);
    r2c = fftw_plan_dft_r2c_3d(m, m, m, real, spec, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_3d(m, m, m, spec, real, FFTW_ESTIMATE);
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(spec);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  std::size_t real_size() const { return static_cast<std::size_t>(m) * m * m; }
  std::size_t spec_size() const { return static_cast<std::size_t>(m) * m * mh; }
};

Transformer::Transformer(GridPtr grid, int threads) : grid_(std::move(grid)) {
  const int t = resolve_threads(threads);
  plain_ = std::make_unique<Plan>(grid_->n(), t);
  padded_ = std::make_unique<Plan>(grid_->padded_n(), t);
}

Transformer::~Transformer() = default;
Transformer::Transformer(Transformer&&) noexcept = default;
Transformer& Transformer::operator=(Transformer&&) noexcept = default;

void Transformer::scatter(const ScalarField& f, Plan& p) {
  require_same_grid(*grid_, f.grid(), "transform");
  std::fill_n(reinterpret_cast<double*>(p.spec), 2 * p.spec_size(), 0.0);
  const Grid& g = *grid_;
  for (std::size_t r = 0; r < g.mode_count(); ++r) {
    const Wavevector& k = g.mode(r);
    if (k.k3 < 0) continue;
    const std::size_t idx =
        (static_cast<std::size_t>(wrap(k.k1, p.m)) * p.m + wrap(k.k2, p.m)) * p.mh + k.k3;
    p.spec[idx][0] = f[r].real();
    p.spec[idx][1] = f[r].imag();
  }
}

ScalarField Transformer::gather(Plan& p) {
  const Grid& g = *grid_;
  ScalarField out(grid_);
  const double scale = 1.0 / static_cast<double>(p.real_size());
  for (std::size_t r = 0; r < g.mode_count(); ++r) {
    const Wavevector& k = g.mode(r);
    if (k.k3 >= 0) {
      const std::size_t idx =
          (static_cast<std::size_t>(wrap(k.k1, p.m)) * p.m + wrap(k.k2, p.m)) * p.mh + k.k3;
      out[r] = scale * Complex(p.spec[idx][0], p.spec[idx][1]);
    } else {
      const std::size_t idx =
          (static_cast<std::size_t>(wrap(-k.k1, p.m)) * p.m + wrap(-k.k2, p.m)) * p.mh - k.k3;
      out[r] = scale * Complex(p.spec[idx][0], -p.spec[idx][1]);
    }
  }
  return out;
}

ScalarField Transformer::forward(std::span<const double> samples) {
  Plan& p = *plain_;
  if (samples.size() != p.real_size())
    throw ConfigError("forward_transform: expected " + std::to_string(p.real_size()) +
                      " samples, got " + std::to_string(samples.size()));
  std::copy(samples.begin(), samples.end(), p.real);
  fftw_execute(p.r2c);
  return gather(p);
}

PhysicalField Transformer::inverse(const ScalarField& f) {
  const double residue = relative_imaginary_residue(f);
  if (residue > 1e-12)
    throw InvariantError("inverse_transform: conjugate symmetry violated (relative imaginary residue " +
                         std::to_string(residue) + ")");
  ScalarField h = f;
  h.symmetrize();
  Plan& p = *plain_;
  scatter(h, p);
  fftw_execute(p.c2r);
  return {p.m, std::vector<double>(p.real, p.real + p.real_size())};
}

void Transformer::to_padded(const ScalarField& f, PhysicalField& out) {
  Plan& p = *padded_;
  scatter(f, p);
  fftw_execute(p.c2r);
  out.m = p.m;
  out.values.assign(p.real, p.real + p.real_size());
}

ScalarField Transformer::from_padded(std::span<const double> samples) {
  Plan& p = *padded_;
  if (samples.size() != p.real_size()) throw ConfigError("from_padded: sample count mismatch");
  std::copy(samples.begin(), samples.end(), p.real);
  fftw_execute(p.r2c);
  return gather(p);
}

double relative_imaginary_residue(const ScalarField& f) {
  double anti = 0.0;
  double total = 0.0;
  for (std::size_t r = 0; r < f.size(); ++r) {
    anti += 0.25 * std::norm(f[r] - std::conj(f[f.grid().conjugate(r)]));
    total += std::norm(f[r]);
  }
  if (total == 0.0) return 0.0;
  return std::sqrt(anti / total);
}

ScalarField forward_transform(const GridPtr& grid, std::span<const double> samples) {
  Transformer t(grid);
  return t.forward(samples);
}

PhysicalField inverse_transform(const ScalarField& f) {
  Transformer t(f.grid_ptr());
  return t.inverse(f);
}

}  // namespace vvv::spectral
