#include "io/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "common/error.hpp"
#include "models/initial_data.hpp"
#include "operators/operators.hpp"
#include "spectral/calculus.hpp"
#include "spectral/transform.hpp"

namespace vvv::io {

using namespace vvv::spectral;

namespace {

double norm(const VectorField& v, int s = 0) { return std::sqrt(weighted_square_norm(v, s)); }
double norm(const ScalarField& v, int s = 0) { return std::sqrt(weighted_square_norm(v, s)); }

double ratio(double defect, double scale) { return scale > 0.0 ? defect / scale : defect; }

void record(CheckResult& r, double value) {
  r.worst = std::max(r.worst, value);
  ++r.samples;
}

}  // namespace

std::vector<CheckResult> run_property_checks(const CheckOptions& opts) {
  if (opts.seeds < 1) throw ConfigError("check suite needs at least one seed");
  if (opts.grids.empty()) throw ConfigError("check suite needs at least one grid");
  const double tol = opts.tolerance;
  CheckResult div_curl{"div(curl v) = 0", 0, tol};
  CheckResult curl_grad{"curl(grad phi) = 0", 0, tol};
  CheckResult leray{"Leray projection idempotent", 0, tol};
  CheckResult helmholtz{"Helmholtz round trip", 0, tol};
  CheckResult skew{"b(u, v, v) = 0", 0, tol};
  CheckResult antisym{"b(u, v, w) = -b(u, w, v)", 0, tol};

  for (int n : opts.grids) {
    auto g = Grid::make(n);
    Transformer tr(g);
    for (int seed = 1; seed <= opts.seeds; ++seed) {
      const auto s = static_cast<std::uint64_t>(seed) * 7919u + static_cast<std::uint64_t>(n);
      const VectorField v = models::random_field(g, {s, 0, 1.0, false});
      const VectorField u = models::random_field(g, {s + 1, 0, 1.0, true});
      const VectorField a = models::random_field(g, {s + 2, 0, 1.0, true});
      const VectorField b = models::random_field(g, {s + 3, 0, 1.0, true});

      record(div_curl, ratio(norm(divergence(curl(v))), norm(v, 2)));
      record(curl_grad, ratio(norm(curl(gradient(v[0]))), norm(v[0], 2)));
      const VectorField pv = ops::leray_project(v);
      record(leray, ratio(norm(ops::leray_project(pv) - pv), norm(v)));
      for (double alpha : {0.1, 1.0})
        record(helmholtz, ratio(norm(ops::helmholtz_apply(ops::helmholtz_invert(u, alpha), alpha) - u), norm(u)));

      // |b(u, v, w)| <= C ||grad u|| ||grad v|| ||grad w|| fixes the scale.
      const double gu = norm(u, 1), ga = norm(a, 1), gb = norm(b, 1);
      const VectorField ua = ops::advect(tr, u, a, ops::Projection::none);
      const VectorField ub = ops::advect(tr, u, b, ops::Projection::none);
      record(skew, ratio(std::abs(inner(ua, a)), gu * ga * ga));
      record(antisym, ratio(std::abs(inner(ua, b) + inner(ub, a)), gu * ga * gb));
    }
  }
  return {div_curl, curl_grad, leray, helmholtz, skew, antisym};
}

std::string format_checks(const std::vector<CheckResult>& results) {
  std::ostringstream o;
  o.precision(3);
  int failed = 0;
  for (const auto& r : results) {
    o << (r.passed() ? "PASS " : "FAIL ") << r.name << ": worst " << std::scientific << r.worst << " (tol "
      << r.tolerance << ", " << r.samples << " samples)\n";
    failed += r.passed() ? 0 : 1;
  }
  o << results.size() - failed << "/" << results.size() << " checks passed\n";
  return o.str();
}

}  // namespace vvv::io
