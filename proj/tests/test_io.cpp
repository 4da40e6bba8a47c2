#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "common/error.hpp"
#include "io/checks.hpp"
#include "io/config.hpp"
#include "io/runner.hpp"
#include "io/snapshot.hpp"
#include "io/timeseries.hpp"
#include "models/initial_data.hpp"
#include "spectral/calculus.hpp"

using namespace vvv;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = "model = vvv\nn = 16\ndt = 1e-3\nt_end = 0.1\n";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vvv_test_io_" + std::to_string(::getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

std::string error_of(const std::string& text) {
  try {
    io::parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("minimal config gets defaults") {
  const auto c = io::parse_config(kMinimal);
  CHECK(c.model == models::Model::vvv);
  CHECK(c.n == 16);
  CHECK(c.nu == 1.0);
  CHECK(c.alpha == 0.1);
  CHECK(c.w0 == io::W0Kind::curl_of_u0);
  CHECK(c.u0 == io::U0Kind::taylor_green);
  CHECK(c.threads == 1);
  CHECK(c.scheme().step_count() == 100);
}

TEST_CASE("sections, comments and whitespace") {
  const auto c = io::parse_config(
      "# leading comment\n[model]\n  model = nse   # trailing\nnu=0.5\n\n[grid]\nn = 32\n[time]\ndt = 2e-3\nt_end = 0\n"
      "[output]\nthreads = 0\noutput_dir = results\n");
  CHECK(c.model == models::Model::nse);
  CHECK(c.nu == 0.5);
  CHECK(c.n == 32);
  CHECK(c.t_end == 0.0);
  CHECK(c.resolved_threads() >= 1);
  CHECK(c.output_dir.filename() == "results");
}

TEST_CASE("config errors name the line") {
  CHECK(contains(error_of(std::string(kMinimal) + "alpha = -1\n"), "line 5"));
  CHECK(contains(error_of(std::string(kMinimal) + "alpha = -1\n"), "alpha must be >= 0"));
  const auto dup = error_of("model = vvv\nn = 16\ndt = 1e-3\nn = 32\nt_end = 1\n");
  CHECK(contains(dup, "duplicate key 'n'"));
  CHECK(contains(dup, "line 2"));
  CHECK(contains(dup, "line 4"));
  CHECK(contains(error_of(std::string(kMinimal) + "alhpa = 0.2\n"), "unknown key 'alhpa'"));
  CHECK(contains(error_of("model = vvv\nn = sixteen\ndt = 1e-3\nt_end = 0.1\n"), "line 2: 'n' expects an integer"));
  CHECK(contains(error_of("model = vvv\nn = 16\ndt = 1e-3\n"), "missing required key 't_end'"));
  CHECK(contains(error_of("model = vvv\nn = 15\ndt = 1e-3\nt_end = 1\n"), "line 2"));
  CHECK(contains(error_of("[time]\nmodel = vvv\n"), "belongs in [model]"));
  CHECK(contains(error_of("[physics]\n"), "unknown section"));
  CHECK(contains(error_of(std::string(kMinimal) + "just words\n"), "line 5"));
  CHECK(contains(error_of(std::string(kMinimal) + "u0 = random-smooth\n"), "requires u0_seed"));
  CHECK(contains(error_of(std::string(kMinimal) + "w0 = perturbed-divergence\n"), "requires w0_seed"));
  CHECK(contains(error_of(std::string(kMinimal) + "u0 = snapshot\nu0_path = /nonexistent/x.vvvf\n"), "does not exist"));
  CHECK(contains(error_of(std::string(kMinimal) + "model = nse\n"), "duplicate"));
  CHECK(contains(error_of(std::string(kMinimal) + "nonlinear = maybe\n"), "true or false"));
}

TEST_CASE("canonical text re-parses to the same config") {
  auto c = io::parse_config(std::string(kMinimal) +
                            "u0 = random-smooth\nu0_seed = 7\nu0_mode_cutoff = 3\nforcing = modulated-taylor-green\n"
                            "[sweep]\nexperiment = curl-mismatch\nvalues = 0.1, 0.05,0.025\n");
  const auto again = io::parse_config(io::to_text(c));
  CHECK(io::to_text(again) == io::to_text(c));
  CHECK(again.sweep.values.size() == 3);
  CHECK(again.u0_seed == 7u);
}

TEST_CASE("overrides follow the file rules") {
  auto c = io::parse_config(kMinimal);
  io::apply_override(c, "alpha", "0.25");
  CHECK(c.alpha == 0.25);
  CHECK_THROWS_AS(io::apply_override(c, "alpha", "-3"), ConfigError);
  CHECK(c.alpha == 0.25);
  CHECK_THROWS_AS(io::apply_override(c, "bogus", "1"), ConfigError);
}

TEST_CASE("snapshot round trip is bit-exact") {
  auto g = spectral::Grid::make(16);
  io::Snapshot s;
  s.alpha = 0.1;
  s.nu = 1.0;
  s.t = 0.123456789;
  s.u = models::random_field(g, {5, 0, 1.3, true});
  s.w = spectral::curl(s.u);
  (*s.w)[0][17] += spectral::Complex(1e-300, -3.5);
  const fs::path p = scratch("round.vvvf");
  io::write_snapshot(s, p);
  CHECK(fs::file_size(p) == 4 + 4 + 4 + 1 + 24 + 1 + 4 + 4 + 6 + 6 * 1330 * 16);
  const io::Snapshot r = io::read_snapshot(p, g);
  CHECK(r.t == s.t);
  CHECK(r.alpha == s.alpha);
  REQUIRE(r.w);
  for (int c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < s.u[c].size(); ++k) {
      CHECK(r.u[c][k] == s.u[c][k]);
      CHECK((*r.w)[c][k] == (*s.w)[c][k]);
    }
  // and the file itself is reproduced byte for byte
  const fs::path p2 = scratch("round2.vvvf");
  io::write_snapshot(r, p2);
  CHECK(slurp(p) == slurp(p2));

  const auto h = io::read_snapshot_header(p);
  CHECK(h.n == 16);
  CHECK(h.retained == 1330);
  CHECK(h.tags.size() == 6);
  CHECK(contains(io::describe(h), "n: 16"));
}

TEST_CASE("snapshot read errors") {
  auto g = spectral::Grid::make(16);
  io::Snapshot s;
  s.u = models::taylor_green(g);
  const fs::path p = scratch("tg.vvvf");
  io::write_snapshot(s, p);
  CHECK_FALSE(io::read_snapshot(p, g).w.has_value());
  CHECK_THROWS_AS(io::read_snapshot(p, spectral::Grid::make(32)), GridMismatchError);

  const std::string bytes = slurp(p);
  auto write_bytes = [](const fs::path& q, const std::string& b) { std::ofstream(q, std::ios::binary) << b; };
  const fs::path cut = scratch("cut.vvvf");
  write_bytes(cut, bytes.substr(0, bytes.size() - 5));
  try {
    io::read_snapshot(cut);
    FAIL("truncated file accepted");
  } catch (const FormatError& e) {
    CHECK(contains(e.what(), "truncated"));
  }
  write_bytes(cut, bytes.substr(0, 20));
  CHECK_THROWS_AS(io::read_snapshot_header(cut), FormatError);

  std::string bad = bytes;
  bad[0] = 'X';
  write_bytes(cut, bad);
  CHECK_THROWS_AS(io::read_snapshot(cut), FormatError);
  bad = bytes;
  bad[4] = 9;  // version
  write_bytes(cut, bad);
  try {
    io::read_snapshot(cut);
    FAIL("wrong version accepted");
  } catch (const FormatError& e) {
    CHECK(contains(e.what(), "version 9"));
  }
  CHECK_THROWS_AS(io::read_snapshot(scratch("missing.vvvf")), IoError);
}

TEST_CASE("time-series CSV") {
  std::ostringstream os;
  io::TimeseriesWriter w(os);
  diag::DiagnosticsRecord zero;
  zero.t = 0.25;
  w.append(zero);
  CHECK(os.str() == std::string(io::kTimeseriesHeader) + "\n0.25,0,0,0,0,0,0,0,0,0\n");
  diag::DiagnosticsRecord r;
  r.l2_u = 0.1;
  r.h1_u = 1.0 / 3.0;
  for (int i = 0; i < 999; ++i) w.append(r);
  std::istringstream in(os.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    int commas = 0;
    for (char ch : line) commas += ch == ',';
    CHECK(commas == 9);
  }
  CHECK(lines == 1001);
  CHECK(io::format_real(1.0 / 3.0) == "0.33333333333333331");
  CHECK(std::stod(io::format_real(0.1)) == 0.1);
}

TEST_CASE("run writes CSV and snapshots; energy residual independent of cadence") {
  const fs::path dir = scratch("run");
  auto cfg_text = [&](int every, const std::string& sub) {
    return "model = vvv\nn = 16\ndt = 1e-3\nt_end = 0.02\nsnapshot_every = 10\ndiagnostics_every = " +
           std::to_string(every) + "\noutput_dir = " + (dir / sub).string() + "\n";
  };
  const auto a = io::run_config(io::parse_config(cfg_text(1, "a")));
  const auto b = io::run_config(io::parse_config(cfg_text(5, "b")));
  CHECK(a.steps == 20);
  CHECK(a.rows == 21);
  CHECK(b.rows == 5);
  CHECK(a.last.energy_budget_residual == b.last.energy_budget_residual);
  CHECK(fs::exists(dir / "a" / "final.vvvf"));
  CHECK(fs::exists(dir / "a" / "snapshots" / "step_00000010.vvvf"));
  CHECK(fs::exists(dir / "a" / "snapshots" / "step_00000020.vvvf"));
  const auto d = io::snapshot_distance(dir / "a" / "final.vvvf", dir / "b" / "final.vvvf");
  CHECK(d.l2_u == 0.0);
  CHECK(d.has_w);

  // a snapshot feeds the next run
  auto resumed = io::parse_config(std::string("model = vvv\nn = 16\ndt = 1e-3\nt_end = 0.001\nu0 = snapshot\nw0 = "
                                              "snapshot\nu0_path = ") +
                                  (dir / "a" / "final.vvvf").string() + "\nw0_path = " +
                                  (dir / "a" / "final.vvvf").string() + "\noutput_dir = " + (dir / "c").string() + "\n");
  const auto sc = io::build_scenario(resumed);
  REQUIRE(sc.w0);
  CHECK(io::snapshot_distance(dir / "a" / "final.vvvf", dir / "a" / "final.vvvf").l2_u == 0.0);
  const auto sn = io::read_snapshot(dir / "a" / "final.vvvf");
  CHECK(std::sqrt(spectral::weighted_square_norm(sc.u0 - sn.u, 0)) == 0.0);
  CHECK_THROWS_AS(io::snapshot_distance(dir / "a" / "final.vvvf", dir / "missing.vvvf"), IoError);
}

TEST_CASE("reproducible CSV") {
  const fs::path dir = scratch("repro");
  std::string base = "model = vvv\nn = 16\ndt = 1e-3\nt_end = 0.02\nu0 = random-smooth\nu0_seed = 3\nw0 = "
                     "perturbed-divergence\nw0_seed = 4\nw0_amplitude = 0.5\nforcing = taylor-green\n";
  io::run_config(io::parse_config(base + "output_dir = " + (dir / "x").string() + "\n"));
  io::run_config(io::parse_config(base + "output_dir = " + (dir / "y").string() + "\n"));
  CHECK(slurp(dir / "x" / "timeseries.csv") == slurp(dir / "y" / "timeseries.csv"));
  CHECK(slurp(dir / "x" / "final.vvvf") == slurp(dir / "y" / "final.vvvf"));
}

TEST_CASE("sweep plans") {
  const fs::path dir = scratch("sweep");
  const auto cfg = io::parse_config("model = vvv\nn = 16\ndt = 1e-3\nt_end = 0.01\nalpha = 0\noutput_dir = " +
                                    dir.string() + "\n[sweep]\nexperiment = alpha-zero-reduction\n");
  const auto r = io::run_sweep(cfg);
  CHECK(r.passed);
  CHECK(contains(r.summary, "overall: PASS"));
  CHECK(fs::exists(r.csv));
  CHECK(slurp(r.summary_file) == r.summary);
  CHECK_THROWS_AS(io::run_sweep(io::parse_config(kMinimal)), ConfigError);
  CHECK_THROWS_AS(io::parse_config(std::string(kMinimal) + "[sweep]\nexperiment = nse-deviation\nvalues = 0.1,0.05,0.02\n"),
                  ConfigError);
  CHECK_THROWS_AS(io::parse_config(std::string(kMinimal) + "[sweep]\nexperiment = curl-mismatch\nvalues = 0.1,0.05\n"),
                  ConfigError);
}

TEST_CASE("property check suite passes") {
  const auto results = io::run_property_checks({3, {16}, 1e-12});
  CHECK(results.size() == 6);
  for (const auto& r : results) CHECK_MESSAGE(r.passed(), r.name);
  CHECK(contains(io::format_checks(results), "6/6 checks passed"));
  CHECK_THROWS_AS(io::run_property_checks({0, {16}, 1e-12}), ConfigError);
}
