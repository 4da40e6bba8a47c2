#include "io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "common/error.hpp"

namespace vvv::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v, int line) {
  double out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out))
    fail(line, "'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  return out;
}

long long to_integer(std::string_view key, std::string_view v, int line) {
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    fail(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
  return out;
}

int to_int(std::string_view key, std::string_view v, int line) {
  const long long x = to_integer(key, v, line);
  if (x < -(1LL << 30) || x > (1LL << 30)) fail(line, "'" + std::string(key) + "' is out of range");
  return static_cast<int>(x);
}

bool to_bool(std::string_view key, std::string_view v, int line) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(line, "'" + std::string(key) + "' expects true or false, got '" + std::string(v) + "'");
}

template <class E>
E to_enum(std::string_view key, std::string_view v, int line, std::initializer_list<std::pair<const char*, E>> names) {
  std::string allowed;
  for (const auto& [name, value] : names) {
    if (v == name) return value;
    allowed += allowed.empty() ? name : std::string("|") + name;
  }
  fail(line, "'" + std::string(key) + "' must be one of " + allowed + ", got '" + std::string(v) + "'");
}

std::vector<double> to_list(std::string_view key, std::string_view v, int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const auto item = trim(v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) fail(line, "'" + std::string(key) + "' has an empty list entry");
    out.push_back(to_double(key, item, line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Key {
  const char* section;
  std::function<void(RunConfig&, std::string_view, int)> set;
};

#define VVV_NUM(field) [](RunConfig& c, std::string_view v, int l) { c.field = to_double(#field, v, l); }
#define VVV_INT(field) [](RunConfig& c, std::string_view v, int l) { c.field = to_int(#field, v, l); }
#define VVV_SEED(field)                                                          \
  [](RunConfig& c, std::string_view v, int l) {                                  \
    const long long s = to_integer(#field, v, l);                                \
    if (s < 0) fail(l, "'" #field "' must be >= 0");                             \
    c.field = static_cast<std::uint64_t>(s);                                     \
  }
#define VVV_PATH(field) [](RunConfig& c, std::string_view v, int) { c.field = fs::path(std::string(v)); }

const std::map<std::string, Key, std::less<>>& key_table() {
  using experiments::ReferencePolicy;
  using experiments::SweepVariable;
  static const std::map<std::string, Key, std::less<>> table{
      {"model",
       {"model",
        [](RunConfig& c, std::string_view v, int l) {
          c.model = to_enum<models::Model>("model", v, l, {{"vvv", models::Model::vvv}, {"nse", models::Model::nse}});
        }}},
      {"nu", {"model", VVV_NUM(nu)}},
      {"alpha", {"model", VVV_NUM(alpha)}},
      {"nonlinear", {"model", [](RunConfig& c, std::string_view v, int l) { c.nonlinear = to_bool("nonlinear", v, l); }}},
      {"u0",
       {"model",
        [](RunConfig& c, std::string_view v, int l) {
          c.u0 = to_enum<U0Kind>("u0", v, l,
                                 {{"taylor-green", U0Kind::taylor_green},
                                  {"snapshot", U0Kind::snapshot},
                                  {"random-smooth", U0Kind::random_smooth}});
        }}},
      {"u0_path", {"model", VVV_PATH(u0_path)}},
      {"u0_seed", {"model", VVV_SEED(u0_seed)}},
      {"u0_mode_cutoff", {"model", VVV_INT(u0_mode_cutoff)}},
      {"u0_amplitude", {"model", VVV_NUM(u0_amplitude)}},
      {"w0",
       {"model",
        [](RunConfig& c, std::string_view v, int l) {
          c.w0 = to_enum<W0Kind>("w0", v, l,
                                 {{"curl-of-u0", W0Kind::curl_of_u0},
                                  {"snapshot", W0Kind::snapshot},
                                  {"perturbed-divergence", W0Kind::perturbed_divergence}});
        }}},
      {"w0_path", {"model", VVV_PATH(w0_path)}},
      {"w0_seed", {"model", VVV_SEED(w0_seed)}},
      {"w0_amplitude", {"model", VVV_NUM(w0_amplitude)}},
      {"forcing",
       {"model",
        [](RunConfig& c, std::string_view v, int l) {
          c.forcing = to_enum<ForcingKind>("forcing", v, l,
                                           {{"none", ForcingKind::none},
                                            {"taylor-green", ForcingKind::taylor_green},
                                            {"modulated-taylor-green", ForcingKind::modulated_taylor_green}});
        }}},
      {"forcing_amplitude", {"model", VVV_NUM(forcing_amplitude)}},
      {"forcing_frequency", {"model", VVV_NUM(forcing_frequency)}},
      {"n", {"grid", VVV_INT(n)}},
      {"dt", {"time", VVV_NUM(dt)}},
      {"t_end", {"time", VVV_NUM(t_end)}},
      {"diagnostics_every", {"output", VVV_INT(diagnostics_every)}},
      {"snapshot_every", {"output", VVV_INT(snapshot_every)}},
      {"output_dir", {"output", VVV_PATH(output_dir)}},
      {"threads", {"output", VVV_INT(threads)}},
      {"experiment",
       {"sweep",
        [](RunConfig& c, std::string_view v, int l) {
          c.sweep.experiment = to_enum<ExperimentKind>("experiment", v, l,
                                                       {{"curl-mismatch", ExperimentKind::curl_mismatch},
                                                        {"nse-deviation", ExperimentKind::nse_deviation},
                                                        {"energy-dt", ExperimentKind::energy_dt},
                                                        {"alpha-zero-reduction", ExperimentKind::alpha_zero_reduction}});
        }}},
      {"variable",
       {"sweep",
        [](RunConfig& c, std::string_view v, int l) {
          c.sweep.variable = to_enum<SweepVariable>(
              "variable", v, l, {{"alpha", SweepVariable::alpha}, {"dt", SweepVariable::dt}, {"n", SweepVariable::n}});
        }}},
      {"values", {"sweep", [](RunConfig& c, std::string_view v, int l) { c.sweep.values = to_list("values", v, l); }}},
      {"reference",
       {"sweep",
        [](RunConfig& c, std::string_view v, int l) {
          c.sweep.reference = to_enum<ReferencePolicy>("reference", v, l,
                                                       {{"analytic", ReferencePolicy::analytic},
                                                        {"finest-member", ReferencePolicy::finest_member},
                                                        {"nse", ReferencePolicy::nse}});
        }}},
      {"min_order", {"sweep", [](RunConfig& c, std::string_view v, int l) { c.sweep.min_order = to_double("min_order", v, l); }}},
      {"max_order", {"sweep", [](RunConfig& c, std::string_view v, int l) { c.sweep.max_order = to_double("max_order", v, l); }}},
      {"parallel", {"sweep", [](RunConfig& c, std::string_view v, int l) { c.sweep.parallel = to_int("parallel", v, l); }}},
  };
  return table;
}

#undef VVV_NUM
#undef VVV_INT
#undef VVV_SEED
#undef VVV_PATH

using LineMap = std::map<std::string, int, std::less<>>;

int line_of(const LineMap& lines, const char* key) {
  const auto it = lines.find(key);
  return it == lines.end() ? 0 : it->second;
}

fs::path resolve(const fs::path& p, const fs::path& base) { return (p.is_absolute() ? p : base / p).lexically_normal(); }

void validate(RunConfig& c, const LineMap& lines, const fs::path& base) {
  for (const char* req : {"model", "n", "dt", "t_end"})
    if (!lines.contains(req)) fail(0, std::string("missing required key '") + req + "'");
  auto check = [&](bool ok, const char* key, const std::string& msg) {
    if (!ok) fail(line_of(lines, key), msg);
  };
  check(c.n >= 8 && c.n % 2 == 0, "n", "n must be an even integer >= 8 (got " + std::to_string(c.n) + ")");
  check(c.nu > 0.0, "nu", "nu must be > 0");
  check(c.alpha >= 0.0, "alpha", "alpha must be >= 0");
  check(c.dt > 0.0, "dt", "dt must be > 0");
  check(c.t_end >= 0.0, "t_end", "t_end must be >= 0");
  check(c.diagnostics_every >= 1, "diagnostics_every", "diagnostics_every must be >= 1");
  check(c.snapshot_every >= 0, "snapshot_every", "snapshot_every must be >= 0");
  check(c.threads >= 0, "threads", "threads must be >= 0 (0 = auto)");
  check(c.u0_amplitude >= 0.0, "u0_amplitude", "u0_amplitude must be >= 0");
  check(c.u0_mode_cutoff >= 0, "u0_mode_cutoff", "u0_mode_cutoff must be >= 0 (0 = grid cutoff)");
  check(c.w0_amplitude >= 0.0, "w0_amplitude", "w0_amplitude must be >= 0");
  check(c.forcing_frequency >= 0.0, "forcing_frequency", "forcing_frequency must be >= 0");
  check(!c.output_dir.empty(), "output_dir", "output_dir must not be empty");

  if (c.u0 == U0Kind::random_smooth)
    check(c.u0_seed.has_value(), "u0", "u0 = random-smooth requires u0_seed");
  if (c.w0 == W0Kind::perturbed_divergence)
    check(c.w0_seed.has_value(), "w0", "w0 = perturbed-divergence requires w0_seed");
  if (c.model == models::Model::nse)
    check(c.w0 == W0Kind::curl_of_u0, "w0", "the nse model evolves no separate vorticity; w0 must be curl-of-u0");

  auto require_file = [&](fs::path& p, const char* key, const char* owner) {
    check(!p.empty(), owner, std::string(owner) + " = snapshot requires " + key);
    p = resolve(p, base);
    check(fs::is_regular_file(p), key, std::string(key) + " '" + p.string() + "' does not exist");
  };
  if (c.u0 == U0Kind::snapshot) require_file(c.u0_path, "u0_path", "u0");
  if (c.w0 == W0Kind::snapshot) require_file(c.w0_path, "w0_path", "w0");
  c.output_dir = resolve(c.output_dir, base);

  auto& s = c.sweep;
  check(s.parallel >= 1, "parallel", "parallel must be >= 1");
  if (s.experiment != ExperimentKind::none && s.experiment != ExperimentKind::alpha_zero_reduction) {
    check(s.values.size() >= 3, "values", "sweep needs at least 3 values");
    for (double v : s.values) check(v > 0.0, "values", "sweep values must be positive");
  }
  if (s.experiment == ExperimentKind::energy_dt)
    check(s.variable == experiments::SweepVariable::dt, "variable", "experiment energy-dt sweeps variable = dt");
  if (s.experiment == ExperimentKind::curl_mismatch || s.experiment == ExperimentKind::nse_deviation)
    check(s.variable == experiments::SweepVariable::alpha, "variable", "alpha sweeps need variable = alpha");
  if (s.experiment == ExperimentKind::nse_deviation)
    check(s.reference == experiments::ReferencePolicy::nse, "reference", "experiment nse-deviation needs reference = nse");
}

void set_key(RunConfig& c, std::string_view key, std::string_view value, int line, const std::string& section) {
  const auto& table = key_table();
  const auto it = table.find(key);
  if (it == table.end()) fail(line, "unknown key '" + std::string(key) + "'");
  if (!section.empty() && section != it->second.section)
    fail(line, "key '" + std::string(key) + "' belongs in [" + it->second.section + "], not [" + section + "]");
  if (value.empty()) fail(line, "key '" + std::string(key) + "' has no value");
  it->second.set(c, value, line);
}

}  // namespace

int RunConfig::resolved_threads() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

models::SchemeConfig RunConfig::scheme() const {
  models::SchemeConfig s;
  s.dt = dt;
  s.t_end = t_end;
  s.diagnostics_every = diagnostics_every;
  s.snapshot_every = snapshot_every;
  s.nonlinear = nonlinear;
  return s;
}

RunConfig parse_config(std::string_view text, const fs::path& base_dir) {
  RunConfig cfg;
  LineMap lines;
  std::string section;
  static const char* sections[] = {"model", "grid", "time", "output", "sweep"};
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (std::find(std::begin(sections), std::end(sections), name) == std::end(sections))
        fail(line_no, "unknown section [" + name + "]");
      section = name;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "missing key before '='");
    if (const auto seen = lines.find(key); seen != lines.end())
      fail(line_no, "duplicate key '" + std::string(key) + "' (first set on line " + std::to_string(seen->second) +
                        ", again on line " + std::to_string(line_no) + ")");
    set_key(cfg, key, value, line_no, section);
    lines.emplace(std::string(key), line_no);
  }
  validate(cfg, lines, base_dir);
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.has_parent_path() ? path.parent_path() : fs::path("."));
}

void apply_override(RunConfig& cfg, std::string_view key, std::string_view value, const fs::path& base_dir) {
  RunConfig next = cfg;
  set_key(next, key, value, 0, "");
  LineMap lines{{"model", 0}, {"n", 0}, {"dt", 0}, {"t_end", 0}};
  validate(next, lines, base_dir);
  cfg = std::move(next);
}

namespace {

// Shortest text that reads back to the same double.
struct Real {
  double v;
  friend std::ostream& operator<<(std::ostream& os, Real r) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, r.v);
    return os.write(buf, res.ptr - buf);
  }
};

}  // namespace

std::string to_text(const RunConfig& c) {
  std::ostringstream o;
  auto name = [](auto v, std::initializer_list<const char*> names) { return *(names.begin() + static_cast<int>(v)); };
  o << "[model]\n";
  o << "model = " << (c.model == models::Model::vvv ? "vvv" : "nse") << '\n';
  o << "nu = " << Real{c.nu} << "\nalpha = " << Real{c.alpha} << '\n';
  o << "nonlinear = " << (c.nonlinear ? "true" : "false") << '\n';
  o << "u0 = " << name(c.u0, {"taylor-green", "snapshot", "random-smooth"}) << '\n';
  if (!c.u0_path.empty()) o << "u0_path = " << c.u0_path.string() << '\n';
  if (c.u0_seed) o << "u0_seed = " << *c.u0_seed << '\n';
  o << "u0_mode_cutoff = " << c.u0_mode_cutoff << "\nu0_amplitude = " << Real{c.u0_amplitude} << '\n';
  o << "w0 = " << name(c.w0, {"curl-of-u0", "snapshot", "perturbed-divergence"}) << '\n';
  if (!c.w0_path.empty()) o << "w0_path = " << c.w0_path.string() << '\n';
  if (c.w0_seed) o << "w0_seed = " << *c.w0_seed << '\n';
  o << "w0_amplitude = " << Real{c.w0_amplitude} << '\n';
  o << "forcing = " << name(c.forcing, {"none", "taylor-green", "modulated-taylor-green"}) << '\n';
  o << "forcing_amplitude = " << Real{c.forcing_amplitude} << "\nforcing_frequency = " << Real{c.forcing_frequency} << '\n';
  o << "\n[grid]\nn = " << c.n << '\n';
  o << "\n[time]\ndt = " << Real{c.dt} << "\nt_end = " << Real{c.t_end} << '\n';
  o << "\n[output]\ndiagnostics_every = " << c.diagnostics_every << "\nsnapshot_every = " << c.snapshot_every << '\n';
  o << "output_dir = " << c.output_dir.string() << "\nthreads = " << c.threads << '\n';
  if (c.sweep.experiment != ExperimentKind::none) {
    o << "\n[sweep]\nexperiment = "
      << name(c.sweep.experiment, {"none", "curl-mismatch", "nse-deviation", "energy-dt", "alpha-zero-reduction"}) << '\n';
    o << "variable = " << experiments::to_string(c.sweep.variable) << '\n';
    if (!c.sweep.values.empty()) {
      o << "values = ";
      for (std::size_t i = 0; i < c.sweep.values.size(); ++i) o << (i ? ", " : "") << Real{c.sweep.values[i]};
      o << '\n';
    }
    o << "reference = " << experiments::to_string(c.sweep.reference) << '\n';
    if (c.sweep.min_order) o << "min_order = " << Real{*c.sweep.min_order} << '\n';
    if (c.sweep.max_order) o << "max_order = " << Real{*c.sweep.max_order} << '\n';
    o << "parallel = " << c.sweep.parallel << '\n';
  }
  return o.str();
}

}  // namespace vvv::io
