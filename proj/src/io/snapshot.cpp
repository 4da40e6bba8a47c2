#include "io/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace vvv::io {

namespace fs = std::filesystem;

namespace {

constexpr std::array<char, 4> kMagic{'V', 'V', 'V', 'F'};

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const char* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
  const std::vector<char>& bytes() const { return buf_; }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  Reader(std::vector<char> data, std::string source) : data_(std::move(data)), source_(std::move(source)) {}
  std::uint8_t u8() {
    need(1, "header");
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::size_t remaining() const { return data_.size() - pos_; }
  void need(std::size_t n, const char* what) const {
    if (remaining() < n)
      throw FormatError(source_ + ": truncated " + what + " (need " + std::to_string(n) + " more bytes, have " +
                        std::to_string(remaining()) + ")");
  }

 private:
  std::vector<char> data_;
  std::string source_;
  std::size_t pos_ = 0;
};

std::vector<char> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path.string() + "'");
  std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return data;
}

SnapshotHeader parse_header(Reader& r, const std::string& source) {
  r.need(4, "magic");
  std::array<char, 4> magic{};
  for (auto& c : magic) c = static_cast<char>(r.u8());
  if (magic != kMagic) throw FormatError(source + ": not a VVVF snapshot (bad magic)");
  SnapshotHeader h;
  h.version = r.u32();
  if (h.version != kSnapshotVersion)
    throw FormatError(source + ": unsupported snapshot version " + std::to_string(h.version) + " (expected " +
                      std::to_string(kSnapshotVersion) + ")");
  h.n = r.u32();
  const std::uint8_t count = r.u8();
  h.alpha = r.f64();
  h.nu = r.f64();
  h.t = r.f64();
  h.order = r.u8();
  h.cutoff = r.u32();
  h.retained = r.u32();
  for (int i = 0; i < count; ++i) {
    const std::uint8_t tag = r.u8();
    if (tag > 5) throw FormatError(source + ": unknown field tag " + std::to_string(tag));
    h.tags.push_back(static_cast<FieldTag>(tag));
  }
  if (h.order != kOrderLexicographicWrap) throw FormatError(source + ": unknown mode order " + std::to_string(h.order));
  if (h.n < 8 || h.n % 2 != 0 || h.cutoff != h.n / 3)
    throw FormatError(source + ": inconsistent grid descriptor (n=" + std::to_string(h.n) +
                      ", cutoff=" + std::to_string(h.cutoff) + ")");
  const std::uint64_t side = 2ULL * h.cutoff + 1;
  if (h.retained != side * side * side - 1)
    throw FormatError(source + ": retained-mode count " + std::to_string(h.retained) + " does not match n=" +
                      std::to_string(h.n));
  return h;
}

}  // namespace

const char* to_string(FieldTag t) {
  static const char* names[] = {"u1", "u2", "u3", "w1", "w2", "w3"};
  return names[static_cast<int>(t)];
}

void write_snapshot(const Snapshot& s, const fs::path& path) {
  const auto& g = s.u.grid();
  if (s.w) spectral::require_same_grid(s.u.grid(), s.w->grid(), "snapshot fields");
  Writer w;
  w.raw(kMagic.data(), kMagic.size());
  w.u32(kSnapshotVersion);
  w.u32(static_cast<std::uint32_t>(g.n()));
  const int count = s.w ? 6 : 3;
  w.u8(static_cast<std::uint8_t>(count));
  w.f64(s.alpha);
  w.f64(s.nu);
  w.f64(s.t);
  w.u8(kOrderLexicographicWrap);
  w.u32(static_cast<std::uint32_t>(g.cutoff()));
  w.u32(static_cast<std::uint32_t>(g.mode_count()));
  for (int i = 0; i < count; ++i) w.u8(static_cast<std::uint8_t>(i));
  auto put = [&](const spectral::VectorField& v) {
    for (int c = 0; c < 3; ++c)
      for (std::size_t r = 0; r < v[c].size(); ++r) {
        w.f64(v[c][r].real());
        w.f64(v[c][r].imag());
      }
  };
  put(s.u);
  if (s.w) put(*s.w);

  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create snapshot '" + path.string() + "'");
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  out.close();
  if (!out) throw IoError("failed writing snapshot '" + path.string() + "'");
}

SnapshotHeader read_snapshot_header(const fs::path& path) {
  Reader r(slurp(path), path.string());
  return parse_header(r, path.string());
}

Snapshot read_snapshot(const fs::path& path, spectral::GridPtr grid) {
  const std::string source = path.string();
  Reader r(slurp(path), source);
  const SnapshotHeader h = parse_header(r, source);
  if (grid && static_cast<std::uint32_t>(grid->n()) != h.n)
    throw GridMismatchError(source + ": snapshot grid n=" + std::to_string(h.n) + " but n=" +
                            std::to_string(grid->n()) + " was requested");
  if (!grid) grid = spectral::Grid::make(static_cast<int>(h.n));

  const std::size_t expected = h.tags.size() * h.retained * 16;
  if (r.remaining() != expected)
    throw FormatError(source + ": payload is " + std::to_string(r.remaining()) + " bytes, expected " +
                      std::to_string(expected) + (r.remaining() < expected ? " (truncated)" : " (trailing data)"));

  Snapshot s;
  s.alpha = h.alpha;
  s.nu = h.nu;
  s.t = h.t;
  s.u = spectral::VectorField(grid);
  spectral::VectorField w(grid);
  bool seen[6] = {};
  for (FieldTag tag : h.tags) {
    const int i = static_cast<int>(tag);
    if (seen[i]) throw FormatError(source + ": duplicate field " + to_string(tag));
    seen[i] = true;
    spectral::ScalarField& dst = i < 3 ? s.u[i] : w[i - 3];
    for (std::size_t k = 0; k < h.retained; ++k) {
      const double re = r.f64();
      const double im = r.f64();
      dst[k] = spectral::Complex(re, im);
    }
  }
  if (!(seen[0] && seen[1] && seen[2])) throw FormatError(source + ": velocity components missing");
  const bool any_w = seen[3] || seen[4] || seen[5];
  if (any_w && !(seen[3] && seen[4] && seen[5])) throw FormatError(source + ": incomplete vorticity");
  if (any_w) s.w = std::move(w);
  return s;
}

std::string describe(const SnapshotHeader& h) {
  std::ostringstream o;
  o.precision(17);
  o << "format: VVVF version " << h.version << '\n';
  o << "n: " << h.n << '\n';
  o << "cutoff: " << h.cutoff << '\n';
  o << "retained modes: " << h.retained << '\n';
  o << "mode order: lexicographic wrap-around\n";
  o << "alpha: " << h.alpha << '\n';
  o << "nu: " << h.nu << '\n';
  o << "t: " << h.t << '\n';
  o << "fields:";
  for (FieldTag t : h.tags) o << ' ' << to_string(t);
  o << '\n';
  o << "payload bytes: " << h.tags.size() * static_cast<std::size_t>(h.retained) * 16 << '\n';
  return o.str();
}

}  // namespace vvv::io
