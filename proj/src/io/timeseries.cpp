#include "io/timeseries.hpp"

#include <charconv>
#include <ostream>

#include "common/error.hpp"

namespace vvv::io {

std::string format_real(double v) {
  char buf[32];
  // 17 significant digits round-trip every double.
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void TimeseriesWriter::append(const diag::DiagnosticsRecord& r) {
  if (rows_ == 0) os_ << kTimeseriesHeader << '\n';
  const double cols[] = {r.t,        r.l2_u,           r.h1_u,           r.l2_w, r.h1_w, r.div_w_l2, r.curl_mismatch_l2,
                         r.curl_mismatch_h1, r.energy_budget_residual, r.blow_up_indicator};
  for (std::size_t i = 0; i < std::size(cols); ++i) {
    if (i) os_ << ',';
    os_ << format_real(cols[i]);
  }
  os_ << '\n';
  if (!os_) throw IoError("failed writing time-series row");
  ++rows_;
}

}  // namespace vvv::io
