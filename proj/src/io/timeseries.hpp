#pragma once

#include <iosfwd>
#include <string>

#include "diagnostics/diagnostics.hpp"

namespace vvv::io {

/// Column order of the time-series CSV.
inline constexpr const char* kTimeseriesHeader =
    "t,l2_u,h1_u,l2_w,h1_w,div_w_l2,curl_mismatch_l2,curl_mismatch_h1,energy_budget_residual,blow_up_indicator";

/// 17 significant digits, locale independent.
std::string format_real(double v);

/// Appends rows to a CSV stream, writing the header before the first row.
class TimeseriesWriter {
 public:
  explicit TimeseriesWriter(std::ostream& os) : os_(os) {}
  /// Throws IoError when the stream goes bad.
  void append(const diag::DiagnosticsRecord& r);
  long rows() const { return rows_; }

 private:
  std::ostream& os_;
  long rows_ = 0;
};

}  // namespace vvv::io
