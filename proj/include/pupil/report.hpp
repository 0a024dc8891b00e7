#ifndef PUPIL_REPORT_HPP
#define PUPIL_REPORT_HPP

#include <string>
#include <vector>

#include "pupil/eval.hpp"

namespace pupil {

enum class OutputFormat { csv, json };

// Output formatting is part of the interface: fixed headers and column
// order, coordinates with 2 decimals, d and efficiency with 4, d_max with 3.

std::string format_coord(double v);
std::string format_ratio(double v);
std::string format_dmax(double v);

/// Header image_id,algo,lx,ly,rx,ry,d,status; with timing the columns
/// left_ms,right_ms are appended. Missing values are empty fields.
std::string records_csv(const std::vector<EvalRecord>& records, bool timing);

/// Header algo,dmax,efficiency,evaluated.
std::string summary_csv(const std::vector<EfficiencyCurve>& curves);

/// Header algo,dmax,efficiency.
std::string curve_csv(const std::vector<EfficiencyCurve>& curves);

std::string records_json(const std::vector<EvalRecord>& records, bool timing);
std::string summary_json(const std::vector<EfficiencyCurve>& curves);
std::string curve_json(const std::vector<EfficiencyCurve>& curves);

}  // namespace pupil

#endif
