#pragma once

#include <string>
#include <vector>

#include "stretchlab/config.hpp"
#include "stretchlab/experiment.hpp"

namespace stretchlab {

enum class ReportFormat { Csv, Json, Both };

/// One line per row, numbers as %.17g. A record without rows gives the
/// header alone.
std::string record_csv(const ExperimentRecord& record);

/// Summary with checks, R*, the config echo and provenance. Keys are
/// sorted; no timestamps or host data, so equal inputs give equal bytes.
std::string record_json(const ExperimentRecord& record, const ExperimentConfig& config);

/// Writes <directory>/<prefix>.csv and/or .json and returns the paths.
std::vector<std::string> emit_report(const ExperimentRecord& record, const ExperimentConfig& config,
                                     ReportFormat format = ReportFormat::Both);

/// CSV helpers shared with the command line tool.
std::string csv_number(double x);
std::string csv_field(const std::string& s);

}  // namespace stretchlab
