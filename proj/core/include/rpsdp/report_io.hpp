#pragma once

#include "rpsdp/experiment.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace rpsdp {

/// Bumped whenever the column list changes.
inline constexpr int kReportSchemaVersion = 1;

/// Fixed column order of the projection report. Missing values print as '-' in
/// CSV and null in JSON; numbers use shortest round-trip formatting in both.
const std::vector<std::string>& report_columns();

void write_reports_csv(std::ostream& os, const std::vector<ProjectionReport>& rows);
void write_reports_json(std::ostream& os, const std::vector<ProjectionReport>& rows);
/// Parses the CSV produced by write_reports_csv.
std::vector<ProjectionReport> read_reports_csv(std::istream& is);

void write_quality_csv(std::ostream& os, const std::vector<QualityPoint>& pts, const std::string& x_name);
void write_quality_json(std::ostream& os, const std::vector<QualityPoint>& pts, const std::string& x_name);

void write_feasibility_csv(std::ostream& os, const std::vector<FeasibilityCell>& cells);
void write_feasibility_json(std::ostream& os, const std::vector<FeasibilityCell>& cells);

/// Writes to `path`, or to `fallback` when path is empty.
void write_output(const std::string& path, std::ostream& fallback, const std::string& text);

}  // namespace rpsdp
