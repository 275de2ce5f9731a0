#include "rpsdp/report_io.hpp"

#include "rpsdp/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

namespace rpsdp {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "-"; }

Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << '\n';
}

// One logical CSV record; quoted fields may span lines.
bool read_record(std::istream& is, std::vector<std::string>& fields) {
  fields.clear();
  std::string cur;
  bool quoted = false, any = false;
  char c;
  while (is.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (is.peek() == '"') {
          is.get(c);
          cur += '"';
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '"') quoted = true;
    else if (c == ',') fields.push_back(std::move(cur)), cur.clear();
    else if (c == '\r') continue;
    else if (c == '\n') break;
    else cur += c;
  }
  if (!any) return false;
  fields.push_back(std::move(cur));
  return true;
}

std::vector<std::string> report_fields(const ProjectionReport& r) {
  return {std::to_string(kReportSchemaVersion),
          r.instance_id,
          r.task,
          std::to_string(r.n),
          std::to_string(r.m),
          std::to_string(r.items),
          std::to_string(r.k),
          r.projector,
          num(r.gamma),
          std::to_string(r.seed),
          num(r.time_orig_s),
          num(r.time_sample_s),
          num(r.time_project_s),
          num(r.time_proj_solve_s),
          opt(r.obj_orig),
          opt(r.obj_proj_lifted),
          opt(r.rel_time_pct),
          opt(r.rel_quality_pct),
          opt(r.rel_quality_raw_pct),
          r.status_orig,
          r.status_proj,
          opt(r.lift_residual),
          opt(r.lift_min_eigenvalue),
          std::to_string(r.iterations_orig),
          std::to_string(r.iterations_proj),
          r.error};
}

double parse_num(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw Error(ErrorKind::Io, "bad number in report: " + s);
  return v;
}

std::optional<double> parse_opt(const std::string& s) {
  if (s == "-") return std::nullopt;
  return parse_num(s);
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "format_version", "instance_id",       "task",           "n",
      "m",              "items",             "k",              "projector",
      "gamma",          "seed",              "time_orig_s",    "time_sample_s",
      "time_project_s", "time_proj_solve_s", "obj_orig",       "obj_proj_lifted",
      "rel_time_pct",   "rel_quality_pct",   "rel_quality_raw_pct", "status_orig",
      "status_proj",    "lift_residual",     "lift_min_eigenvalue", "iterations_orig",
      "iterations_proj", "error"};
  return cols;
}

void write_reports_csv(std::ostream& os, const std::vector<ProjectionReport>& rows) {
  write_row(os, report_columns());
  for (const auto& r : rows) write_row(os, report_fields(r));
}

void write_reports_json(std::ostream& os, const std::vector<ProjectionReport>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["format_version"] = kReportSchemaVersion;
    j["instance_id"] = r.instance_id;
    j["task"] = r.task;
    j["n"] = r.n;
    j["m"] = r.m;
    j["items"] = r.items;
    j["k"] = r.k;
    j["projector"] = r.projector;
    j["gamma"] = r.gamma;
    j["seed"] = r.seed;
    j["time_orig_s"] = r.time_orig_s;
    j["time_sample_s"] = r.time_sample_s;
    j["time_project_s"] = r.time_project_s;
    j["time_proj_solve_s"] = r.time_proj_solve_s;
    j["obj_orig"] = opt_json(r.obj_orig);
    j["obj_proj_lifted"] = opt_json(r.obj_proj_lifted);
    j["rel_time_pct"] = opt_json(r.rel_time_pct);
    j["rel_quality_pct"] = opt_json(r.rel_quality_pct);
    j["rel_quality_raw_pct"] = opt_json(r.rel_quality_raw_pct);
    j["status_orig"] = r.status_orig;
    j["status_proj"] = r.status_proj;
    j["lift_residual"] = opt_json(r.lift_residual);
    j["lift_min_eigenvalue"] = opt_json(r.lift_min_eigenvalue);
    j["iterations_orig"] = r.iterations_orig;
    j["iterations_proj"] = r.iterations_proj;
    j["error"] = r.error;
    arr.push_back(std::move(j));
  }
  os << arr.dump(2) << '\n';
}

std::vector<ProjectionReport> read_reports_csv(std::istream& is) {
  std::vector<std::string> f;
  if (!read_record(is, f) || f != report_columns()) throw Error(ErrorKind::Io, "unexpected report header");
  std::vector<ProjectionReport> rows;
  while (read_record(is, f)) {
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != report_columns().size()) throw Error(ErrorKind::Io, "report row has the wrong column count");
    if (f[0] != std::to_string(kReportSchemaVersion)) throw Error(ErrorKind::Io, "unsupported report version " + f[0]);
    ProjectionReport r;
    std::size_t i = 1;
    r.instance_id = f[i++];
    r.task = f[i++];
    r.n = static_cast<Index>(parse_num(f[i++]));
    r.m = static_cast<Index>(parse_num(f[i++]));
    r.items = static_cast<Index>(parse_num(f[i++]));
    r.k = static_cast<Index>(parse_num(f[i++]));
    r.projector = f[i++];
    r.gamma = parse_num(f[i++]);
    r.seed = std::stoull(f[i++]);
    r.time_orig_s = parse_num(f[i++]);
    r.time_sample_s = parse_num(f[i++]);
    r.time_project_s = parse_num(f[i++]);
    r.time_proj_solve_s = parse_num(f[i++]);
    r.obj_orig = parse_opt(f[i++]);
    r.obj_proj_lifted = parse_opt(f[i++]);
    r.rel_time_pct = parse_opt(f[i++]);
    r.rel_quality_pct = parse_opt(f[i++]);
    r.rel_quality_raw_pct = parse_opt(f[i++]);
    r.status_orig = f[i++];
    r.status_proj = f[i++];
    r.lift_residual = parse_opt(f[i++]);
    r.lift_min_eigenvalue = parse_opt(f[i++]);
    r.iterations_orig = static_cast<int>(parse_num(f[i++]));
    r.iterations_proj = static_cast<int>(parse_num(f[i++]));
    r.error = f[i++];
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_quality_csv(std::ostream& os, const std::vector<QualityPoint>& pts, const std::string& x_name) {
  write_row(os, {x_name, "runs", "optimal", "geometric_mean_quality_pct", "mean_quality_pct", "std_error"});
  for (const auto& p : pts)
    write_row(os, {num(p.x), std::to_string(p.runs), std::to_string(p.optimal), num(p.geometric_mean), num(p.mean),
                   num(p.std_error)});
}

void write_quality_json(std::ostream& os, const std::vector<QualityPoint>& pts, const std::string& x_name) {
  Json arr = Json::array();
  for (const auto& p : pts) {
    Json j;
    j[x_name] = p.x;
    j["runs"] = p.runs;
    j["optimal"] = p.optimal;
    j["geometric_mean_quality_pct"] = p.geometric_mean;
    j["mean_quality_pct"] = p.mean;
    j["std_error"] = p.std_error;
    arr.push_back(std::move(j));
  }
  os << arr.dump(2) << '\n';
}

void write_feasibility_csv(std::ostream& os, const std::vector<FeasibilityCell>& cells) {
  write_row(os, {"n", "ratio", "projection_ratio", "instances", "feasible", "infeasible", "indeterminate",
                 "proportion_pct", "time_s"});
  for (const auto& c : cells)
    write_row(os, {std::to_string(c.n), num(c.ratio), num(c.projection_ratio), std::to_string(c.instances),
                   std::to_string(c.feasible), std::to_string(c.infeasible), std::to_string(c.indeterminate),
                   num(c.proportion_pct), num(c.time_s)});
}

void write_feasibility_json(std::ostream& os, const std::vector<FeasibilityCell>& cells) {
  Json arr = Json::array();
  for (const auto& c : cells) {
    Json j;
    j["n"] = c.n;
    j["ratio"] = c.ratio;
    j["projection_ratio"] = c.projection_ratio;
    j["instances"] = c.instances;
    j["feasible"] = c.feasible;
    j["infeasible"] = c.infeasible;
    j["indeterminate"] = c.indeterminate;
    j["proportion_pct"] = c.proportion_pct;
    j["time_s"] = c.time_s;
    arr.push_back(std::move(j));
  }
  os << arr.dump(2) << '\n';
}

void write_output(const std::string& path, std::ostream& fallback, const std::string& text) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace rpsdp
