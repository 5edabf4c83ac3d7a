#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "dyngraph/error.hpp"
#include "dyngraph/experiment.hpp"

namespace dyngraph {

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw Error(Errc::ConfigError, "unknown report format '" + name + "'");
}

namespace {

bool with_iterations(const Report& report) { return report.config.algorithm == Algorithm::PageRank; }

std::string render_csv(const Report& report) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "batch_idx,t_dynamic_ms,t_static_ms,cum_dynamic,cum_static,s,checksum";
  if (with_iterations(report)) out << ",iterations_dynamic,iterations_static";
  out << '\n';
  for (const BatchRow& r : report.rows) {
    out << r.batch_idx << ',' << r.t_dynamic_ms << ',' << r.t_static_ms << ',' << r.cum_dynamic << ','
        << r.cum_static << ',' << r.s << ',' << r.checksum;
    if (with_iterations(report)) out << ',' << r.iterations_dynamic << ',' << r.iterations_static;
    out << '\n';
  }
  return out.str();
}

std::string render_json(const Report& report) {
  const ExperimentConfig& c = report.config;
  nlohmann::ordered_json doc;
  doc["algo"] = algorithm_name(c.algorithm);
  doc["mode"] = mode_name(c.mode);
  doc["seed"] = c.seed;
  doc["batch_size"] = c.batch_size;
  doc["batches"] = c.batch_count;
  doc["group_width"] = c.width;
  doc["vertex_n"] = report.vertex_n;
  doc["base_edges"] = report.base_edges;
  doc["t_base_static_ms"] = report.t_base_static_ms;
  doc["base_checksum"] = report.base_checksum;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const BatchRow& r : report.rows) {
    nlohmann::ordered_json row{{"batch_idx", r.batch_idx},     {"t_dynamic_ms", r.t_dynamic_ms},
                               {"t_static_ms", r.t_static_ms}, {"cum_dynamic", r.cum_dynamic},
                               {"cum_static", r.cum_static},   {"s", r.s},
                               {"checksum", r.checksum}};
    if (with_iterations(report)) {
      row["iterations_dynamic"] = r.iterations_dynamic;
      row["iterations_static"] = r.iterations_static;
    }
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

}  // namespace

std::string render_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::Csv ? render_csv(report) : render_json(report);
}

void write_report(const Report& report, const std::string& path, ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out << render_report(report, format);
  if (!out) throw Error(Errc::IoError, "write to " + path + " failed");
}

}  // namespace dyngraph
