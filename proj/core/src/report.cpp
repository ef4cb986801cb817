#include "skewlab/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "skewlab/config.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

std::string cell(double v) { return std::isnan(v) ? std::string{} : format_double(v); }

void atomic_write(const std::filesystem::path& path, const std::string& body) {
  if (path.empty()) throw InvalidParams("report: empty output path");
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidParams("report: cannot open " + tmp.string() + " for writing");
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.flush();
    if (!out) throw InvalidParams("report: short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json json_value(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

const std::vector<std::string>& Report::columns() {
  static const std::vector<std::string> cols = {
      "kind",  "eps",  "alpha",   "lambda", "x",       "phi",
      "v_closed", "v_fd", "v_mc", "mc_se",  "v_limit", "abs_err",
      "regime", "C",    "cond_alpha_eps_over_lambda"};
  return cols;
}

std::string Report::to_csv() const {
  std::ostringstream out;
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const ReportRow& r : rows_) {
    out << r.kind << ',' << cell(r.eps) << ',' << cell(r.alpha) << ',' << cell(r.lambda) << ','
        << cell(r.x) << ',' << cell(r.phi) << ',' << cell(r.v_closed) << ',' << cell(r.v_fd)
        << ',' << cell(r.v_mc) << ',' << cell(r.mc_se) << ',' << cell(r.v_limit) << ','
        << cell(r.abs_err) << ',' << r.regime << ',' << cell(r.C) << ','
        << cell(r.cond_alpha_eps_over_lambda) << '\n';
  }
  return out.str();
}

std::string Report::to_json(const ReportMetadata& meta) const {
  nlohmann::json doc;
  nlohmann::json m = nlohmann::json::object();
  if (!meta.tool.empty()) m["tool"] = meta.tool;
  if (!meta.timestamp.empty()) m["timestamp"] = meta.timestamp;
  for (const auto& [k, v] : meta.entries) m[k] = v;
  doc["metadata"] = std::move(m);
  doc["columns"] = columns();
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& r : rows_) {
    nlohmann::json row;
    row["kind"] = r.kind;
    row["eps"] = json_value(r.eps);
    row["alpha"] = json_value(r.alpha);
    row["lambda"] = json_value(r.lambda);
    row["x"] = json_value(r.x);
    row["phi"] = json_value(r.phi);
    row["v_closed"] = json_value(r.v_closed);
    row["v_fd"] = json_value(r.v_fd);
    row["v_mc"] = json_value(r.v_mc);
    row["mc_se"] = json_value(r.mc_se);
    row["v_limit"] = json_value(r.v_limit);
    row["abs_err"] = json_value(r.abs_err);
    row["regime"] = r.regime;
    row["C"] = json_value(r.C);
    row["cond_alpha_eps_over_lambda"] = json_value(r.cond_alpha_eps_over_lambda);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void Report::write_csv(const std::filesystem::path& path) const { atomic_write(path, to_csv()); }

void Report::write_json(const std::filesystem::path& path, const ReportMetadata& meta) const {
  atomic_write(path, to_json(meta));
}

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace skewlab
