#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cli/run_config.hpp"

namespace qwalk::cli {

using ojson = nlohmann::ordered_json;

/// A flat numeric table plus metadata echoed into every output file.
struct Document {
  ojson metadata = ojson::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// extra top-level JSON members (JSON output only)
  ojson extra = ojson::object();
};

/// 17 significant digits, locale independent.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// RFC 4180 field: quoted when it holds a comma, quote or line break.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

inline std::string metadata_value(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

inline std::string render_csv(const Document& doc) {
  std::ostringstream os;
  for (const auto& [key, value] : doc.metadata.items()) {
    os << "# " << key << ": " << metadata_value(value) << "\n";
  }
  for (std::size_t i = 0; i < doc.columns.size(); ++i) {
    os << (i ? "," : "") << csv_field(doc.columns[i]);
  }
  os << "\n";
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << "\n";
  }
  return os.str();
}

inline std::string render_json(const Document& doc) {
  ojson root = ojson::object();
  root["metadata"] = doc.metadata;
  ojson records = ojson::array();
  for (const auto& row : doc.rows) {
    ojson rec = ojson::object();
    for (std::size_t i = 0; i < doc.columns.size(); ++i) rec[doc.columns[i]] = row[i];
    records.push_back(std::move(rec));
  }
  root["records"] = std::move(records);
  for (const auto& [key, value] : doc.extra.items()) root[key] = value;
  return root.dump(2) + "\n";
}

inline std::string render(const Document& doc, OutputFormat f) {
  return f == OutputFormat::csv ? render_csv(doc) : render_json(doc);
}

/// Writes to `path`, or stdout when empty.  Returns io_error on failure.
inline ExitCode write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return std::cout ? ExitCode::ok : ExitCode::io_error;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return ExitCode::io_error;
  }
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: failed writing '" << path << "'\n";
    return ExitCode::io_error;
  }
  return ExitCode::ok;
}

}  // namespace qwalk::cli
