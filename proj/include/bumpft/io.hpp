#pragma once

// CSV / JSON serialization of sweep records, decay fits and saddle data.
// Every number is written with 17 significant digits so files round-trip
// bit-exactly through strtod.

#include <bumpft/harness.hpp>
#include <bumpft/saddle.hpp>

#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bumpft {

enum class Format { csv, json };

inline constexpr std::string_view kCsvHeader = "k,f_numeric,f_asymptotic,abs_err,rel_err,quad_abs_error,n_evals";

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {
// JSON has no inf/nan literals.
inline std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }
}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_double(r.k) << ',' << format_double(r.f_numeric) << ',' << format_double(r.f_asymptotic)
        << ',' << format_double(r.abs_err) << ',' << format_double(r.rel_err) << ','
        << format_double(r.quad_abs_error) << ',' << r.n_evals << '\n';
  }
}

inline void write_json(std::ostream& out, const std::vector<SweepRecord>& records) {
  using detail::json_number;
  out << "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out << (i ? ",\n " : "\n ") << "{\"k\": " << json_number(r.k) << ", \"f_numeric\": " << json_number(r.f_numeric)
        << ", \"f_asymptotic\": " << json_number(r.f_asymptotic) << ", \"abs_err\": " << json_number(r.abs_err)
        << ", \"rel_err\": " << json_number(r.rel_err) << ", \"quad_abs_error\": " << json_number(r.quad_abs_error)
        << ", \"n_evals\": " << r.n_evals << "}";
  }
  out << (records.empty() ? "]\n" : "\n]\n");
}

inline void write_json(std::ostream& out, const DecayFit& fit) {
  using detail::json_number;
  out << "{\"p_exponent\": " << json_number(fit.p_exponent) << ", \"c_root\": " << json_number(fit.c_root)
      << ", \"log_amplitude\": " << json_number(fit.log_amplitude)
      << ", \"residual_rms\": " << json_number(fit.residual_rms)
      << ", \"growth_power\": " << json_number(fit.growth_power) << ", \"n_points\": " << fit.n_points << "}\n";
}

inline void write_json(std::ostream& out, const SaddleData& s) {
  using detail::json_number;
  auto complex = [](ComplexScalar z) {
    return "{\"re\": " + json_number(z.real()) + ", \"im\": " + json_number(z.imag()) + "}";
  };
  out << "{\"k\": " << json_number(s.k) << ", \"t0\": " << complex(s.t0) << ", \"g_at_t0\": " << complex(s.g_at_t0)
      << ", \"g2_at_t0\": " << complex(s.g2_at_t0) << ", \"a_coeff\": " << json_number(s.a_coeff) << "}\n";
}

inline void emit(const std::vector<SweepRecord>& records, Format format, std::ostream& out) {
  if (format == Format::csv) {
    write_csv(out, records);
  } else {
    write_json(out, records);
  }
}

/// Writes records to `path`; I/O failures name the path.
inline void emit(const std::vector<SweepRecord>& records, Format format, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit(records, format, file);
  file.flush();
  if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

namespace detail {

inline double parse_double(const std::string& field, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": not a number: '" + field + "'");
  }
  return v;
}

inline std::size_t parse_count(const std::string& field, std::size_t line) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(field.c_str(), &end, 10);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": not a count: '" + field + "'");
  }
  return static_cast<std::size_t>(v);
}

inline double json_double(const nlohmann::json& v) {
  return v.is_null() ? std::nan("") : v.get<double>();
}

}  // namespace detail

inline std::vector<SweepRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header: '" + line + "'");
  std::vector<SweepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                               std::to_string(fields.size()));
    }
    SweepRecord r;
    r.k = detail::parse_double(fields[0], line_no);
    r.f_numeric = detail::parse_double(fields[1], line_no);
    r.f_asymptotic = detail::parse_double(fields[2], line_no);
    r.abs_err = detail::parse_double(fields[3], line_no);
    r.rel_err = detail::parse_double(fields[4], line_no);
    r.quad_abs_error = detail::parse_double(fields[5], line_no);
    r.n_evals = detail::parse_count(fields[6], line_no);
    records.push_back(r);
  }
  return records;
}

inline std::vector<SweepRecord> read_json(std::istream& in) {
  const nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_array()) throw std::runtime_error("JSON sweep input must be an array of records");
  std::vector<SweepRecord> records;
  records.reserve(doc.size());
  for (const auto& row : doc) {
    SweepRecord r;
    r.k = detail::json_double(row.at("k"));
    r.f_numeric = detail::json_double(row.at("f_numeric"));
    r.f_asymptotic = detail::json_double(row.at("f_asymptotic"));
    r.abs_err = detail::json_double(row.at("abs_err"));
    r.rel_err = detail::json_double(row.at("rel_err"));
    r.quad_abs_error = detail::json_double(row.at("quad_abs_error"));
    r.n_evals = row.at("n_evals").get<std::size_t>();
    records.push_back(r);
  }
  return records;
}

/// Reads CSV or JSON records, chosen by the first non-blank character.
inline std::vector<SweepRecord> read_records(std::istream& in) {
  in >> std::ws;
  return in.peek() == '[' ? read_json(in) : read_csv(in);
}

inline std::vector<SweepRecord> read_records(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for reading");
  try {
    return read_records(file);
  } catch (const std::exception& e) {
    throw std::runtime_error("'" + path + "': " + e.what());
  }
}

}  // namespace bumpft
