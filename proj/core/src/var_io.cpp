#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "hoinet/var.hpp"

namespace hoinet {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw IoError("failed to format numeric value");
  return std::string(buf, ptr);
}

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && begin != end;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw IoError(std::string("model JSON: bad shape for ") + what);
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw IoError(std::string("model JSON: bad shape for ") + what);
    }
    for (int c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

}  // namespace

std::string to_csv(const TimeSeries& series) {
  std::string out;
  const int n = series.n_nodes();
  if (!series.labels.empty()) {
    if (static_cast<int>(series.labels.size()) != n) {
      throw DimensionMismatch("to_csv: label count must match column count");
    }
    for (int j = 0; j < n; ++j) {
      if (j) out += ',';
      out += series.labels[static_cast<std::size_t>(j)];
    }
    out += '\n';
  }
  for (int t = 0; t < series.n_samples(); ++t) {
    for (int j = 0; j < n; ++j) {
      if (j) out += ',';
      out += format_double(series.values(t, j));
    }
    out += '\n';
  }
  return out;
}

TimeSeries series_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!parse_double(fields[j], row[j])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (!first) throw IoError("series CSV: non-numeric field outside header row");
      for (const auto& f : fields) labels.push_back(trim(f));
    } else {
      if (!rows.empty() && row.size() != rows.front().size()) {
        throw IoError("series CSV: ragged rows");
      }
      rows.push_back(std::move(row));
    }
    first = false;
  }
  if (rows.empty()) throw IoError("series CSV: no data rows");
  if (!labels.empty() && labels.size() != rows.front().size()) {
    throw IoError("series CSV: header width differs from data width");
  }

  Matrix values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t j = 0; j < rows[t].size(); ++j) {
      values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = rows[t][j];
    }
  }
  return TimeSeries{std::move(values), std::move(labels)};
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
  write_file(path, to_csv(series));
}

TimeSeries read_series_csv(const std::string& path) {
  return series_from_csv(read_file(path));
}

std::string to_json(const VarModel& model) {
  nlohmann::ordered_json j;
  j["n_nodes"] = model.n_nodes;
  j["order"] = model.order;
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const Matrix& a : model.coeffs) coeffs.push_back(matrix_to_json(a));
  j["coeffs"] = std::move(coeffs);
  j["innovation_cov"] = matrix_to_json(model.innovation_cov);
  return j.dump(2) + "\n";
}

VarModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("model JSON: ") + e.what());
  }
  try {
    VarModel model;
    model.n_nodes = j.at("n_nodes").get<int>();
    model.order = j.at("order").get<int>();
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array()) throw IoError("model JSON: coeffs must be an array");
    for (const auto& a : coeffs) {
      model.coeffs.push_back(matrix_from_json(a, model.n_nodes, model.n_nodes, "coeffs"));
    }
    model.innovation_cov =
        matrix_from_json(j.at("innovation_cov"), model.n_nodes, model.n_nodes, "innovation_cov");
    validate(model);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("model JSON: ") + e.what());
  }
}

void write_model_json(const std::string& path, const VarModel& model) {
  write_file(path, to_json(model));
}

VarModel read_model_json(const std::string& path) {
  return model_from_json(read_file(path));
}

}  // namespace hoinet
