#include "wsl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace wsl::io {

std::string format_real(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("cannot serialize a non-finite number");
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%#.17g", value);
  return buf;
}

// ---------------------------------------------------------------------------
// JsonWriter

void JsonWriter::separator() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (first_.empty()) return;
  if (!first_.back()) out_ << ", ";
  first_.back() = false;
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ << '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ << '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ << '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ << ']';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  separator();
  out_ << nlohmann::json(name).dump() << ": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separator();
  out_ << format_real(v);
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  separator();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separator();
  out_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separator();
  out_ << nlohmann::json(v).dump();
  return *this;
}

JsonWriter& JsonWriter::null() {
  separator();
  out_ << "null";
  return *this;
}

JsonWriter& JsonWriter::value(const Vector& v) {
  begin_array();
  for (Eigen::Index i = 0; i < v.size(); ++i) value(v[i]);
  return end_array();
}

// ---------------------------------------------------------------------------
// Measure documents

namespace {

std::vector<double> numbers(const nlohmann::json& node, const char* what) {
  if (!node.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : node) {
    if (!x.is_number()) throw SchemaError(std::string(what) + " must contain numbers");
    const double v = x.get<double>();
    if (!std::isfinite(v)) throw SchemaError(std::string(what) + " must be finite");
    out.push_back(v);
  }
  return out;
}

void check_schema_field(const nlohmann::json& doc) {
  if (!doc.contains("schema")) return;
  if (!doc["schema"].is_string() || doc["schema"].get<std::string>() != kSchema) {
    throw SchemaError(std::string("unsupported schema, expected ") + kSchema);
  }
}

}  // namespace

DiscreteMeasure parse_measure(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("measure document is not JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("measure document must be an object");
  check_schema_field(doc);

  long dim = -1;
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1) {
      throw SchemaError("dim must be a positive integer");
    }
    dim = doc["dim"].get<long>();
  }
  if (!doc.contains("weights")) throw SchemaError("measure document needs weights");
  const std::vector<double> weights = numbers(doc["weights"], "weights");

  std::vector<Vector> points;
  if (doc.contains("points")) {
    if (!doc["points"].is_array()) throw SchemaError("points must be an array");
    for (const auto& row : doc["points"]) {
      const std::vector<double> c = numbers(row, "point");
      if (c.size() < 2) throw SchemaError("points need at least two coordinates");
      if (dim >= 0 && static_cast<long>(c.size()) != dim + 1) {
        throw SchemaError("point length does not match dim + 1");
      }
      if (!points.empty() && static_cast<Eigen::Index>(c.size()) != points.front().size()) {
        throw SchemaError("points have different lengths");
      }
      points.push_back(Eigen::Map<const Vector>(c.data(), static_cast<Eigen::Index>(c.size())));
    }
  } else if (doc.contains("theta")) {
    if (dim >= 0 && dim != 1) throw SchemaError("theta lists describe measures on S^1");
    for (double t : numbers(doc["theta"], "theta")) points.push_back(circle_point(t).coords());
  } else {
    throw SchemaError("measure document needs points or theta");
  }
  if (points.empty()) throw SchemaError("measure document has no atoms");
  if (points.size() != weights.size()) throw SchemaError("points and weights differ in length");

  for (double w : weights) {
    if (w < 0.0) throw SchemaError("weights must be nonnegative");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > kIngestWeightTolerance) {
    throw SchemaError("weights sum to " + format_real(total) + ", expected 1");
  }
  return DiscreteMeasure::normalized(std::move(points), weights);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DiscreteMeasure read_measure_file(const std::string& path) { return parse_measure(read_text_file(path)); }

void write_measure_fields(JsonWriter& json, const DiscreteMeasure& mu) {
  json.key("dim").value(mu.sphere_dim());
  json.key("points").begin_array();
  for (const auto& p : mu.points()) json.value(p);
  json.end_array();
  json.key("weights").begin_array();
  for (double w : mu.weights()) json.value(w);
  json.end_array();
}

void write_measure(std::ostream& out, const DiscreteMeasure& mu) {
  JsonWriter json(out);
  json.begin_object().key("schema").value(kSchema);
  write_measure_fields(json, mu);
  json.end_object();
  out << '\n';
}

// ---------------------------------------------------------------------------
// Potential CSV

void write_potential_csv(std::ostream& out, const PotentialSamples& samples, bool theta_columns) {
  const PotentialSamples chord = samples.converted(PotentialMetric::Chord);
  out << "# schema=" << kSchema << '\n';
  const Eigen::Index k = chord.sites.empty() ? 0 : chord.sites.front().ambient_dim();
  if (theta_columns) {
    if (k != 2) throw InvalidArgument("theta columns need sites on S^1");
    out << "theta,value\n";
  } else {
    for (Eigen::Index c = 0; c < k; ++c) out << 'x' << c + 1 << ',';
    out << "value\n";
  }
  for (std::size_t i = 0; i < chord.sites.size(); ++i) {
    const Vector& x = chord.sites[i].coords();
    if (theta_columns) {
      double theta = std::atan2(x[1], x[0]);
      if (theta < 0.0) theta += 2.0 * std::numbers::pi;
      out << format_real(theta) << ',';
    } else {
      for (Eigen::Index c = 0; c < k; ++c) out << format_real(x[c]) << ',';
    }
    out << format_real(chord.values[i]) << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  return out;
}

double parse_number(const std::string& field, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size() || !std::isfinite(v)) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw SchemaError("line " + std::to_string(line_no) + ": bad number '" + field + "'");
  }
}

}  // namespace

PotentialSamples parse_potential_csv(const std::string& text, double p) {
  PotentialSamples samples;
  samples.p = p;
  samples.metric = PotentialMetric::Chord;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto pos = line.find("schema=");
      if (pos != std::string::npos && line.substr(pos + 7) != kSchema) {
        throw SchemaError("unsupported schema in potential file");
      }
      continue;
    }
    const std::vector<std::string> fields = split_fields(line);
    if (header.empty()) {
      header = fields;
      const bool theta = header == std::vector<std::string>{"theta", "value"};
      bool coords = header.size() >= 3 && header.back() == "value";
      for (std::size_t c = 0; coords && c + 1 < header.size(); ++c) {
        coords = header[c] == "x" + std::to_string(c + 1);
      }
      if (!theta && !coords) throw SchemaError("potential header must be theta,value or x1,...,xk,value");
      continue;
    }
    if (fields.size() != header.size()) {
      throw SchemaError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " fields");
    }
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(parse_number(f, line_no));
    try {
      if (header.front() == "theta") {
        samples.sites.push_back(circle_point(row[0]));
      } else {
        samples.sites.emplace_back(Eigen::Map<const Vector>(row.data(), static_cast<Eigen::Index>(row.size() - 1)));
      }
    } catch (const Error& e) {
      throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
    }
    samples.values.push_back(row.back());
  }
  if (header.empty()) throw SchemaError("potential file has no header");
  if (samples.values.empty()) throw SchemaError("potential file has no samples");
  try {
    samples.validate();
  } catch (const InvalidMeasure& e) {
    throw SchemaError(e.what());
  }
  return samples;
}

PotentialSamples read_potential_file(const std::string& path, double p) {
  return parse_potential_csv(read_text_file(path), p);
}

// ---------------------------------------------------------------------------
// Reports

void write_report_line(std::ostream& out, const PropertyReport& report) {
  JsonWriter json(out);
  json.begin_object()
      .key("schema").value(kSchema)
      .key("name").value(report.name)
      .key("residual").value(report.residual)
      .key("tolerance").value(report.tolerance)
      .key("passed").value(report.passed)
      .key("inputs_digest").value(report.inputs_digest)
      .key("notes").value(report.notes)
      .end_object();
  out << '\n';
}

}  // namespace wsl::io
