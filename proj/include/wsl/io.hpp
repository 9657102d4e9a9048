#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wsl/potential.hpp"
#include "wsl/rigidity_suite.hpp"
#include "wsl/sphere_measures.hpp"

namespace wsl::io {

inline constexpr const char* kSchema = "wsl-1";
/// Tolerance on the weight sum of ingested measure documents.
inline constexpr double kIngestWeightTolerance = 1e-9;

/// Decimal with 17 significant digits, e.g. 2.0000000000000000.
std::string format_real(double value);

/// Minimal ordered JSON writer; every number goes through format_real.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double v);
  JsonWriter& value(long long v);
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& value(const Vector& v);
  JsonWriter& null();

 private:
  void separator();

  std::ostream& out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

/// {"schema": "wsl-1", "dim": n, "points": [[...]], "weights": [...]}.
/// A document may give S^1 atoms as "theta" (radians) instead of "points".
DiscreteMeasure parse_measure(const std::string& text);
DiscreteMeasure read_measure_file(const std::string& path);
/// Writes the measure fields into an already open object.
void write_measure_fields(JsonWriter& json, const DiscreteMeasure& mu);
void write_measure(std::ostream& out, const DiscreteMeasure& mu);

/// CSV with a `# schema=wsl-1` line, then `theta,value` (S^1) or `x1,...,xk,value`.
/// Values are in the chord metric; other metrics are converted on write.
void write_potential_csv(std::ostream& out, const PotentialSamples& samples, bool theta_columns);
/// Lines starting with '#' are skipped. The result is range-checked, not generated.
PotentialSamples parse_potential_csv(const std::string& text, double p);
PotentialSamples read_potential_file(const std::string& path, double p);

void write_report_line(std::ostream& out, const PropertyReport& report);

std::string read_text_file(const std::string& path);

}  // namespace wsl::io
