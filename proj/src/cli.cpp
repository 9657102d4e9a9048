#include "wsl/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "wsl/circle_fourier.hpp"
#include "wsl/exact_transport.hpp"
#include "wsl/interpolation.hpp"
#include "wsl/io.hpp"
#include "wsl/potential.hpp"
#include "wsl/rigidity_suite.hpp"

namespace wsl::cli {

namespace {

const std::vector<std::string> kSubcommands = {"distance",    "potential",     "deconvolve",
                                               "interpolate", "bisector-mass", "verify"};

std::size_t required_inputs(const std::string& sub) {
  if (sub == "distance" || sub == "interpolate") return 2;
  if (sub == "verify") return 0;
  return 1;
}

Vector parse_coordinates(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(field, &used));
      if (field.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw SchemaError("bad coordinate '" + field + "' in --x");
    }
  }
  if (values.size() < 2) throw SchemaError("--x needs at least two coordinates");
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<SpherePoint> read_sites(const std::string& path) {
  std::istringstream in(io::read_text_file(path));
  std::string line;
  std::vector<SpherePoint> sites;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line.rfind("x1", 0) != 0) throw SchemaError("sites file header must be x1,...,xk");
      header = true;
      continue;
    }
    try {
      sites.push_back(SpherePoint(parse_coordinates(line)));
    } catch (const NotOnSphere& e) {
      throw SchemaError(std::string("site off the sphere: ") + e.what());
    }
  }
  if (sites.empty()) throw SchemaError("sites file has no rows");
  return sites;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw SchemaError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_distance(const CommandConfig& c, std::ostream& out) {
  const DiscreteMeasure mu = io::read_measure_file(c.inputs[0]);
  const DiscreteMeasure nu = io::read_measure_file(c.inputs[1]);
  if (mu.ambient_dim() != nu.ambient_dim()) throw DimensionMismatch("measures live in different dimensions");
  const double d = wasserstein_distance(mu, nu, c.p);
  io::JsonWriter json(out);
  json.begin_object().key("schema").value(io::kSchema).key("p").value(c.p).key("distance").value(d).end_object();
  out << '\n';
  return kOk;
}

int cmd_potential(const CommandConfig& c, std::ostream& out) {
  const DiscreteMeasure mu = io::read_measure_file(c.inputs[0]);
  if (!mu.on_sphere()) throw NotOnSphere("potential needs a measure on S^n");
  std::vector<SpherePoint> sites;
  const bool on_grid = c.sites.empty();
  if (on_grid) {
    if (mu.sphere_dim() != 1) throw InvalidArgument("grid sites exist on S^1 only; pass --sites");
    sites = circle::CircleGrid(c.grid_n).points();
  } else {
    sites = read_sites(c.sites);
  }
  const PotentialSamples samples = sample_potential(mu, sites, c.p);
  if (c.format == "json") {
    io::JsonWriter json(out);
    json.begin_object().key("schema").value(io::kSchema).key("p").value(c.p).key("metric").value("chord");
    json.key("sites").begin_array();
    for (const auto& s : samples.sites) json.value(s.coords());
    json.end_array().key("values").begin_array();
    for (double v : samples.values) json.value(v);
    json.end_array().end_object();
    out << '\n';
  } else {
    io::write_potential_csv(out, samples, on_grid);
  }
  return kOk;
}

int cmd_deconvolve(const CommandConfig& c, std::ostream& out) {
  const PotentialSamples samples = io::read_potential_file(c.inputs[0], c.p);
  const std::vector<double> weights = circle::deconvolve_potential(samples, c.p);
  const circle::CircleGrid grid(static_cast<int>(weights.size()));
  io::JsonWriter json(out);
  // Every grid node is listed, including those with zero weight.
  json.begin_object().key("schema").value(io::kSchema).key("dim").value(1);
  json.key("points").begin_array();
  for (int j = 0; j < grid.size(); ++j) json.value(grid.point(j).coords());
  json.end_array().key("weights").begin_array();
  for (double w : weights) json.value(w);
  json.end_array().end_object();
  out << '\n';
  return kOk;
}

int cmd_interpolate(const CommandConfig& c, std::ostream& out) {
  const DiscreteMeasure mu = io::read_measure_file(c.inputs[0]);
  const DiscreteMeasure nu = io::read_measure_file(c.inputs[1]);
  if (mu.ambient_dim() != nu.ambient_dim()) throw DimensionMismatch("measures live in different dimensions");
  const InterpolationResult r = minimize_q(mu, nu, c.alpha);
  io::JsonWriter json(out);
  json.begin_object()
      .key("schema").value(io::kSchema)
      .key("alpha").value(c.alpha)
      .key("degenerate").value(r.degenerate)
      .key("antipodal_mass").value(r.antipodal_mass)
      .key("q_value").value(r.q_value)
      .key("unique_hint").value(r.unique_hint);
  json.key("measure");
  if (r.measure) {
    json.begin_object().key("schema").value(io::kSchema);
    io::write_measure_fields(json, *r.measure);
    json.end_object();
  } else {
    json.null();
  }
  json.end_object();
  out << '\n';
  return kOk;
}

int cmd_bisector(const CommandConfig& c, std::ostream& out) {
  const DiscreteMeasure mu = io::read_measure_file(c.inputs[0]);
  if (c.x.empty() == !c.theta.has_value()) throw SchemaError("bisector-mass needs exactly one of --x, --theta");
  const SpherePoint x = c.theta ? circle_point(*c.theta) : project_to_sphere(parse_coordinates(c.x));
  const BisectorScan scan = bisector_scan(mu, x);
  io::JsonWriter json(out);
  json.begin_object()
      .key("schema").value(io::kSchema)
      .key("x").value(x.coords())
      .key("mass").value(scan.flat_hi - scan.flat_lo)
      .key("flat_lo").value(scan.flat_lo)
      .key("flat_hi").value(scan.flat_hi)
      .end_object();
  out << '\n';
  return kOk;
}

int cmd_verify(const CommandConfig& c, std::ostream& out) {
  std::vector<PropertyReport> reports = verify_rigidity_battery(c.seed);
  const PropertyReport t = verify_translation_identity(c.trials, c.seed);
  reports.push_back(PropertyReport::make(t.name, t.inputs_digest, t.residual, c.tol, t.notes));
  std::stable_sort(reports.begin(), reports.end(),
                   [](const PropertyReport& a, const PropertyReport& b) { return a.name < b.name; });
  bool all = true;
  for (const auto& r : reports) {
    io::write_report_line(out, r);
    all = all && r.passed;
  }
  return all ? kOk : kVerificationFailed;
}

void diagnostic(std::ostream& err, const char* kind, const std::exception& e) {
  io::JsonWriter json(err);
  json.begin_object().key("schema").value(io::kSchema).key("error").value(kind).key("message").value(e.what());
  if (const auto* s = dynamic_cast<const SingularKernel*>(&e)) {
    json.key("grid_size").value(s->grid_size())
        .key("kernel_rank").value(s->kernel_rank())
        .key("operator_rank").value(s->operator_rank())
        .key("frequencies").begin_array();
    for (int f : s->frequencies()) json.value(f);
    json.end_array();
  } else if (const auto* r = dynamic_cast<const ReconstructionFailure*>(&e)) {
    json.key("min_weight").value(r->min_weight());
  } else if (const auto* a = dynamic_cast<const AntipodalMass*>(&e)) {
    json.key("antipodal_mass").value(a->mass());
  } else if (const auto* t = dynamic_cast<const TruncationTooSmall*>(&e)) {
    json.key("estimate").value(t->estimate());
  }
  json.end_object();
  err << '\n';
}

const char* error_kind(const Error& e) {
  if (dynamic_cast<const SingularKernel*>(&e)) return "SingularKernel";
  if (dynamic_cast<const ReconstructionFailure*>(&e)) return "ReconstructionFailure";
  if (dynamic_cast<const AntipodalMass*>(&e)) return "AntipodalMass";
  if (dynamic_cast<const TruncationTooSmall*>(&e)) return "TruncationTooSmall";
  if (dynamic_cast<const NotOnSphere*>(&e)) return "NotOnSphere";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const DegenerateVector*>(&e)) return "DegenerateVector";
  if (dynamic_cast<const InvalidMeasure*>(&e)) return "InvalidMeasure";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const SolverStall*>(&e)) return "SolverStall";
  return "Error";
}

}  // namespace

void CommandConfig::validate() const {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end()) {
    throw SchemaError("unknown subcommand '" + subcommand + "'");
  }
  if (!(p >= 1.0)) throw SchemaError("--p must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw SchemaError("--alpha must lie in [0, 1]");
  if (grid_n < 4) throw SchemaError("--grid must be >= 4");
  if (!(tol > 0.0)) throw SchemaError("--tol must be positive");
  if (trials < 1) throw SchemaError("--trials must be >= 1");
  if (!format.empty() && format != "json" && format != "csv") throw SchemaError("--format must be json or csv");
  if (inputs.size() != required_inputs(subcommand)) {
    throw SchemaError(subcommand + " expects " + std::to_string(required_inputs(subcommand)) + " input file(s)");
  }
}

int run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    // Buffer so a failing command leaves no partial document behind.
    std::ostringstream buffer;
    int code = kOk;
    const std::string& s = config.subcommand;
    if (s == "distance") code = cmd_distance(config, buffer);
    else if (s == "potential") code = cmd_potential(config, buffer);
    else if (s == "deconvolve") code = cmd_deconvolve(config, buffer);
    else if (s == "interpolate") code = cmd_interpolate(config, buffer);
    else if (s == "bisector-mass") code = cmd_bisector(config, buffer);
    else code = cmd_verify(config, buffer);
    Output sink(config.output, out);
    *sink << buffer.str();
    return code;
  } catch (const SchemaError& e) {
    diagnostic(err, "SchemaError", e);
    return kSchemaViolation;
  } catch (const Error& e) {
    diagnostic(err, error_kind(e), e);
    return kDomainError;
  }
}

int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact optimal transport on spheres"};
  app.require_subcommand(1);
  CommandConfig config;

  auto common = [&](CLI::App* sub, bool with_p) {
    if (with_p) sub->add_option("--p", config.p, "Transport order / potential exponent");
    sub->add_option("-o,--output", config.output, "Write the result to a file");
  };

  auto* distance = app.add_subcommand("distance", "W_p distance between two measures");
  distance->add_option("inputs", config.inputs, "Two measure JSON files")->required();
  common(distance, true);

  auto* potential = app.add_subcommand("potential", "Potential of a measure on a grid or site list");
  potential->add_option("inputs", config.inputs, "Measure JSON file")->required();
  potential->add_option("--grid", config.grid_n, "Equispaced S^1 grid size");
  potential->add_option("--sites", config.sites, "CSV of sites (x1,...,xk)");
  potential->add_option("--format", config.format, "csv or json");
  common(potential, true);

  auto* deconvolve = app.add_subcommand("deconvolve", "Recover grid weights from a potential CSV");
  deconvolve->add_option("inputs", config.inputs, "Potential CSV file")->required();
  common(deconvolve, true);

  auto* interpolate = app.add_subcommand("interpolate", "Minimizer of the alpha-weighted mean squared error");
  interpolate->add_option("inputs", config.inputs, "Two measure JSON files")->required();
  interpolate->add_option("--alpha", config.alpha, "Interpolation parameter");
  common(interpolate, false);

  auto* bisector = app.add_subcommand("bisector-mass", "Mass of the bisector B(x, -x)");
  bisector->add_option("inputs", config.inputs, "Measure JSON file")->required();
  bisector->add_option("--x", config.x, "Pole coordinates, comma separated");
  bisector->add_option("--theta", config.theta, "Pole angle on S^1");
  common(bisector, false);

  auto* verify = app.add_subcommand("verify", "Run the verification batteries");
  verify->add_option("--seed", config.seed, "Random seed");
  verify->add_option("--trials", config.trials, "Translation identity trials");
  verify->add_option("--tol", config.tol, "Tolerance of the translation identity report");
  common(verify, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    const SchemaError wrapped(e.what());
    diagnostic(err, "UsageError", wrapped);
    return kSchemaViolation;
  }
  for (auto* sub : app.get_subcommands()) config.subcommand = sub->get_name();
  return run(config, out, err);
}

}  // namespace wsl::cli
