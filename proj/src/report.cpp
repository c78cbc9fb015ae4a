#include "qae/report.hpp"

#include <cmath>
#include <limits>

#include <openssl/evp.h>

namespace qae {

using nlohmann::json;

namespace {

// JSON has no encoding for non-finite doubles.
json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ParseError("expected a number, got \"" + s + "\"");
  }
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

std::size_t positive_dim(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() <= 0) {
    throw ParseError(std::string("\"") + key + "\" must be a positive integer");
  }
  return doc[key].get<std::size_t>();
}

}  // namespace

std::vector<double> StateFile::probabilities() const {
  if (spectrum) return *spectrum;
  return eigendecompose(*matrix).distribution();
}

StateFile parse_state_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("state file must be a JSON object");

  StateFile f;
  if (doc.contains("format_version")) {
    if (!doc["format_version"].is_number_integer()) throw ParseError("format_version must be an integer");
    f.format_version = doc["format_version"].get<int>();
    if (f.format_version != kStateFormatVersion) {
      throw ParseError("unsupported format_version " + std::to_string(f.format_version));
    }
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw ParseError("label must be a string");
    f.label = doc["label"].get<std::string>();
  }
  f.dims = BipartiteDims(positive_dim(doc, "d_a"), positive_dim(doc, "d_b"));
  const std::size_t n = f.dims.total();

  const bool has_matrix = doc.contains("matrix");
  const bool has_spectrum = doc.contains("spectrum");
  if (has_matrix == has_spectrum) throw ParseError("exactly one of \"matrix\" or \"spectrum\" is required");

  if (has_spectrum) {
    const json& s = doc["spectrum"];
    if (!s.is_array() || s.size() != n) {
      throw ParseError("\"spectrum\" must be an array of d_a*d_b numbers");
    }
    std::vector<double> p;
    double sum = 0.0;
    for (const auto& x : s) {
      if (!x.is_number()) throw ParseError("\"spectrum\" entries must be numbers");
      p.push_back(x.get<double>());
      if (p.back() < -1e-12) throw ValidationError("spectrum entries must be nonnegative");
      p.back() = std::max(0.0, p.back());
      sum += p.back();
    }
    if (std::abs(sum - 1.0) > 1e-8) throw ValidationError("spectrum does not sum to 1");
    for (double& x : p) x /= sum;
    std::sort(p.begin(), p.end(), std::greater<>());
    f.spectrum = std::move(p);
    return f;
  }

  const json& m = doc["matrix"];
  if (!m.is_array() || m.size() != n) throw ParseError("\"matrix\" must have d_a*d_b rows");
  ComplexMatrix mat(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!m[i].is_array() || m[i].size() != n) throw ParseError("\"matrix\" rows must have d_a*d_b entries");
    for (std::size_t j = 0; j < n; ++j) {
      const json& e = m[i][j];
      Complex z;
      if (e.is_number()) {
        z = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        z = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ParseError("matrix entries must be numbers or [re, im] pairs");
      }
      mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z;
    }
  }
  const double tr = mat.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) throw ValidationError("matrix trace differs from 1");
  mat /= tr;
  f.matrix = DensityMatrix(std::move(mat));
  return f;
}

std::string serialize_state_file(const StateFile& f) {
  json doc;
  doc["format_version"] = f.format_version;
  if (f.label) doc["label"] = *f.label;
  doc["d_a"] = f.dims.d_a;
  doc["d_b"] = f.dims.d_b;
  if (f.spectrum) {
    doc["spectrum"] = *f.spectrum;
  } else if (f.matrix) {
    const ComplexMatrix& m = f.matrix->matrix();
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
  }
  return doc.dump();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string to_string(EntropyUnit u) { return u == EntropyUnit::Bits ? "bits" : "nats"; }

double in_unit(double nats, EntropyUnit u) { return u == EntropyUnit::Bits ? to_bits(nats) : nats; }

bool RunReport::operator==(const RunReport& o) const {
  auto same_vec = [](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!same(a[i], b[i])) return false;
    return true;
  };
  auto same_comp = [](const std::optional<CompressionReport>& a,
                      const std::optional<CompressionReport>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return same(a->mi_middle, b->mi_middle) && same(a->rel_entropy_out, b->rel_entropy_out) &&
           same(a->residual, b->residual) && same(a->frobenius_distance, b->frobenius_distance) &&
           a->support_violation == b->support_violation && same(a->seconds, b->seconds);
  };
  return tool == o.tool && version == o.version && command == o.command &&
         input_digest == o.input_digest && unit == o.unit && n1 == o.n1 && n2 == o.n2 &&
         n_depth == o.n_depth && seed == o.seed && threshold == o.threshold &&
         method == o.method && same(best_mi, o.best_mi) && same(start_mi, o.start_mi) &&
         best_tableau == o.best_tableau && d_a == o.d_a && d_b == o.d_b &&
         evaluations == o.evaluations && same_vec(trajectory, o.trajectory) &&
         seed_index == o.seed_index && same_comp(compression, o.compression) &&
         same(wall_seconds, o.wall_seconds) && jobs == o.jobs;
}

RunReport make_run_report(const std::string& command, const std::string& input_digest,
                          const SearchConfig& config, const BipartiteDims& dims,
                          const OptimizationResult& result,
                          const std::optional<CompressionReport>& compression, EntropyUnit unit) {
  RunReport r;
  r.command = command;
  r.input_digest = input_digest;
  r.unit = to_string(unit);
  r.n1 = config.n1;
  r.n2 = config.n2;
  r.n_depth = config.n_depth;
  r.seed = config.seed;
  r.threshold = config.exhaustive_threshold.str();
  r.method = to_string(result.method);
  r.best_mi = in_unit(result.best_mi, unit);
  r.start_mi = in_unit(result.start_mi, unit);
  r.best_tableau = result.best_tableau.cells();
  r.d_a = dims.d_a;
  r.d_b = dims.d_b;
  r.evaluations = result.evaluations;
  for (double v : result.trajectory) r.trajectory.push_back(in_unit(v, unit));
  r.seed_index = result.seed_index;
  if (compression) {
    CompressionReport c = *compression;
    c.mi_middle = in_unit(c.mi_middle, unit);
    c.rel_entropy_out = in_unit(c.rel_entropy_out, unit);
    c.residual = in_unit(c.residual, unit);
    r.compression = c;
  }
  r.jobs = config.parallelism;
  return r;
}

json to_json(const RunReport& r) {
  json j;
  j["tool"] = r.tool;
  j["version"] = r.version;
  j["command"] = r.command;
  j["input_digest"] = r.input_digest;
  j["unit"] = r.unit;
  j["config"] = {{"n1", r.n1}, {"n2", r.n2}, {"nd", r.n_depth}, {"seed", r.seed},
                 {"threshold", r.threshold}};
  json traj = json::array();
  for (double v : r.trajectory) traj.push_back(number(v));
  j["result"] = {{"method", r.method},
                 {"best_mi", number(r.best_mi)},
                 {"start_mi", number(r.start_mi)},
                 {"d_a", r.d_a},
                 {"d_b", r.d_b},
                 {"best_tableau", r.best_tableau},
                 {"evaluations", r.evaluations},
                 {"trajectory", std::move(traj)},
                 {"seed_index", r.seed_index ? json(*r.seed_index) : json(nullptr)}};
  j["runtime"] = {{"wall_seconds", number(r.wall_seconds)}, {"jobs", r.jobs}};
  if (r.compression) {
    const auto& c = *r.compression;
    j["compression"] = {{"mi_middle", number(c.mi_middle)},
                        {"rel_entropy_out", number(c.rel_entropy_out)},
                        {"residual", number(c.residual)},
                        {"frobenius_distance", number(c.frobenius_distance)},
                        {"support_violation", c.support_violation}};
    j["runtime"]["compression_seconds"] = number(c.seconds);
  }
  return j;
}

RunReport run_report_from_json(const json& j) {
  try {
    RunReport r;
    r.tool = j.at("tool").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.unit = j.at("unit").get<std::string>();
    const json& c = j.at("config");
    r.n1 = c.at("n1").get<std::size_t>();
    r.n2 = c.at("n2").get<std::size_t>();
    r.n_depth = c.at("nd").get<std::size_t>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.threshold = c.at("threshold").get<std::string>();
    const json& res = j.at("result");
    r.method = res.at("method").get<std::string>();
    r.best_mi = number_from(res.at("best_mi"));
    r.start_mi = number_from(res.at("start_mi"));
    r.d_a = res.at("d_a").get<std::size_t>();
    r.d_b = res.at("d_b").get<std::size_t>();
    r.best_tableau = res.at("best_tableau").get<std::vector<int>>();
    r.evaluations = res.at("evaluations").get<std::uint64_t>();
    for (const auto& v : res.at("trajectory")) r.trajectory.push_back(number_from(v));
    if (!res.at("seed_index").is_null()) r.seed_index = res.at("seed_index").get<std::size_t>();
    const json& rt = j.at("runtime");
    r.wall_seconds = number_from(rt.at("wall_seconds"));
    r.jobs = rt.at("jobs").get<std::size_t>();
    if (j.contains("compression")) {
      const json& cj = j.at("compression");
      CompressionReport cr;
      cr.mi_middle = number_from(cj.at("mi_middle"));
      cr.rel_entropy_out = number_from(cj.at("rel_entropy_out"));
      cr.residual = number_from(cj.at("residual"));
      cr.frobenius_distance = number_from(cj.at("frobenius_distance"));
      cr.support_violation = cj.at("support_violation").get<bool>();
      cr.seconds = number_from(rt.at("compression_seconds"));
      r.compression = cr;
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed run report: ") + e.what());
  }
}

json without_runtime(json j) {
  j.erase("runtime");
  return j;
}

}  // namespace qae
