#include "alipm/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace alipm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void save_pool_csv(const Pool& pool, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_pool_csv: cannot open " + path);
  out << "# mx=" << format_double(pool.domain_bound())
      << " my=" << format_double(pool.label_bound()) << "\n";
  for (int d = 1; d <= pool.dim(); ++d) out << "x" << d << ",";
  out << "y\n";
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const Vector& x = pool.point(i);
    for (Eigen::Index d = 0; d < x.size(); ++d) out << format_double(x[d]) << ",";
    if (const auto y = pool.label(i)) out << format_double(*y);
    out << "\n";
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

struct ParsedPoolCsv {
  int dim = 0;
  double mx = -1.0;  // negative: not specified in the file
  double my = -1.0;
  std::vector<Vector> points;
  std::vector<std::optional<double>> labels;
};

ParsedPoolCsv parse_pool_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("pool csv: cannot open " + path);
  ParsedPoolCsv parsed;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string tok;
      while (ss >> tok) {
        if (tok.rfind("mx=", 0) == 0) parsed.mx = std::stod(tok.substr(3));
        if (tok.rfind("my=", 0) == 0) parsed.my = std::stod(tok.substr(3));
      }
      continue;
    }
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() < 2 || fields.back() != "y")
        throw std::runtime_error("pool csv: expected header x1,...,xn,y");
      parsed.dim = static_cast<int>(fields.size()) - 1;
      header_seen = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != parsed.dim + 1)
      throw std::runtime_error("pool csv: row width mismatch");
    Vector x(parsed.dim);
    for (int d = 0; d < parsed.dim; ++d) x[d] = std::stod(fields[d]);
    parsed.points.push_back(std::move(x));
    const std::string& ytxt = fields.back();
    if (ytxt.empty())
      parsed.labels.emplace_back(std::nullopt);
    else
      parsed.labels.emplace_back(std::stod(ytxt));
  }
  if (!header_seen) throw std::runtime_error("pool csv: empty file " + path);
  return parsed;
}

}  // namespace

Pool load_pool_csv(const std::string& path) {
  ParsedPoolCsv parsed = parse_pool_csv(path);
  double mx = parsed.mx, my = parsed.my;
  if (mx < 0.0) {
    mx = 0.0;
    for (const auto& x : parsed.points) mx = std::max(mx, x.norm());
  }
  if (my < 0.0) {
    my = 0.0;
    for (const auto& y : parsed.labels)
      if (y) my = std::max(my, std::abs(*y));
  }
  Pool pool(parsed.dim, mx, my);
  for (std::size_t i = 0; i < parsed.points.size(); ++i) {
    if (parsed.labels[i])
      pool.add(parsed.points[i], *parsed.labels[i]);
    else
      pool.add(parsed.points[i]);
  }
  return pool;
}

Matrix load_samples_csv(const std::string& path) {
  const ParsedPoolCsv parsed = parse_pool_csv(path);
  Matrix m(parsed.points.size(), parsed.dim);
  for (std::size_t i = 0; i < parsed.points.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = parsed.points[i];
  return m;
}

namespace {

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const nlohmann::json& arr) {
  Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  return v;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& rows) {
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size())
      throw std::invalid_argument("matrix json: ragged rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c].get<double>();
  }
  return m;
}

void reject_unknown_keys(const nlohmann::json& j,
                         const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!known.count(key))
      throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

}  // namespace

nlohmann::json hypothesis_to_json(const Hypothesis& h) {
  nlohmann::json j;
  j["setting"] = to_string(h.setting());
  j["mx"] = h.bounds().mx;
  j["my"] = h.bounds().my;
  switch (h.setting()) {
    case SettingId::LIN_L1:
    case SettingId::LIN_L2:
    case SettingId::SVM_HINGE:
      j["w"] = vector_to_json(h.w());
      j["b"] = h.bias();
      break;
    case SettingId::LOGISTIC_LOG:
      j["w"] = vector_to_json(h.w());
      break;
    case SettingId::GAUSS_L1:
      j["w"] = vector_to_json(h.w());
      j["centers"] = matrix_to_json(h.centers());
      j["sigma"] = h.sigma();
      break;
    case SettingId::NN_HINGE: {
      nlohmann::json layers = nlohmann::json::array();
      for (std::size_t l = 0; l < h.layer_weights().size(); ++l) {
        nlohmann::json layer;
        layer["W"] = matrix_to_json(h.layer_weights()[l]);
        layer["b"] = vector_to_json(h.layer_biases()[l]);
        layers.push_back(std::move(layer));
      }
      j["layers"] = std::move(layers);
      j["o"] = vector_to_json(h.output_weights());
      j["b"] = h.output_bias();
      break;
    }
  }
  return j;
}

Hypothesis hypothesis_from_json(const nlohmann::json& j) {
  const SettingId id = parse_setting(j.at("setting").get<std::string>());
  DomainBounds bounds;
  bounds.mx = j.value("mx", 1.0);
  bounds.my = j.value("my", 1.0);
  switch (id) {
    case SettingId::LIN_L1:
    case SettingId::LIN_L2:
    case SettingId::SVM_HINGE:
      return Hypothesis::linear(id, vector_from_json(j.at("w")),
                                j.value("b", 0.0), bounds);
    case SettingId::LOGISTIC_LOG:
      return Hypothesis::logistic(vector_from_json(j.at("w")), bounds);
    case SettingId::GAUSS_L1:
      return Hypothesis::gaussian(vector_from_json(j.at("w")),
                                  matrix_from_json(j.at("centers")),
                                  j.at("sigma").get<double>(), bounds);
    case SettingId::NN_HINGE: {
      std::vector<Matrix> ws;
      std::vector<Vector> bs;
      for (const auto& layer : j.at("layers")) {
        ws.push_back(matrix_from_json(layer.at("W")));
        bs.push_back(vector_from_json(layer.at("b")));
      }
      return Hypothesis::relu_network(std::move(ws), std::move(bs),
                                      vector_from_json(j.at("o")),
                                      j.value("b", 0.0), bounds);
    }
  }
  throw std::logic_error("hypothesis_from_json: unreachable");
}

nlohmann::json ipm_to_json(const IpmEstimate& est) {
  nlohmann::json j;
  j["generator"] = to_string(est.generator);
  j["method"] = to_string(est.method);
  j["value"] = est.value;
  j["size_a"] = est.size_a;
  j["size_b"] = est.size_b;
  if (!est.detail.empty()) j["detail"] = est.detail;
  return j;
}

nlohmann::json certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["setting"] = to_string(cert.setting);
  j["kind"] = cert.kind == Certificate::Kind::lipschitz_bound ? "lipschitz_bound"
                                                              : "sup_bound";
  j["value"] = cert.value;
  j["passes"] = cert.passes;
  return j;
}

nlohmann::json rad_to_json(const RadEstimate& est) {
  nlohmann::json j;
  j["value"] = est.value;
  j["num_sigma"] = est.num_sigma;
  j["inner_method"] = to_string(est.inner);
  j["std_error"] = est.std_error;
  return j;
}

nlohmann::json bound_report_to_json(const BoundReport& report) {
  nlohmann::json j;
  j["empirical_risk"] = report.empirical_risk;
  j["ipm_term"] = ipm_to_json(report.ipm_term);
  j["rad_term"] = rad_to_json(report.rad_term);
  j["deviation_term"] = report.deviation_term;
  j["rhs_total"] = report.rhs_total;
  j["true_risk_mc"] = report.true_risk_mc;
  j["true_risk_ci"] = report.true_risk_ci;
  j["m"] = report.m;
  j["delta"] = report.delta;
  j["c"] = report.c;
  j["holds"] = report.holds;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  reject_unknown_keys(j,
                      {"task", "setting", "delta", "c", "seed", "pool_size",
                       "query_size", "budget", "strategy", "query_dist", "mc",
                       "train", "tolerances", "tv_bins"},
                      "top level");
  cfg.task = j.value("task", cfg.task);
  if (j.contains("setting"))
    cfg.setting = parse_setting(j.at("setting").get<std::string>());
  cfg.delta = j.value("delta", cfg.delta);
  cfg.c_const = j.value("c", cfg.c_const);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.pool_size = j.value("pool_size", cfg.pool_size);
  cfg.query_size = j.value("query_size", cfg.query_size);
  if (j.contains("budget"))
    cfg.budget = j.at("budget").get<std::vector<std::size_t>>();

  if (j.contains("strategy")) {
    const auto& s = j.at("strategy");
    reject_unknown_keys(s, {"kind", "lambda", "generator"}, "strategy");
    if (s.contains("kind"))
      cfg.strategy.kind = parse_strategy(s.at("kind").get<std::string>());
    cfg.strategy.lambda = s.value("lambda", cfg.strategy.lambda);
    if (s.contains("generator"))
      cfg.strategy.generator = parse_generator(s.at("generator").get<std::string>());
  }

  if (j.contains("query_dist")) {
    const auto& q = j.at("query_dist");
    reject_unknown_keys(q, {"kind", "axis", "lo", "hi"}, "query_dist");
    const std::string kind = q.value("kind", std::string("marginal"));
    if (kind == "marginal")
      cfg.query_dist.kind = QueryDistConfig::Kind::marginal;
    else if (kind == "biased")
      cfg.query_dist.kind = QueryDistConfig::Kind::biased;
    else
      throw std::invalid_argument("config: unknown query_dist kind '" + kind + "'");
    cfg.query_dist.axis = q.value("axis", cfg.query_dist.axis);
    cfg.query_dist.lo = q.value("lo", cfg.query_dist.lo);
    cfg.query_dist.hi = q.value("hi", cfg.query_dist.hi);
  }

  if (j.contains("mc")) {
    const auto& m = j.at("mc");
    reject_unknown_keys(
        m, {"num_sigma", "inner", "restarts", "ascent_iters", "probes", "true_risk_n"},
        "mc");
    cfg.mc.num_sigma = m.value("num_sigma", cfg.mc.num_sigma);
    if (m.contains("inner"))
      cfg.mc.inner = parse_rad_inner(m.at("inner").get<std::string>());
    cfg.mc.restarts = m.value("restarts", cfg.mc.restarts);
    cfg.mc.ascent_iters = m.value("ascent_iters", cfg.mc.ascent_iters);
    cfg.mc.probes = m.value("probes", cfg.mc.probes);
    cfg.mc.true_risk_n = m.value("true_risk_n", cfg.mc.true_risk_n);
  }

  if (j.contains("train")) {
    const auto& t = j.at("train");
    reject_unknown_keys(
        t, {"iters", "step_scale", "hidden", "num_centers", "sigma"}, "train");
    cfg.train.iters = t.value("iters", cfg.train.iters);
    cfg.train.step_scale = t.value("step_scale", cfg.train.step_scale);
    if (t.contains("hidden"))
      cfg.train.hidden = t.at("hidden").get<std::vector<int>>();
    cfg.train.num_centers = t.value("num_centers", cfg.train.num_centers);
    cfg.train.sigma = t.value("sigma", cfg.train.sigma);
  }

  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    reject_unknown_keys(t, {"cert_slack"}, "tolerances");
    cfg.tolerances.cert_slack = t.value("cert_slack", cfg.tolerances.cert_slack);
  }

  cfg.tv_bins = j.value("tv_bins", cfg.tv_bins);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return config_from_json(j);
}

void save_curve_csv(const std::vector<CurveRecord>& records,
                    const std::string& path, const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_curve_csv: cannot open " + path);
  if (!header_comment.empty()) out << "# " << header_comment << "\n";
  out << "round,m,strategy,emp_risk,true_risk,ipm,rhs\n";
  for (const auto& r : records) {
    out << r.round << "," << r.labeled_count << "," << r.strategy << ","
        << format_double(r.empirical_risk) << "," << format_double(r.true_risk)
        << "," << format_double(r.ipm) << "," << format_double(r.rhs_total)
        << "\n";
  }
}

void save_coverage_csv(const CoverageResult& result, const std::string& path,
                       const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_coverage_csv: cannot open " + path);
  if (!header_comment.empty()) out << "# " << header_comment << "\n";
  out << "rep,emp_risk,ipm,rad,dev,rhs,true_risk,holds\n";
  for (const auto& r : result.rows) {
    out << r.rep << "," << format_double(r.emp_risk) << ","
        << format_double(r.ipm) << "," << format_double(r.rad) << ","
        << format_double(r.dev) << "," << format_double(r.rhs) << ","
        << format_double(r.true_risk) << "," << (r.holds ? 1 : 0) << "\n";
  }
}

}  // namespace alipm
