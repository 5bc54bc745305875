#include <cmath>
#include <string>

#include <json.hpp>

#include "fracdmd/dmd.hpp"
#include "fracdmd/errors.hpp"

namespace fracdmd {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormat = "fracdmd-model";
constexpr int kVersion = 1;

double finite(double v) {
  if (!std::isfinite(v)) throw FormatError("model contains a non-finite value; refusing to serialize");
  return v;
}

json complex_json(std::complex<double> c) { return json::array({finite(c.real()), finite(c.imag())}); }

std::complex<double> complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("model: expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd complex_matrix_from(const json& j, Eigen::Index rows, Eigen::Index cols, const char* name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw FormatError(std::string("model: '") + name + "' has wrong row count");
  }
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw FormatError(std::string("model: '") + name + "' has wrong column count");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = complex_from(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json trajectory_json(const Trajectory& t) {
  json states = json::array();
  for (Eigen::Index k = 0; k < t.states.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index c = 0; c < t.states.cols(); ++c) row.push_back(finite(t.states(k, c)));
    states.push_back(std::move(row));
  }
  return json{{"dt", finite(t.dt)}, {"states", std::move(states)}};
}

Trajectory trajectory_from(const json& j) {
  Trajectory t;
  t.dt = j.at("dt").get<double>();
  const json& states = j.at("states");
  if (!states.is_array() || states.empty() || !states[0].is_array()) {
    throw FormatError("model: trajectory states must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(states.size());
  const auto cols = static_cast<Eigen::Index>(states[0].size());
  t.states.resize(rows, cols);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const json& row = states[static_cast<std::size_t>(k)];
    if (static_cast<Eigen::Index>(row.size()) != cols) throw FormatError("model: ragged trajectory states");
    for (Eigen::Index c = 0; c < cols; ++c) t.states(k, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  validate(t);
  return t;
}

}  // namespace

std::string model_to_json(const FiniteRankModel& model) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["variant"] = std::string(to_string(model.variant));
  doc["q"] = finite(model.q);
  doc["kernel"] = to_string(model.kernel);
  doc["reg"] = finite(model.reg);
  doc["quad_refine"] = model.quad_refine;
  doc["basis"] = std::string(to_string(model.basis));

  json eig = json::array();
  for (Eigen::Index i = 0; i < model.eigenvalues.size(); ++i) eig.push_back(complex_json(model.eigenvalues(i)));
  doc["eigenvalues"] = std::move(eig);
  doc["coeffs"] = matrix_json(model.coeffs);
  doc["modes"] = matrix_json(model.modes);

  json trajs = json::array();
  for (const auto& t : model.trajectories) trajs.push_back(trajectory_json(t));
  doc["trajectories"] = std::move(trajs);

  // Infinite diagnostics are stored as null.
  auto diag = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  doc["diagnostics"] = json{{"gram_rcond", diag(model.diagnostics.gram_rcond)},
                            {"eigvec_condition", diag(model.diagnostics.eigvec_condition)},
                            {"mode_rcond", diag(model.diagnostics.mode_rcond)}};
  return doc.dump(1) + "\n";
}

FiniteRankModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("model: invalid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kFormat) throw FormatError("model: not a fracdmd model document");
    if (doc.at("version").get<int>() != kVersion) throw FormatError("model: unsupported version");

    FiniteRankModel model;
    model.variant = parse_variant(doc.at("variant").get<std::string>());
    model.q = doc.at("q").get<double>();
    model.kernel = parse_kernel(doc.at("kernel").get<std::string>());
    model.reg = doc.at("reg").get<double>();
    model.quad_refine = doc.at("quad_refine").get<int>();
    model.basis = parse_basis(doc.at("basis").get<std::string>());

    for (const json& t : doc.at("trajectories")) model.trajectories.push_back(trajectory_from(t));
    if (model.trajectories.empty()) throw FormatError("model: no trajectories");
    const auto m = static_cast<Eigen::Index>(model.trajectories.size());
    const auto n = static_cast<Eigen::Index>(model.trajectories.front().dim());

    const json& eig = doc.at("eigenvalues");
    const auto r = static_cast<Eigen::Index>(eig.size());
    model.eigenvalues.resize(r);
    for (Eigen::Index i = 0; i < r; ++i) model.eigenvalues(i) = complex_from(eig[static_cast<std::size_t>(i)]);
    model.coeffs = complex_matrix_from(doc.at("coeffs"), m, r, "coeffs");
    model.modes = complex_matrix_from(doc.at("modes"), r, n, "modes");

    auto diag = [](const json& j) { return j.is_null() ? INFINITY : j.get<double>(); };
    const json& d = doc.at("diagnostics");
    model.diagnostics.gram_rcond = diag(d.at("gram_rcond"));
    model.diagnostics.eigvec_condition = diag(d.at("eigvec_condition"));
    model.diagnostics.mode_rcond = diag(d.at("mode_rcond"));
    return model;
  } catch (const json::exception& e) {
    throw FormatError(std::string("model: ") + e.what());
  } catch (const ParameterError& e) {
    throw FormatError(std::string("model: ") + e.what());
  }
}

}  // namespace fracdmd
