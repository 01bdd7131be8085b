// Copyright 2026 The ioc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ioc/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ioc/couplings.hpp"
#include "ioc/errors.hpp"

namespace ioc {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int u = 0; u < m.rows(); ++u) {
    json row = json::array();
    for (int v = 0; v < m.cols(); ++v) row.push_back(m(u, v));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    if (!row.is_array())
      throw ParseError(std::string(what) + " rows must be arrays");
    rows.push_back(row.get<std::vector<double>>());
  }
  if (rows.empty()) return {};
  return Matrix::from_rows(rows);
}

std::vector<double> numbers_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  try {
    return j.get<std::vector<double>>();
  } catch (const json::exception&) {
    throw ParseError(std::string(what) + " must contain only numbers");
  }
}

ProblemFile parse_problem_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("problem must be a JSON object");
  ProblemFile out;
  if (!j.contains("mu") || !j.contains("nu"))
    throw ParseError("problem needs both \"mu\" and \"nu\" arrays");
  out.mu = numbers_from_json(j["mu"], "mu");
  out.nu = numbers_from_json(j["nu"], "nu");
  if (j.contains("mu_labels"))
    out.mu_labels = j["mu_labels"].get<std::vector<std::string>>();
  if (j.contains("nu_labels"))
    out.nu_labels = j["nu_labels"].get<std::vector<std::string>>();
  if (j.contains("pi")) out.pi = matrix_from_json(j["pi"], "pi");
  return out;
}

ProblemFile parse_problem_columns(std::string_view text) {
  ProblemFile out;
  std::istringstream lines{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key) || key.starts_with('#')) continue;
    double value = 0.0;
    if (!(fields >> value))
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected \"mu <weight>\" or \"nu <weight>\"");
    if (key == "mu")
      out.mu.push_back(value);
    else if (key == "nu")
      out.nu.push_back(value);
    else
      throw ParseError("line " + std::to_string(line_no) +
                       ": unknown margin \"" + key + "\"");
  }
  return out;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty input");
  if (text[first] == '{') return parse_problem_json(text);
  return parse_problem_columns(text);
}

StrippedProblem strip_zeros(const ProblemFile& input) {
  StrippedProblem out;
  out.mu_original_size = static_cast<int>(input.mu.size());
  out.nu_original_size = static_cast<int>(input.nu.size());
  out.reduced = input;
  out.reduced.mu.clear();
  out.reduced.nu.clear();
  out.reduced.mu_labels.clear();
  out.reduced.nu_labels.clear();
  for (int i = 0; i < out.mu_original_size; ++i) {
    if (input.mu[i] == 0.0) continue;  // only exact zeros are stripped
    out.mu_kept.push_back(i);
    out.reduced.mu.push_back(input.mu[i]);
    if (!input.mu_labels.empty())
      out.reduced.mu_labels.push_back(input.mu_labels[i]);
  }
  for (int i = 0; i < out.nu_original_size; ++i) {
    if (input.nu[i] == 0.0) continue;
    out.nu_kept.push_back(i);
    out.reduced.nu.push_back(input.nu[i]);
    if (!input.nu_labels.empty())
      out.reduced.nu_labels.push_back(input.nu_labels[i]);
  }
  out.stripped_any =
      static_cast<int>(out.mu_kept.size()) != out.mu_original_size ||
      static_cast<int>(out.nu_kept.size()) != out.nu_original_size;
  return out;
}

Matrix reinsert_zeros(const Matrix& reduced, const std::vector<int>& row_map,
                      const std::vector<int>& col_map, int original_rows,
                      int original_cols) {
  Matrix full(original_rows, original_cols);
  for (int u = 0; u < reduced.rows(); ++u)
    for (int v = 0; v < reduced.cols(); ++v)
      full(row_map[u], col_map[v]) = reduced(u, v);
  return full;
}

Matrix to_original_order(const Matrix& sorted, const Marginal& mu,
                         const Marginal& nu) {
  Matrix out(sorted.rows(), sorted.cols());
  const auto& pr = mu.sort_permutation();
  const auto& pc = nu.sort_permutation();
  for (int u = 0; u < sorted.rows(); ++u)
    for (int v = 0; v < sorted.cols(); ++v)
      out(pr[u], pc[v]) = sorted(u, v);
  return out;
}

std::string to_json(const SolutionReport& report) {
  json j;
  j["method"] = report.method;
  j["mu"] = report.mu;
  j["nu"] = report.nu;
  if (!report.mu_labels.empty()) j["mu_labels"] = report.mu_labels;
  if (!report.nu_labels.empty()) j["nu_labels"] = report.nu_labels;
  j["coupling"] = matrix_to_json(report.coupling);
  j["row_sums"] = report.row_sums;
  j["col_sums"] = report.col_sums;
  j["ic"] = report.ic;
  j["condition_h"] = report.condition_h;
  if (report.corner)
    j["corner"] = {{"p1", report.corner->p1}, {"q1", report.corner->q1}};
  else
    j["corner"] = nullptr;
  j["iterations"] = report.iterations;
  j["certificate"] = {
      {"max_negative_entry", report.certificate.max_negative_entry},
      {"max_marginal_residual", report.certificate.max_marginal_residual},
      {"max_negative_multiplier", report.certificate.max_negative_multiplier},
      {"max_slackness_violation", report.certificate.max_slackness_violation},
      {"max_stationarity_residual",
       report.certificate.max_stationarity_residual},
      {"valid", report.certificate.valid}};
  j["multipliers"] = {{"lambda", report.lambda},
                      {"omega", report.omega},
                      {"theta", report.theta},
                      {"r", matrix_to_json(report.multipliers)}};
  j["mu_sort_perm"] = report.mu_sort_perm;
  j["nu_sort_perm"] = report.nu_sort_perm;
  if (!report.trace.empty()) {
    json t = json::array();
    for (const auto& e : report.trace)
      t.push_back({{"row", e.row},
                   {"zero_count", e.zero_count},
                   {"mass", e.mass}});
    j["trace"] = std::move(t);
  }
  return j.dump(2);
}

SolutionReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  SolutionReport r;
  try {
    r.method = j.value("method", std::string{});
    r.mu = j.at("mu").get<std::vector<double>>();
    r.nu = j.at("nu").get<std::vector<double>>();
    if (j.contains("mu_labels"))
      r.mu_labels = j["mu_labels"].get<std::vector<std::string>>();
    if (j.contains("nu_labels"))
      r.nu_labels = j["nu_labels"].get<std::vector<std::string>>();
    r.coupling = matrix_from_json(j.at("coupling"), "coupling");
    r.row_sums = j.at("row_sums").get<std::vector<double>>();
    r.col_sums = j.at("col_sums").get<std::vector<double>>();
    r.ic = j.at("ic").get<double>();
    r.condition_h = j.at("condition_h").get<bool>();
    if (j.contains("corner") && !j["corner"].is_null())
      r.corner = RectangleCorner{j["corner"].at("p1").get<int>(),
                                 j["corner"].at("q1").get<int>()};
    r.iterations = j.at("iterations").get<int>();
    const auto& c = j.at("certificate");
    r.certificate.max_negative_entry = c.at("max_negative_entry");
    r.certificate.max_marginal_residual = c.at("max_marginal_residual");
    r.certificate.max_negative_multiplier = c.at("max_negative_multiplier");
    r.certificate.max_slackness_violation = c.at("max_slackness_violation");
    r.certificate.max_stationarity_residual =
        c.at("max_stationarity_residual");
    r.certificate.valid = c.at("valid");
    const auto& m = j.at("multipliers");
    r.lambda = m.at("lambda").get<std::vector<double>>();
    r.omega = m.at("omega").get<std::vector<double>>();
    r.theta = m.at("theta").get<double>();
    r.multipliers = matrix_from_json(m.at("r"), "multipliers.r");
    r.mu_sort_perm = j.at("mu_sort_perm").get<std::vector<int>>();
    r.nu_sort_perm = j.at("nu_sort_perm").get<std::vector<int>>();
    if (j.contains("trace"))
      for (const auto& e : j["trace"])
        r.trace.push_back({e.at("row").get<int>(),
                           e.at("zero_count").get<int>(),
                           e.at("mass").get<double>()});
  } catch (const json::exception& e) {
    throw ParseError(std::string("report field missing or mistyped: ") +
                     e.what());
  }
  return r;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void append_vector(std::string& out, const char* name,
                   const std::vector<double>& v) {
  out += name;
  out += ":";
  for (double x : v) {
    out += ' ';
    out += fmt(x);
  }
  out += '\n';
}

}  // namespace

std::string to_text(const SolutionReport& report) {
  std::string out;
  out += "method: " + report.method + "\n";
  out += "size: " + std::to_string(report.mu.size()) + " x " +
         std::to_string(report.nu.size()) + "\n";
  append_vector(out, "mu", report.mu);
  append_vector(out, "nu", report.nu);
  out += "condition_h: ";
  out += report.condition_h ? "true" : "false";
  out += "\nic: " + fmt(report.ic) + "\n";
  out += "iterations: " + std::to_string(report.iterations) + "\n";
  if (report.corner)
    out += "corner: p1=" + std::to_string(report.corner->p1) +
           " q1=" + std::to_string(report.corner->q1) + "\n";
  out += "coupling (caller index order, one row per line):\n";
  for (int u = 0; u < report.coupling.rows(); ++u) {
    out += " ";
    for (int v = 0; v < report.coupling.cols(); ++v) {
      out += ' ';
      out += fmt(report.coupling(u, v));
    }
    out += '\n';
  }
  append_vector(out, "row_sums", report.row_sums);
  append_vector(out, "col_sums", report.col_sums);
  out += "certificate: ";
  out += report.certificate.valid ? "valid" : "INVALID";
  out += " (negative_entry " + fmt(report.certificate.max_negative_entry);
  out += ", marginal " + fmt(report.certificate.max_marginal_residual);
  out += ", negative_multiplier " +
         fmt(report.certificate.max_negative_multiplier);
  out += ", slackness " + fmt(report.certificate.max_slackness_violation);
  out += ", stationarity " + fmt(report.certificate.max_stationarity_residual);
  out += ")\n";
  if (!report.trace.empty()) {
    out += "trace (row, zero_count, mass):\n";
    for (const auto& e : report.trace)
      out += "  " + std::to_string(e.row) + " " +
             std::to_string(e.zero_count) + " " + fmt(e.mass) + "\n";
  }
  return out;
}

std::string to_json(const ProportionEstimate& estimate) {
  json j;
  j["estimate"] = estimate.estimate;
  j["std_error"] = estimate.std_error;
  j["n_samples"] = estimate.n_samples;
  if (estimate.analytic)
    j["analytic"] = *estimate.analytic;
  else
    j["analytic"] = nullptr;
  return j.dump(2);
}

std::string to_text(const ProportionEstimate& estimate) {
  std::string out = "estimate: " + fmt(estimate.estimate) + "\n";
  out += "std_error: " + fmt(estimate.std_error) + "\n";
  out += "n_samples: " + std::to_string(estimate.n_samples) + "\n";
  if (estimate.analytic) out += "analytic: " + fmt(*estimate.analytic) + "\n";
  return out;
}

}  // namespace ioc
