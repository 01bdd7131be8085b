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

// Command line for minimum index-of-coincidence couplings.
//
// Exit codes are a stable contract: 0 on success, 1 on usage or parse
// problems (including invalid marginals), 2 when a certificate or
// eligibility check fails or an iterative method does not converge.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ioc/couplings.hpp"
#include "ioc/errors.hpp"
#include "ioc/measure.hpp"
#include "ioc/mixture.hpp"
#include "ioc/oracle.hpp"
#include "ioc/rectangle.hpp"
#include "ioc/report.hpp"
#include "ioc/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCertificate = 2;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw ioc::ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

struct PreparedProblem {
  ioc::ProblemFile original;
  ioc::StrippedProblem strip;  // identity maps when stripping is off
  ioc::Marginal mu = ioc::Marginal::uniform(1);
  ioc::Marginal nu = ioc::Marginal::uniform(1);
};

PreparedProblem prepare(const std::string& text, bool strip_zeros) {
  PreparedProblem p;
  p.original = ioc::parse_problem(text);
  if (strip_zeros) {
    p.strip = ioc::strip_zeros(p.original);
  } else {
    p.strip.reduced = p.original;
    p.strip.mu_original_size = static_cast<int>(p.original.mu.size());
    p.strip.nu_original_size = static_cast<int>(p.original.nu.size());
    for (int i = 0; i < p.strip.mu_original_size; ++i)
      p.strip.mu_kept.push_back(i);
    for (int i = 0; i < p.strip.nu_original_size; ++i)
      p.strip.nu_kept.push_back(i);
  }
  p.mu = ioc::Marginal::from_weights(p.strip.reduced.mu);
  p.nu = ioc::Marginal::from_weights(p.strip.reduced.nu);
  return p;
}

struct ReportPieces {
  std::string method;
  const ioc::Matrix* pi_sorted = nullptr;
  const ioc::Matrix* multipliers = nullptr;
  const std::vector<double>* lambda = nullptr;
  const std::vector<double>* omega = nullptr;
  double theta = 0.0;
  int iterations = 0;
  ioc::Certificate certificate;
  std::vector<ioc::TraceEntry> trace;
};

ioc::SolutionReport assemble(const PreparedProblem& p,
                             const ReportPieces& pieces) {
  ioc::SolutionReport r;
  r.method = pieces.method;
  r.mu = p.original.mu;
  r.nu = p.original.nu;
  r.mu_labels = p.original.mu_labels;
  r.nu_labels = p.original.nu_labels;

  const ioc::Matrix reduced_original =
      ioc::to_original_order(*pieces.pi_sorted, p.mu, p.nu);
  r.coupling = ioc::reinsert_zeros(reduced_original, p.strip.mu_kept,
                                   p.strip.nu_kept, p.strip.mu_original_size,
                                   p.strip.nu_original_size);
  r.row_sums.resize(r.coupling.rows());
  for (int u = 0; u < r.coupling.rows(); ++u)
    r.row_sums[u] = r.coupling.row_sum(u);
  r.col_sums.resize(r.coupling.cols());
  for (int v = 0; v < r.coupling.cols(); ++v)
    r.col_sums[v] = r.coupling.col_sum(v);

  r.ic = ioc::index_of_coincidence(*pieces.pi_sorted);
  r.condition_h = ioc::condition_h(p.mu, p.nu);
  r.corner = ioc::detect_rectangle(*pieces.pi_sorted);
  r.iterations = pieces.iterations;
  r.certificate = pieces.certificate;
  if (pieces.lambda) r.lambda = *pieces.lambda;
  if (pieces.omega) r.omega = *pieces.omega;
  r.theta = pieces.theta;
  if (pieces.multipliers) r.multipliers = *pieces.multipliers;
  for (int i = 0; i < p.mu.size(); ++i)
    r.mu_sort_perm.push_back(p.strip.mu_kept[p.mu.sort_permutation()[i]]);
  for (int j = 0; j < p.nu.size(); ++j)
    r.nu_sort_perm.push_back(p.strip.nu_kept[p.nu.sort_permutation()[j]]);
  r.trace = pieces.trace;
  return r;
}

void emit(const ioc::SolutionReport& report, const std::string& format) {
  if (format == "structured")
    std::cout << ioc::to_json(report) << "\n";
  else
    std::cout << ioc::to_text(report);
}

int run_solve(const std::string& input, bool strip, bool trace,
              const std::string& format) {
  const PreparedProblem p = prepare(read_input(input), strip);
  ioc::SolveOptions options;
  options.record_trace = trace;
  const ioc::Solution sol = ioc::solve(p.mu, p.nu, options);
  const ioc::Certificate cert = ioc::verify_kkt(sol, p.mu, p.nu);

  ReportPieces pieces;
  pieces.method = "staircase";
  pieces.pi_sorted = &sol.pi_star.entries();
  pieces.multipliers = &sol.multipliers;
  pieces.lambda = &sol.lambda;
  pieces.omega = &sol.omega;
  pieces.theta = sol.theta;
  pieces.iterations = sol.productive_iterations;
  pieces.certificate = cert;
  pieces.trace = sol.trace;
  emit(assemble(p, pieces), format);
  return cert.valid ? kExitOk : kExitCertificate;
}

int run_check(const std::string& input, bool strip, const std::string& format,
              double support_threshold) {
  const PreparedProblem p = prepare(read_input(input), strip);
  const ioc::Matrix& given = p.original.pi;
  if (given.rows() == 0)
    throw ioc::ParseError("check needs a \"pi\" matrix in the input");
  if (given.rows() != p.strip.mu_original_size ||
      given.cols() != p.strip.nu_original_size)
    throw ioc::ParseError("pi has the wrong shape for the given margins");

  // Reduce to kept rows/columns, then reorder into sorted margin order.
  const auto& pr = p.mu.sort_permutation();
  const auto& pc = p.nu.sort_permutation();
  ioc::Matrix sorted(p.mu.size(), p.nu.size());
  for (int u = 0; u < sorted.rows(); ++u)
    for (int v = 0; v < sorted.cols(); ++v)
      sorted(u, v) =
          given(p.strip.mu_kept[pr[u]], p.strip.nu_kept[pc[v]]);

  const auto rec = ioc::recover_multipliers(sorted, support_threshold);
  const ioc::Certificate cert =
      ioc::verify_kkt(sorted, p.mu, p.nu, {}, support_threshold);

  ReportPieces pieces;
  pieces.method = "check";
  pieces.pi_sorted = &sorted;
  pieces.multipliers = &rec.r;
  pieces.lambda = &rec.lambda;
  pieces.omega = &rec.omega;
  pieces.theta = rec.theta;
  pieces.certificate = cert;
  emit(assemble(p, pieces), format);
  return cert.valid ? kExitOk : kExitCertificate;
}

int run_rectangle(const std::string& input, bool strip,
                  const std::string& format) {
  const PreparedProblem p = prepare(read_input(input), strip);
  const ioc::SignedMatrix plus = ioc::indeterminacy_coupling(p.mu, p.nu);
  const ioc::RectangleCorner c = ioc::corner(plus);
  const ioc::Coupling tilde = ioc::pi_tilde(plus, c);

  const int pp = p.mu.size(), qq = p.nu.size();
  ioc::Matrix r(pp, qq);
  std::vector<double> lambda(p.mu.weights()), omega(p.nu.weights());
  for (double& x : lambda) x /= qq;
  for (double& x : omega) x /= pp;
  double theta = -1.0 / (static_cast<double>(pp) * qq);
  if (!c.empty()) {
    const ioc::Deltas d = ioc::deltas(plus, c);
    r = ioc::multiplier_field(plus, d, c);
    const ioc::Aggregates agg = ioc::aggregates(d, c, pp, qq);
    for (int u = 0; u < pp; ++u) lambda[u] -= agg.row_sums[u] / qq;
    for (int v = 0; v < qq; ++v) omega[v] -= agg.col_sums[v] / pp;
    theta += agg.total / (static_cast<double>(pp) * qq);
  }
  ioc::Solution shim;
  shim.pi_star = tilde;
  shim.multipliers = r;
  shim.lambda = lambda;
  shim.omega = omega;
  shim.theta = theta;
  const ioc::Certificate cert = ioc::verify_kkt(shim, p.mu, p.nu);

  ReportPieces pieces;
  pieces.method = "rectangle";
  pieces.pi_sorted = &tilde.entries();
  pieces.multipliers = &r;
  pieces.lambda = &lambda;
  pieces.omega = &omega;
  pieces.theta = theta;
  pieces.iterations = c.empty() ? 0 : 1;
  pieces.certificate = cert;
  emit(assemble(p, pieces), format);
  // An invalid certificate here means the single-rectangle closed form
  // does not apply to this instance.
  return cert.valid ? kExitOk : kExitCertificate;
}

int run_oracle(const std::string& input, bool strip, double tolerance,
               int max_iterations, const std::string& format) {
  const PreparedProblem p = prepare(read_input(input), strip);
  ioc::OracleConfig cfg;
  cfg.tolerance = tolerance;
  cfg.max_iterations = max_iterations;
  const ioc::Coupling projected = ioc::project_uniform(p.mu, p.nu, cfg);
  const ioc::Certificate cert =
      ioc::verify_kkt(projected.matrix(), p.mu, p.nu,
                      ioc::CertificateTolerances::relaxed(1e-6));

  const auto rec = ioc::recover_multipliers(projected.entries());
  ReportPieces pieces;
  pieces.method = "oracle";
  pieces.pi_sorted = &projected.entries();
  pieces.multipliers = &rec.r;
  pieces.lambda = &rec.lambda;
  pieces.omega = &rec.omega;
  pieces.theta = rec.theta;
  pieces.certificate = cert;
  emit(assemble(p, pieces), format);
  return cert.valid ? kExitOk : kExitCertificate;
}

int run_measure(int p, int q, const std::string& mode, std::int64_t samples,
                std::uint64_t seed, int shards, const std::string& format) {
  const ioc::ProportionMode m = mode == "self" ? ioc::ProportionMode::kSelf
                                               : ioc::ProportionMode::kPair;
  const ioc::ProportionEstimate est = ioc::estimate_proportion(
      p, q, m, samples, ioc::RandomStream(seed), shards);
  if (format == "structured")
    std::cout << ioc::to_json(est) << "\n";
  else
    std::cout << ioc::to_text(est);
  return kExitOk;
}

int run_sample(const std::string& input, bool strip, std::int64_t draws,
               std::uint64_t seed, const std::string& format) {
  const PreparedProblem p = prepare(read_input(input), strip);
  ioc::RandomStream rng(seed);
  const auto& pr = p.mu.sort_permutation();
  const auto& pc = p.nu.sort_permutation();
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(draws));
  std::string method;

  if (ioc::condition_h(p.mu, p.nu)) {
    method = "mixture";
    const ioc::MixtureDecomposition d = ioc::decompose(p.mu, p.nu);
    for (std::int64_t i = 0; i < draws; ++i) {
      const auto [u, v] = ioc::draw(d, rng);
      out.emplace_back(p.strip.mu_kept[pr[u]], p.strip.nu_kept[pc[v]]);
    }
  } else {
    // No mixture form exists for infeasible margins; fall back to inverse
    // CDF over the solved coupling's cells.
    method = "table";
    const ioc::Solution sol = ioc::solve(p.mu, p.nu);
    const ioc::Matrix& pi = sol.pi_star.entries();
    for (std::int64_t i = 0; i < draws; ++i) {
      const double pick = rng.uniform();
      double cum = 0.0;
      int cell = pi.rows() * pi.cols() - 1;
      for (int k = 0; k < pi.rows() * pi.cols(); ++k) {
        cum += pi.data()[k];
        if (pick <= cum) {
          cell = k;
          break;
        }
      }
      const int u = cell / pi.cols(), v = cell % pi.cols();
      out.emplace_back(p.strip.mu_kept[pr[u]], p.strip.nu_kept[pc[v]]);
    }
  }

  if (format == "structured") {
    std::string text = "{\n  \"method\": \"" + method + "\",\n  \"draws\": [";
    for (std::size_t i = 0; i < out.size(); ++i) {
      text += i == 0 ? "" : ", ";
      text += "[" + std::to_string(out[i].first) + ", " +
              std::to_string(out[i].second) + "]";
    }
    text += "]\n}";
    std::cout << text << "\n";
  } else {
    std::cout << "# method: " << method << "\n";
    for (const auto& [u, v] : out) std::cout << u << " " << v << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact couplings of minimal index of coincidence, with optimality "
      "certificates, closed forms, samplers and feasible-margin measures"};
  app.require_subcommand(1);

  std::string input;
  std::string format = "text";
  bool strip = false;
  const auto format_check = CLI::IsMember({"text", "structured"});

  auto* solve_cmd =
      app.add_subcommand("solve", "compute the optimal coupling");
  bool trace = false;
  solve_cmd->add_option("--input", input, "problem file (JSON or two-column; - for stdin)");
  solve_cmd->add_flag("--strip-zeros", strip, "drop exact-zero weights, pad outputs back");
  solve_cmd->add_flag("--trace", trace, "record per-iteration row, zero count and mass");
  solve_cmd->add_option("--format", format)->check(format_check);

  auto* check_cmd =
      app.add_subcommand("check", "certify a provided coupling matrix");
  double support_threshold = 1e-8;
  check_cmd->add_option("--input", input, "problem file with a \"pi\" matrix");
  check_cmd->add_flag("--strip-zeros", strip);
  check_cmd->add_option("--support-threshold", support_threshold,
                        "entries above this count as support");
  check_cmd->add_option("--format", format)->check(format_check);

  auto* rect_cmd = app.add_subcommand(
      "rectangle", "single-rectangle closed form (fails on other instances)");
  rect_cmd->add_option("--input", input);
  rect_cmd->add_flag("--strip-zeros", strip);
  rect_cmd->add_option("--format", format)->check(format_check);

  auto* oracle_cmd = app.add_subcommand(
      "oracle", "projection by alternating projections (verification aid)");
  double tolerance = 1e-10;
  int max_iterations = 200000;
  oracle_cmd->add_option("--input", input);
  oracle_cmd->add_flag("--strip-zeros", strip);
  oracle_cmd->add_option("--tolerance", tolerance)->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--max-iterations", max_iterations)
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--format", format)->check(format_check);

  auto* measure_cmd = app.add_subcommand(
      "measure", "Monte Carlo measure of feasible margins");
  int mp = 2, mq = 0;
  std::string mode = "pair";
  std::int64_t samples = 1000000;
  std::uint64_t seed = 0;
  int shards = 1;
  measure_cmd->add_option("--p", mp, "row dimension")->required()
      ->check(CLI::PositiveNumber);
  measure_cmd->add_option("--q", mq, "column dimension (defaults to p)")
      ->check(CLI::PositiveNumber);
  measure_cmd->add_option("--mode", mode)->check(CLI::IsMember({"self", "pair"}));
  measure_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  measure_cmd->add_option("--seed", seed)->required();
  measure_cmd->add_option("--shards", shards)->check(CLI::PositiveNumber);
  measure_cmd->add_option("--format", format)->check(format_check);

  auto* sample_cmd =
      app.add_subcommand("sample", "draw index pairs from the coupling");
  std::int64_t draws = 1;
  sample_cmd->add_option("--input", input);
  sample_cmd->add_flag("--strip-zeros", strip);
  sample_cmd->add_option("--samples", draws, "number of draws")
      ->check(CLI::NonNegativeNumber);
  sample_cmd->add_option("--seed", seed)->required();
  sample_cmd->add_option("--format", format)->check(format_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(input, strip, trace, format);
    if (check_cmd->parsed())
      return run_check(input, strip, format, support_threshold);
    if (rect_cmd->parsed()) return run_rectangle(input, strip, format);
    if (oracle_cmd->parsed())
      return run_oracle(input, strip, tolerance, max_iterations, format);
    if (measure_cmd->parsed())
      return run_measure(mp, mq == 0 ? mp : mq, mode, samples, seed, shards,
                         format);
    if (sample_cmd->parsed())
      return run_sample(input, strip, draws, seed, format);
  } catch (const ioc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ioc::EmptyMarginalError& e) {
    std::cerr << "error: invalid marginal: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ioc::NonPositiveWeightError& e) {
    std::cerr << "error: invalid marginal: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ioc::NotNormalizedError& e) {
    std::cerr << "error: invalid marginal: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ioc::ZeroWeightError& e) {
    std::cerr << "error: invalid marginal: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ioc::Error& e) {
    // NotEligible, NoConvergence and internal invariant failures are
    // verification-level failures, not usage problems.
    std::cerr << "error: " << e.what() << "\n";
    return kExitCertificate;
  }
  return kExitUsage;
}
