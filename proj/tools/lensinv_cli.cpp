// lensinv: compute and check the lens-space invariant I_k from the command line.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lensinv/errors.hpp"
#include "lensinv/invariant.hpp"
#include "lensinv/serialize.hpp"

using namespace lensinv;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kToleranceFail = 1, kInvalidParams = 2, kDegenerate = 3 };

struct Common {
  int samples = 20;
  std::uint64_t seed = 42;
  std::string format = "text";
  std::string output;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw std::runtime_error("cannot write " + c.output);
  out << text;
}

const char* kReportHeader = "p,q,k,mean_const,max_dev,conjecture,rel_err";

std::string report_row(const InvariantReport& r) {
  return std::to_string(r.params.p) + "," + std::to_string(r.params.q) + "," + std::to_string(r.params.k) + "," +
         num(r.mean) + "," + num(r.max_dev) + "," + num(r.conjecture) + "," + num(r.rel_err);
}

void add_common(CLI::App* sub, Common& c, bool with_samples = true) {
  if (with_samples) {
    sub->add_option("--samples", c.samples, "generic realizations per (p, q, k)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  }
  sub->add_option("--format", c.format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  sub->add_option("--output", c.output, "write to this file instead of stdout");
}

// compute

struct ComputeArgs {
  LensParams lp{7, 1, 1};
  double tol = 1e-8;
};

int run_compute(const Common& c, const ComputeArgs& a) {
  const InvariantReport r = compute_invariant(a.lp, c.samples, c.seed, a.tol);
  std::ostringstream out;
  if (c.format == "json") {
    out << to_json(r).dump(2) << "\n";
  } else if (c.format == "csv") {
    out << kReportHeader << "\n" << report_row(r) << "\n";
  } else {
    out << "L(" << a.lp.p << "," << a.lp.q << ") k=" << a.lp.k << "\n"
        << "  samples      " << r.samples.size() << "\n"
        << "  mean const   " << num(r.mean) << "\n"
        << "  max dev      " << sci(r.max_dev) << (r.flagged ? "  (above tolerance)" : "") << "\n"
        << "  conjecture   " << num(r.conjecture) << "\n"
        << "  rel err      " << sci(r.rel_err) << "\n"
        << "  max |omega|  " << sci(r.max_defect) << "\n";
    if (r.paper_ref_value)
      out << "  published    " << num(*r.paper_ref_value) << "  (rel "
          << sci(std::abs(r.mean - *r.paper_ref_value) / *r.paper_ref_value) << ")\n";
  }
  emit(c, out.str());
  return r.flagged ? kToleranceFail : kPass;
}

// verify-paper

int run_verify_published(const Common& c, double tol) {
  json rows = json::array();
  std::ostringstream csv, text;
  csv << "p,q,k,mean_const,published,rel_err,pass\n";
  int passed = 0;
  for (int q : {1, 2}) {
    for (int k : {1, 2, 3}) {
      const LensParams lp{7, q, k};
      const InvariantReport r = compute_invariant(lp, c.samples, c.seed);
      const double ref = *published_value(lp);
      const double err = std::abs(r.mean - ref) / ref;
      const bool ok = err <= tol;
      passed += ok ? 1 : 0;
      rows.push_back({{"p", 7}, {"q", q}, {"k", k}, {"mean", r.mean}, {"published", ref}, {"rel_err", err},
                      {"max_dev", r.max_dev}, {"pass", ok}});
      csv << "7," << q << "," << k << "," << num(r.mean) << "," << num(ref) << "," << num(err) << ","
          << (ok ? "true" : "false") << "\n";
      char line[160];
      std::snprintf(line, sizeof line, "L(7,%d) k=%d  %-18s %-14s %.3e  %s\n", q, k, num(r.mean).c_str(),
                    num(ref).c_str(), err, ok ? "PASS" : "FAIL");
      text << line;
    }
  }
  std::ostringstream out;
  if (c.format == "json") {
    out << json{{"tolerance", tol}, {"passed", passed}, {"total", 6}, {"rows", rows}}.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << csv.str();
  } else {
    out << "lens    k  computed           published      rel err    result\n"
        << text.str() << passed << "/6 within " << sci(tol) << "\n";
  }
  emit(c, out.str());
  return passed == 6 ? kPass : kToleranceFail;
}

// verify-matrices

int run_verify_matrices(const Common& c, double tol) {
  std::mt19937_64 rng(c.seed);
  json rows = json::array();
  std::ostringstream csv, text;
  csv << "p,q,k,samples,matrix_residual,simplified_residual,pass\n";
  bool all = true;
  for (int q : {1, 2}) {
    for (int k : {1, 2, 3}) {
      const LensParams lp{7, q, k};
      double matrix = 0.0, simplified = 0.0;
      for (int n = 0; n < c.samples; ++n) {
        const LensRealization r = realize(lp, sample_generic_params(lp, rng));
        const Eigen::MatrixXd fc = f_submatrix_c(f_matrix(r), edge_partition(7));
        const Eigen::MatrixXd ref = reference_submatrix_l7(q, r.volumes);
        const double scale = ref.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < ref.rows(); ++i)
          for (Eigen::Index j = 0; j < ref.cols(); ++j) {
            const double denom = ref(i, j) != 0.0 ? std::abs(ref(i, j)) : scale;
            matrix = std::max(matrix, std::abs(fc(i, j) - ref(i, j)) / denom);
          }
        if (q == 1) simplified = std::max(simplified, simplified_entries_check(r).max_residual());
      }
      const bool ok = matrix <= tol && simplified <= tol;
      all = all && ok;
      json row = {{"p", 7}, {"q", q}, {"k", k}, {"samples", c.samples}, {"matrix_residual", matrix}, {"pass", ok}};
      if (q == 1) row["simplified_residual"] = simplified;
      rows.push_back(row);
      csv << "7," << q << "," << k << "," << c.samples << "," << num(matrix) << ","
          << (q == 1 ? num(simplified) : "") << "," << (ok ? "true" : "false") << "\n";
      char line[160];
      std::snprintf(line, sizeof line, "L(7,%d) k=%d  F|_C %.3e  simplified %s  %s\n", q, k, matrix,
                    q == 1 ? sci(simplified).c_str() : "n/a      ", ok ? "PASS" : "FAIL");
      text << line;
    }
  }
  std::ostringstream out;
  if (c.format == "json")
    out << json{{"tolerance", tol}, {"pass", all}, {"rows", rows}}.dump(2) << "\n";
  else if (c.format == "csv")
    out << csv.str();
  else
    out << text.str();
  emit(c, out.str());
  return all ? kPass : kToleranceFail;
}

// sweep

struct SweepArgs {
  int p_min = 3;
  int p_max = 12;
  double tol = 1e-8;
  bool pairs = false;
};

int run_sweep(const Common& c, const SweepArgs& a) {
  if (a.p_min < 3 || a.p_max < a.p_min) throw InvalidLensParams("need 3 <= p-min <= p-max");
  json rows = json::array();
  std::ostringstream csv, text;
  csv << kReportHeader << "\n";
  bool all = true;
  // Per (p, q): mean const over admissible k, for the pair report.
  std::vector<std::vector<std::vector<double>>> means(a.p_max + 1);
  for (int p = a.p_min; p <= a.p_max; ++p) {
    means[p].resize(p);
    for (int q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (int k : admissible_k(p)) {
        const LensParams lp{p, q, k};
        try {
          const InvariantReport r = compute_invariant(lp, c.samples, c.seed, a.tol);
          const bool bad = r.flagged || r.rel_err > a.tol;
          all = all && !bad;
          means[p][q].push_back(r.mean);
          json row = to_json(r);
          row.erase("samples");
          row["flagged"] = bad;
          rows.push_back(row);
          csv << report_row(r) << "\n";
          char line[160];
          std::snprintf(line, sizeof line, "%3d %3d %3d  %-18s %-18s %.3e%s\n", p, q, k, num(r.mean).c_str(),
                        num(r.conjecture).c_str(), r.rel_err, bad ? "  FLAGGED" : "");
          text << line;
        } catch (const DegenerateRealization& e) {
          all = false;
          means[p][q].push_back(std::nan(""));
          rows.push_back({{"p", p}, {"q", q}, {"k", k}, {"flagged", true}, {"error", e.what()}});
          csv << p << "," << q << "," << k << ",nan,nan," << num(conjecture_value(lp)) << ",nan\n";
          text << p << " " << q << " " << k << "  degenerate sampling: " << e.what() << "\n";
        }
      }
    }
  }

  json pair_rows = json::array();
  std::ostringstream pair_text;
  if (a.pairs) {
    for (int p = a.p_min; p <= a.p_max; ++p) {
      for (int q1 = 1; q1 < p; ++q1) {
        for (int q2 = q1 + 1; q2 < p; ++q2) {
          if (std::gcd(p, q1) != 1 || std::gcd(p, q2) != 1) continue;
          const int inv = inverse_mod(q1, p);
          const bool homeomorphic = q2 == p - q1 || q2 == inv || q2 == p - inv;
          const bool same = compare_multisets(p, means[p][q1], means[p][q2], a.tol).same;
          // Homeomorphic spaces must agree; the converse is only reported.
          if (homeomorphic && !same) all = false;
          pair_rows.push_back(
              {{"p", p}, {"q1", q1}, {"q2", q2}, {"homeomorphic", homeomorphic}, {"same_multiset", same}});
          pair_text << "L(" << p << "," << q1 << ") / L(" << p << "," << q2 << ")  "
                    << (same ? "agree" : "differ") << (homeomorphic ? "  (homeomorphic)" : "") << "\n";
        }
      }
    }
  }

  std::ostringstream out;
  if (c.format == "json") {
    json j = {{"tolerance", a.tol}, {"pass", all}, {"rows", rows}};
    if (a.pairs) j["pairs"] = pair_rows;
    out << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << csv.str();
    if (a.pairs) {
      out << "\np,q1,q2,homeomorphic,same_multiset\n";
      for (const json& r : pair_rows)
        out << r["p"] << "," << r["q1"] << "," << r["q2"] << "," << r["homeomorphic"] << "," << r["same_multiset"]
            << "\n";
    }
  } else {
    out << "  p   q   k  mean const         conjecture         rel err\n" << text.str();
    if (a.pairs) out << "\n" << pair_text.str();
  }
  emit(c, out.str());
  return all ? kPass : kToleranceFail;
}

// check-derivatives

struct DerivArgs {
  LensParams lp{7, 1, 1};
  double h = 1e-6;
  double tol = 1e-6;
  bool random = false;
};

int run_check_derivatives(const Common& c, const DerivArgs& a) {
  RealizationParams rp;
  if (a.random) {
    std::mt19937_64 rng(c.seed);
    rp = sample_generic_params(a.lp, rng);
  } else {
    rp = well_conditioned_params(a.lp);
  }
  const LensRealization r = realize(a.lp, rp);
  const Eigen::MatrixXd jac = defect_jacobian_analytic(r.complex, r.metric());
  const Eigen::MatrixXd fd = defect_jacobian_fd(r.complex, r.metric(), a.h);
  const double diff = (jac - fd).cwiseAbs().maxCoeff();
  const double scale = jac.cwiseAbs().maxCoeff();
  const bool ok = diff <= a.tol;
  std::ostringstream out;
  if (c.format == "json") {
    out << json{{"p", a.lp.p}, {"q", a.lp.q},     {"k", a.lp.k},       {"rho", rp.rho},
                {"sigma", rp.sigma}, {"s", rp.s}, {"alpha", rp.alpha}, {"h", a.h},
                {"max_abs_diff", diff}, {"max_abs_entry", scale}, {"tolerance", a.tol}, {"pass", ok}}
                .dump(2)
        << "\n";
  } else if (c.format == "csv") {
    out << "p,q,k,h,max_abs_diff,pass\n"
        << a.lp.p << "," << a.lp.q << "," << a.lp.k << "," << num(a.h) << "," << num(diff) << ","
        << (ok ? "true" : "false") << "\n";
  } else {
    out << "L(" << a.lp.p << "," << a.lp.q << ") k=" << a.lp.k << " at rho=" << num(rp.rho)
        << " sigma=" << num(rp.sigma) << " s=" << num(rp.s) << " alpha=" << num(rp.alpha) << "\n"
        << "  max |analytic - central difference|  " << sci(diff) << "  (h = " << sci(a.h) << ")\n"
        << "  max |d omega / d l|                  " << sci(scale) << "\n"
        << "  " << (ok ? "PASS" : "FAIL") << " at " << sci(a.tol) << "\n";
  }
  emit(c, out.str());
  return ok ? kPass : kToleranceFail;
}

void add_lens(CLI::App* sub, LensParams& lp, bool required) {
  auto* p = sub->add_option("--p", lp.p, "order of the lens space");
  auto* q = sub->add_option("--q", lp.q, "0 < q < p, gcd(p, q) = 1");
  auto* k = sub->add_option("--k", lp.k, "1 <= k <= p/2, gcd(p, k) = 1");
  if (required) {
    p->required();
    q->required();
    k->required();
  } else {
    p->capture_default_str();
    q->capture_default_str();
    k->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Lens-space invariant I_k.\n\n"
      "Exit codes: 0 pass, 1 tolerance failure, 2 invalid parameters, 3 degenerate realization.\n"
      "CSV columns:\n"
      "  compute, sweep:      p,q,k,mean_const,max_dev,conjecture,rel_err  (nan for degenerate rows)\n"
      "  verify-paper:        p,q,k,mean_const,published,rel_err,pass\n"
      "  verify-matrices:     p,q,k,samples,matrix_residual,simplified_residual,pass\n"
      "  check-derivatives:   p,q,k,h,max_abs_diff,pass"};
  app.require_subcommand(1);

  Common common;

  ComputeArgs compute;
  auto* c_compute = app.add_subcommand("compute", "evaluate I_k over random generic realizations");
  add_lens(c_compute, compute.lp, true);
  c_compute->add_option("--tol", compute.tol, "constancy tolerance on (max - min) / mean")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(c_compute, common);

  double published_tol = 1e-9;
  auto* c_published = app.add_subcommand("verify-paper", "compare with the published ten-digit values for p = 7");
  c_published->add_option("--tol", published_tol, "relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(c_published, common);

  double matrix_tol = 1e-10;
  auto* c_matrices = app.add_subcommand("verify-matrices", "compare F|_C with the explicit matrices for L(7,1), L(7,2)");
  c_matrices->add_option("--tol", matrix_tol, "relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(c_matrices, common);

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "compare I_k with (16/p) sin^2(pi k/p) sin^2(pi q k/p) over a range of p");
  c_sweep->add_option("--p-min", sweep.p_min, "smallest p")->capture_default_str();
  c_sweep->add_option("--p-max", sweep.p_max, "largest p")->capture_default_str();
  c_sweep->add_option("--tol", sweep.tol, "relative tolerance and constancy tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_sweep->add_flag("--pairs", sweep.pairs, "also compare the multisets {I_k} between every two q of each p");
  add_common(c_sweep, common);

  DerivArgs deriv;
  auto* c_deriv = app.add_subcommand("check-derivatives", "analytic d omega / d l against central differences");
  add_lens(c_deriv, deriv.lp, false);
  c_deriv->add_option("--step", deriv.h, "finite-difference step")->check(CLI::PositiveNumber)->capture_default_str();
  c_deriv->add_option("--tol", deriv.tol, "absolute tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  c_deriv->add_flag("--random", deriv.random, "use a random generic realization instead of a well-conditioned one");
  c_deriv->add_option("--seed", common.seed, "RNG seed for --random")->capture_default_str();
  add_common(c_deriv, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidParams;
  }

  try {
    if (*c_compute) return run_compute(common, compute);
    if (*c_published) return run_verify_published(common, published_tol);
    if (*c_matrices) return run_verify_matrices(common, matrix_tol);
    if (*c_sweep) return run_sweep(common, sweep);
    if (*c_deriv) return run_check_derivatives(common, deriv);
  } catch (const InvalidLensParams& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kInvalidParams;
  } catch (const DegenerateRealization& e) {
    std::cerr << "degenerate realization: " << e.what() << "\n";
    return kDegenerate;
  } catch (const SingularJacobian& e) {
    std::cerr << "degenerate realization: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidParams;
  }
  return kInvalidParams;
}
