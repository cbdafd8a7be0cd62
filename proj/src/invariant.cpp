#include "lensinv/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/LU>

#include "lensinv/errors.hpp"

namespace lensinv {

namespace {

constexpr double kPi = std::numbers::pi;

double rel_residual(double a, double b, double scale) { return std::abs(a - b) / scale; }

}  // namespace

Eigen::MatrixXd f_matrix(const LensRealization& r) {
  Eigen::MatrixXd a = defect_jacobian_analytic(r.complex, r.metric());
  const Eigen::VectorXd inv = r.lengths.cwiseInverse();
  return inv.asDiagonal() * a * inv.asDiagonal();
}

Eigen::MatrixXd f_submatrix(const Eigen::MatrixXd& f, const std::vector<int>& edges) {
  const auto n = static_cast<Eigen::Index>(edges.size());
  Eigen::MatrixXd sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = f(edges[i], edges[j]);
  return sub;
}

Eigen::MatrixXd f_submatrix_c(const Eigen::MatrixXd& f, const EdgePartition& part) {
  return f_submatrix(f, part.determinant_edges);
}

double determinant(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 1.0;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

Eigen::Matrix4d free_length_jacobian(const LensParams& lp, const RealizationParams& rp) {
  validate(lp);
  const double sa = std::sin(kPi * lp.k / lp.p);
  const double sc = std::sin(kPi * lp.q * lp.k / lp.p);
  // l dl = (1/2) d(l^2); columns are (rho, sigma, s, alpha).
  auto b_row = [&](int j) {
    const double phase = rp.alpha - 2.0 * kPi * j * lp.k / lp.p;
    return Eigen::RowVector4d(rp.rho - rp.sigma * std::cos(phase), rp.sigma - rp.rho * std::cos(phase), rp.s,
                              rp.rho * rp.sigma * std::sin(phase));
  };
  Eigen::Matrix4d m;
  m.row(0) << 4.0 * rp.rho * sa * sa, 0.0, 0.0, 0.0;
  m.row(1) = b_row(0);
  m.row(2) = b_row(lp.p - 1);
  m.row(3) << 0.0, 4.0 * rp.sigma * sc * sc, 0.0, 0.0;
  return m;
}

double numerator_coefficient(const LensParams& lp, const RealizationParams& rp) {
  const Eigen::Matrix4d m = free_length_jacobian(lp, rp);
  const double det = m.partialPivLu().determinant();
  const double hadamard = m.rowwise().norm().prod();
  if (std::abs(det) <= 1e-12 * hadamard)
    throw SingularJacobian("free edge lengths do not parametrize the realization at these parameters");
  return det / (rp.rho * rp.sigma);
}

double numerator_closed_form(const LensParams& lp, const RealizationParams& rp) {
  const double sa = std::sin(kPi * lp.k / lp.p);
  return 8.0 * lens_r(lp, rp) * sa * sa * std::sin(kPi * lp.q * lp.k / lp.p) *
         std::cos(rp.alpha + kPi * lp.k / lp.p);
}

InvariantSample evaluate_sample(const LensParams& lp, const RealizationParams& rp) {
  const LensRealization r = realize(lp, rp);
  const Eigen::MatrixXd f = f_matrix(r);
  const Eigen::MatrixXd fc = f_submatrix_c(f, edge_partition(lp.p));

  InvariantSample out;
  out.params = rp;
  out.numerator = numerator_coefficient(lp, rp);
  out.det_fc = determinant(fc);
  out.volume_product = std::accumulate(r.volumes.begin(), r.volumes.end(), 1.0,
                                       [](double acc, double v) { return acc * 6.0 * v; });
  const double denom = std::abs(out.det_fc * out.volume_product);
  if (!(denom > 0.0) || !std::isfinite(denom))
    throw SingularJacobian("det(F|_C) vanishes at these parameters");
  out.value = std::abs(out.numerator) / std::sqrt(denom);
  out.max_defect = defect_angles(r.complex, r.metric()).cwiseAbs().maxCoeff();
  out.f_asymmetry = (f - f.transpose()).cwiseAbs().maxCoeff();
  return out;
}

double invariant_const(const LensParams& lp, const RealizationParams& rp) {
  return evaluate_sample(lp, rp).value;
}

double conjecture_value(const LensParams& lp) {
  validate(lp);
  const double sa = std::sin(kPi * lp.k / lp.p);
  const double sc = std::sin(kPi * lp.q * lp.k / lp.p);
  return 16.0 / lp.p * sa * sa * sc * sc;
}

std::optional<double> published_value(const LensParams& lp) {
  static const std::map<std::pair<int, int>, double> kTable = {
      {{1, 1}, 0.08100567416}, {{1, 2}, 0.8540328192}, {{1, 3}, 2.064961508},
      {{2, 1}, 0.2630237713},  {{2, 2}, 1.327985278},  {{2, 3}, 0.4089909518},
  };
  if (lp.p != 7) return std::nullopt;
  auto it = kTable.find({lp.q, lp.k});
  if (it == kTable.end()) return std::nullopt;
  return it->second;
}

std::vector<int> admissible_k(int p) {
  std::vector<int> ks;
  for (int k = 1; k <= p / 2; ++k)
    if (std::gcd(k, p) == 1) ks.push_back(k);
  return ks;
}

InvariantReport compute_invariant(const LensParams& lp, int samples, std::uint64_t seed, double constancy_tol) {
  validate(lp);
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  std::mt19937_64 rng(seed);
  InvariantReport report;
  report.params = lp;
  for (int i = 0; i < samples; ++i) {
    const InvariantSample s = evaluate_sample(lp, sample_generic_params(lp, rng));
    report.samples.push_back(s.value);
    report.max_defect = std::max(report.max_defect, s.max_defect);
  }
  const auto [lo, hi] = std::minmax_element(report.samples.begin(), report.samples.end());
  report.mean = std::accumulate(report.samples.begin(), report.samples.end(), 0.0) / samples;
  report.max_dev = (*hi - *lo) / report.mean;
  report.conjecture = conjecture_value(lp);
  report.rel_err = std::abs(report.mean - report.conjecture) / report.conjecture;
  report.paper_ref_value = published_value(lp);
  report.flagged = report.max_dev > constancy_tol;
  return report;
}

Eigen::MatrixXd reference_submatrix_l7(int q, const std::vector<double>& v) {
  if (v.size() != 7 || (q != 1 && q != 2))
    throw std::invalid_argument("explicit submatrices exist for L(7,1) and L(7,2) only");
  std::array<double, 7> u{};
  for (int i = 0; i < 7; ++i) u[i] = 1.0 / v[i];
  Eigen::MatrixXd m(5, 5);
  if (q == 1) {
    auto diag = [&](int i) { return -4 * u[i] - u[i - 1] - u[i + 1]; };
    auto next = [&](int i) { return 2 * u[i] + 2 * u[i + 1]; };
    m << diag(1), next(1), -u[2], 0, 0,
         next(1), diag(2), next(2), -u[3], 0,
         -u[2], next(2), diag(3), next(3), -u[4],
         0, -u[3], next(3), diag(4), next(4),
         0, 0, -u[4], next(4), diag(5);
  } else {
    auto sigma = [&](int i, int j, int k, int l) { return u[i] + u[j] + u[k] + u[l]; };
    auto twist = [&](int i) { return -u[i] + u[i - 1] + u[i + 1]; };
    m << -sigma(0, 1, 2, 3), twist(2), u[2] + u[3], -u[3], -u[0],
         twist(2), -sigma(1, 2, 3, 4), twist(3), u[3] + u[4], -u[4],
         u[2] + u[3], twist(3), -sigma(2, 3, 4, 5), twist(4), u[4] + u[5],
         -u[3], u[3] + u[4], twist(4), -sigma(3, 4, 5, 6), twist(5),
         -u[0], -u[4], u[4] + u[5], twist(5), -sigma(4, 5, 6, 0);
  }
  return m / 6.0;
}

double SimplifiedEntriesCheck::max_residual() const {
  return std::max({diag_vs_unsimplified, unsimplified_vs_simplified, diag_vs_simplified,
                   offdiag_vs_unsimplified, unsimplified_vs_simplified_offdiag, offdiag_vs_simplified});
}

SimplifiedEntriesCheck simplified_entries_check(const LensRealization& r) {
  if (r.params.q != 1) throw std::invalid_argument("simplified entry forms are derived for q = 1");
  const int p = r.params.p;
  const Eigen::MatrixXd f = f_matrix(r);
  const Point3& c0 = r.c(0);
  const Point3& c1 = r.c(1);
  auto vol = [](const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    return oriented_volume(a, b, c, d);
  };
  auto vi = [&](int i) { return r.volumes[((i % p) + p) % p]; };
  const Eigen::MatrixXd fc = f_submatrix_c(f, edge_partition(p));
  const double scale = fc.cwiseAbs().maxCoeff();

  SimplifiedEntriesCheck out;
  for (int i = 1; i <= p - 2; ++i) {
    const Point3 &bm = r.b(i - 1), &b0 = r.b(i), &b1 = r.b(i + 1), &b2 = r.b(i + 2);
    const double unsimplified =
        -(vol(c0, c1, b2, b0) * vol(c0, b0, b1, b2) / (vol(c0, c1, b2, b1) * vol(c0, c1, b1, b0) * vol(c1, b0, b1, b2)) +
          vol(c0, c1, b1, bm) * vol(c1, bm, b0, b1) / (vol(c0, c1, b0, bm) * vol(c0, c1, b1, b0) * vol(c0, bm, b0, b1)) +
          2.0 / vol(c0, c1, b1, b0)) /
        6.0;
    const double simplified = -4.0 / (6.0 * vi(i)) - 1.0 / (6.0 * vi(i - 1)) - 1.0 / (6.0 * vi(i + 1));
    const double entry = f(edge_b(p, i), edge_b(p, i));
    out.diag_vs_unsimplified = std::max(out.diag_vs_unsimplified, rel_residual(entry, unsimplified, scale));
    out.unsimplified_vs_simplified = std::max(out.unsimplified_vs_simplified, rel_residual(unsimplified, simplified, scale));
    out.diag_vs_simplified = std::max(out.diag_vs_simplified, rel_residual(entry, simplified, scale));
  }
  for (int i = 1; i <= p - 3; ++i) {
    const Point3 &b0 = r.b(i), &b1 = r.b(i + 1), &b2 = r.b(i + 2);
    const double unsimplified =
        (vol(c1, b0, b1, b2) / (vol(c0, c1, b1, b0) * vol(c0, b0, b1, b2)) +
         vol(c0, c1, b2, b0) / (vol(c0, c1, b1, b0) * vol(c0, c1, b2, b1)) +
         vol(c0, b0, b1, b2) / (vol(c0, c1, b2, b1) * vol(c1, b0, b1, b2))) /
        6.0;
    const double simplified = 2.0 / (6.0 * vi(i)) + 2.0 / (6.0 * vi(i + 1));
    const double entry = f(edge_b(p, i + 1), edge_b(p, i));
    out.offdiag_vs_unsimplified = std::max(out.offdiag_vs_unsimplified, rel_residual(entry, unsimplified, scale));
    out.unsimplified_vs_simplified_offdiag =
        std::max(out.unsimplified_vs_simplified_offdiag, rel_residual(unsimplified, simplified, scale));
    out.offdiag_vs_simplified = std::max(out.offdiag_vs_simplified, rel_residual(entry, simplified, scale));
  }
  return out;
}

int inverse_mod(int q, int p) {
  q = ((q % p) + p) % p;
  for (int x = 1; x < p; ++x)
    if ((q * x) % p == 1) return x;
  return 0;
}

int fold_k(int k, int p) {
  k = ((k % p) + p) % p;
  return k > p / 2 ? p - k : k;
}

HomeomorphismCheck compare_multisets(int p, const std::vector<double>& first, const std::vector<double>& second,
                                     double rel_tol) {
  const std::vector<int> ks = admissible_k(p);
  if (first.size() != ks.size() || second.size() != ks.size())
    throw std::invalid_argument("one value per admissible k expected");
  HomeomorphismCheck out;
  std::vector<bool> used(ks.size(), false);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < ks.size() && !found; ++j) {
      if (!used[j] && std::abs(first[i] - second[j]) <= rel_tol * std::abs(first[i])) {
        used[j] = true;
        out.witness.push_back(ks[j]);
        found = true;
      }
    }
    if (!found) {
      out.witness.clear();
      return out;
    }
  }
  out.same = true;
  return out;
}

HomeomorphismCheck homeomorphism_consistency(int p, int q1, int q2) {
  const std::vector<int> ks = admissible_k(p);
  std::vector<double> first, second;
  for (int k : ks) {
    first.push_back(conjecture_value({p, q1, k}));
    second.push_back(conjecture_value({p, q2, k}));
  }
  HomeomorphismCheck out = compare_multisets(p, first, second, 1e-12);
  if (!out.same) return out;

  // Prefer the structural pairing over whatever order the value match produced.
  const int inv = inverse_mod(q1, p);
  std::vector<int> structural;
  if (q2 == q1 || q2 == p - q1) {
    structural = ks;
  } else if (q2 == inv || q2 == p - inv) {
    for (int k : ks) structural.push_back(fold_k(k * q1, p));
  }
  if (!structural.empty()) out.witness = structural;
  return out;
}

}  // namespace lensinv
