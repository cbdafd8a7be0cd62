#include "lensinv/lens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "lensinv/errors.hpp"

namespace lensinv {

namespace {

constexpr double kPi = std::numbers::pi;

int mod(int a, int p) { return ((a % p) + p) % p; }

void validate_pq(int p, int q) {
  if (p < 3) throw InvalidLensParams("lens space needs p >= 3, got p = " + std::to_string(p));
  if (q <= 0 || q >= p)
    throw InvalidLensParams("lens space needs 0 < q < p, got q = " + std::to_string(q));
  if (std::gcd(p, q) != 1)
    throw InvalidLensParams("lens space needs gcd(p, q) = 1, got (" + std::to_string(p) + ", " +
                            std::to_string(q) + ")");
}

Point3 cylindrical(double radius, double angle, double z) {
  return {radius * std::cos(angle), radius * std::sin(angle), z};
}

}  // namespace

void validate(const LensParams& lp) {
  validate_pq(lp.p, lp.q);
  if (lp.k < 1 || lp.k > lp.p / 2)
    throw InvalidLensParams("k must lie in 1.." + std::to_string(lp.p / 2) + ", got " + std::to_string(lp.k));
  if (std::gcd(lp.p, lp.k) != 1)
    throw InvalidLensParams("k must be coprime to p, got gcd(" + std::to_string(lp.p) + ", " +
                            std::to_string(lp.k) + ") = " + std::to_string(std::gcd(lp.p, lp.k)));
}

PreComplex build_lens_complex(int p, int q) {
  validate_pq(p, q);
  std::vector<std::string> names;
  names.emplace_back("a");
  for (int j = 0; j < p; ++j) names.push_back("b" + std::to_string(j));
  names.emplace_back("c");

  // Vertex classes: 0 = B, 1 = C. Face classes: j < p is the inner triangle
  // C_0 C_1 B_j; p + j pairs the cone face B_j C_0 B_{j+1} with B_{j+q} C_1 B_{j+q+1}.
  constexpr int kB = 0, kC = 1;
  std::vector<Tetrahedron> tets;
  tets.reserve(p);
  for (int i = 0; i < p; ++i) {
    Tetrahedron t{};
    t.vertices = {kC, kC, kB, kB};
    t.edges[EdgeSlot(0, 1).index()] = edge_c(p);
    t.edges[EdgeSlot(0, 2).index()] = edge_b(p, i + 1);
    t.edges[EdgeSlot(0, 3).index()] = edge_b(p, i);
    t.edges[EdgeSlot(1, 2).index()] = edge_b(p, i + 1 - q);
    t.edges[EdgeSlot(1, 3).index()] = edge_b(p, i - q);
    t.edges[EdgeSlot(2, 3).index()] = edge_a();
    t.faces = {p + mod(i - q, p), p + i, i, mod(i + 1, p)};
    tets.push_back(t);
  }
  PreComplex complex(2, std::move(names), 2 * p, std::move(tets));
  if (!complex.is_closed()) throw InvalidComplex("lens bipyramid did not close up");
  return complex;
}

const Point3& LensRealization::b(int j) const { return b_points[mod(j, params.p)]; }
const Point3& LensRealization::c(int j) const { return c_points[mod(j, params.p)]; }

double lens_r(const LensParams& lp, const RealizationParams& rp) {
  return 4.0 * rp.rho * rp.sigma * rp.s * std::sin(kPi * lp.k / lp.p) * std::sin(kPi * lp.q * lp.k / lp.p);
}

LensRealization realize(const LensParams& lp, const RealizationParams& rp) {
  validate(lp);
  if (!(rp.rho > 0.0) || !(rp.sigma > 0.0) || !std::isfinite(rp.s) || !std::isfinite(rp.alpha))
    throw InvalidLensParams("realization needs rho > 0, sigma > 0 and finite s, alpha");

  const int p = lp.p;
  LensRealization out{lp, rp, build_lens_complex(p, lp.q), {}, {}, {}, {}, {}, lens_r(lp, rp)};
  for (int j = 0; j < p; ++j) {
    out.b_points.push_back(cylindrical(rp.rho, 2.0 * kPi * j * lp.k / p, 0.0));
    out.c_points.push_back(cylindrical(rp.sigma, rp.alpha + 2.0 * kPi * lp.q * j * lp.k / p, rp.s));
  }

  out.lengths.resize(p + 2);
  out.lengths[edge_a()] = 2.0 * rp.rho * std::sin(kPi * lp.k / p);
  out.lengths[edge_c(p)] = 2.0 * rp.sigma * std::abs(std::sin(kPi * lp.q * lp.k / p));
  for (int j = 0; j < p; ++j) {
    const double sq = rp.rho * rp.rho + rp.sigma * rp.sigma + rp.s * rp.s -
                      2.0 * rp.rho * rp.sigma * std::cos(rp.alpha - 2.0 * kPi * j * lp.k / p);
    out.lengths[edge_b(p, j)] = std::sqrt(sq);
  }

  const double floor = 1e-12 * std::pow(out.lengths.maxCoeff(), 3);
  for (int i = 0; i < p; ++i) {
    const double v = oriented_volume(out.c(0), out.c(1), out.b(i + 1), out.b(i));
    if (std::abs(v) <= floor)
      throw DegenerateRealization("tetrahedron C0 C1 B" + std::to_string(mod(i + 1, p)) + " B" +
                                  std::to_string(i) + " is flat at these parameters");
    out.volumes.push_back(v);
    out.signs.push_back(v > 0.0 ? 1 : -1);
  }
  return out;
}

std::vector<double> signed_volumes_closed_form(const LensParams& lp, const RealizationParams& rp) {
  const double r = lens_r(lp, rp);
  std::vector<double> v(lp.p);
  for (int i = 0; i < lp.p; ++i)
    v[i] = r / 6.0 * std::sin(rp.alpha + kPi * lp.k * (lp.q - 1 - 2 * i) / lp.p);
  return v;
}

EdgePartition edge_partition(int p) {
  if (p < 3) throw InvalidLensParams("edge partition needs p >= 3");
  EdgePartition part;
  part.free_edges = {edge_a(), edge_b(p, 0), edge_b(p, p - 1), edge_c(p)};
  for (int j = 1; j <= p - 2; ++j) part.determinant_edges.push_back(edge_b(p, j));
  return part;
}

bool is_generic(const LensParams& lp, const RealizationParams& rp) {
  const auto v = signed_volumes_closed_form(lp, rp);
  const double scale = std::abs(lens_r(lp, rp) / 6.0);
  const double min_v = std::abs(*std::min_element(v.begin(), v.end(), [](double x, double y) {
    return std::abs(x) < std::abs(y);
  }));
  return min_v >= 1e-6 * scale && std::abs(std::cos(rp.alpha + kPi * lp.k / lp.p)) >= 0.05;
}

RealizationParams well_conditioned_params(const LensParams& lp) {
  validate(lp);
  RealizationParams best{2.0, 2.0, 2.0, 0.5 * kPi / lp.p};
  double best_norm = std::numeric_limits<double>::infinity();
  for (int m = 0; m < 2 * lp.p; ++m) {
    for (int u = 1; u < 10; ++u) {
      const RealizationParams rp{2.0, 2.0, 2.0, (m + u / 10.0) * kPi / lp.p};
      if (!is_generic(lp, rp)) continue;
      const LensRealization r = realize(lp, rp);
      const double norm = defect_jacobian_analytic(r.complex, r.metric()).cwiseAbs().maxCoeff();
      if (norm < best_norm) {
        best_norm = norm;
        best = rp;
      }
    }
  }
  return best;
}

RealizationParams sample_generic_params(const LensParams& lp, std::mt19937_64& rng, int max_attempts) {
  validate(lp);
  std::uniform_real_distribution<double> size(0.5, 2.0);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  std::uniform_int_distribution<int> sector(0, 2 * lp.p - 1);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    RealizationParams rp;
    rp.rho = size(rng);
    rp.sigma = size(rng);
    rp.s = size(rng);
    rp.alpha = (sector(rng) + frac(rng)) * kPi / lp.p;
    if (is_generic(lp, rp)) return rp;
  }
  throw DegenerateRealization("no generic realization found after " + std::to_string(max_attempts) + " draws");
}

}  // namespace lensinv
