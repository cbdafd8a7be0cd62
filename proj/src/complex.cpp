#include "lensinv/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lensinv/errors.hpp"

namespace lensinv {

namespace {

// Face opposite local vertex m, as sorted local vertex triples.
std::array<int, 3> face_vertices(int m) {
  std::array<int, 3> f{};
  int n = 0;
  for (int v = 0; v < 4; ++v)
    if (v != m) f[n++] = v;
  return f;
}

std::array<int, 3> face_edge_classes(const Tetrahedron& t, int m) {
  const auto f = face_vertices(m);
  std::array<int, 3> e = {t.edge(EdgeSlot(f[0], f[1])), t.edge(EdgeSlot(f[0], f[2])),
                          t.edge(EdgeSlot(f[1], f[2]))};
  std::sort(e.begin(), e.end());
  return e;
}

std::array<int, 3> face_vertex_classes(const Tetrahedron& t, int m) {
  const auto f = face_vertices(m);
  std::array<int, 3> v = {t.vertices[f[0]], t.vertices[f[1]], t.vertices[f[2]]};
  std::sort(v.begin(), v.end());
  return v;
}

// Realizability check that separates impossible lengths from merely flat ones.
TetrahedronLengths checked_lengths(const PreComplex& c, const MetricData& m, int t) {
  TetrahedronLengths lengths = tetrahedron_lengths(c, m, t);
  const double cm = cayley_menger_determinant(lengths);
  const double floor = 1e-12 * std::pow(lengths.max_length(), 6);
  if (cm < -floor)
    throw InvalidMetric("tetrahedron " + std::to_string(t) + " has unrealizable edge lengths");
  if (cm <= floor)
    throw DegenerateTetrahedron("tetrahedron " + std::to_string(t) + " is degenerate");
  return lengths;
}

}  // namespace

PreComplex::PreComplex(int vertex_count, std::vector<std::string> edge_names, int face_count,
                       std::vector<Tetrahedron> tetrahedra)
    : vertex_count_(vertex_count),
      edge_names_(std::move(edge_names)),
      face_count_(face_count),
      tetrahedra_(std::move(tetrahedra)) {
  if (vertex_count_ < 1 || face_count_ < 0 || tetrahedra_.empty())
    throw InvalidComplex("complex needs at least one vertex class and one tetrahedron");

  std::vector<int> edge_uses(edge_names_.size(), 0);
  std::vector<std::vector<std::pair<int, int>>> face_uses(face_count_);
  for (int ti = 0; ti < tetrahedron_count(); ++ti) {
    const Tetrahedron& t = tetrahedra_[ti];
    for (int v : t.vertices)
      if (v < 0 || v >= vertex_count_) throw InvalidComplex("vertex class out of range");
    for (int e : t.edges) {
      if (e < 0 || e >= edge_count()) throw InvalidComplex("edge class out of range");
      ++edge_uses[e];
    }
    for (int m = 0; m < 4; ++m) {
      const int f = t.faces[m];
      if (f < 0 || f >= face_count_) throw InvalidComplex("face class out of range");
      face_uses[f].emplace_back(ti, m);
    }
  }
  for (int e = 0; e < edge_count(); ++e)
    if (edge_uses[e] == 0)
      throw InvalidComplex("edge class '" + edge_names_[e] + "' is not used by any tetrahedron");

  for (int f = 0; f < face_count_; ++f) {
    const auto& uses = face_uses[f];
    if (uses.empty() || uses.size() > 2)
      throw InvalidComplex("face class " + std::to_string(f) + " must be used once (boundary) or twice (glued)");
    if (uses.size() == 2) {
      const auto& [t0, m0] = uses[0];
      const auto& [t1, m1] = uses[1];
      if (face_edge_classes(tetrahedra_[t0], m0) != face_edge_classes(tetrahedra_[t1], m1) ||
          face_vertex_classes(tetrahedra_[t0], m0) != face_vertex_classes(tetrahedra_[t1], m1))
        throw InvalidComplex("glued faces of face class " + std::to_string(f) + " disagree on their boundary");
    }
  }
  std::vector<int> counts(face_count_);
  for (int f = 0; f < face_count_; ++f) counts[f] = static_cast<int>(face_uses[f].size());
  closed_ = std::all_of(counts.begin(), counts.end(), [](int n) { return n == 2; });
}

int PreComplex::euler_characteristic() const {
  return vertex_count_ - edge_count() + face_count_ - tetrahedron_count();
}

void validate_metric(const PreComplex& c, const MetricData& m) {
  if (m.lengths.size() != c.edge_count())
    throw InvalidMetric("metric has " + std::to_string(m.lengths.size()) + " lengths for " +
                        std::to_string(c.edge_count()) + " edge classes");
  if (static_cast<int>(m.signs.size()) != c.tetrahedron_count())
    throw InvalidMetric("metric needs one sign per tetrahedron");
  for (Eigen::Index i = 0; i < m.lengths.size(); ++i)
    if (!(m.lengths[i] > 0.0) || !std::isfinite(m.lengths[i]))
      throw InvalidMetric("edge lengths must be positive and finite");
  for (int s : m.signs)
    if (s != 1 && s != -1) throw InvalidMetric("tetrahedron signs must be +1 or -1");
}

TetrahedronLengths tetrahedron_lengths(const PreComplex& c, const MetricData& m, int t) {
  const Tetrahedron& tet = c.tetrahedra().at(t);
  std::array<double, 6> l{};
  for (int s = 0; s < 6; ++s) l[s] = m.lengths[tet.edges[s]];
  return TetrahedronLengths(l);
}

double reduce_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

Eigen::VectorXd defect_angles_unreduced(const PreComplex& c, const MetricData& m) {
  validate_metric(c, m);
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(c.edge_count());
  for (int t = 0; t < c.tetrahedron_count(); ++t) {
    const TetrahedronLengths lengths = checked_lengths(c, m, t);
    const Tetrahedron& tet = c.tetrahedra()[t];
    for (EdgeSlot s : kAllSlots) omega[tet.edge(s)] -= m.signs[t] * dihedral_angle(lengths, s);
  }
  return omega;
}

Eigen::VectorXd defect_angles(const PreComplex& c, const MetricData& m) {
  return defect_angles_unreduced(c, m).unaryExpr([](double w) { return reduce_angle(w); });
}

Eigen::MatrixXd defect_jacobian_analytic(const PreComplex& c, const MetricData& m) {
  validate_metric(c, m);
  const int n = c.edge_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < c.tetrahedron_count(); ++t) {
    const TetrahedronLengths lengths = checked_lengths(c, m, t);
    const Tetrahedron& tet = c.tetrahedra()[t];
    for (EdgeSlot at : kAllSlots) {
      const auto grad = dihedral_gradients(lengths, at);
      for (EdgeSlot wrt : kAllSlots)
        a(tet.edge(at), tet.edge(wrt)) -= m.signs[t] * grad[wrt.index()];
    }
  }
  return a;
}

Eigen::MatrixXd defect_jacobian_fd(const PreComplex& c, const MetricData& m, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  validate_metric(c, m);
  const int n = c.edge_count();
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j) {
    MetricData plus = m;
    MetricData minus = m;
    plus.lengths[j] += h;
    minus.lengths[j] -= h;
    a.col(j) = (defect_angles_unreduced(c, plus) - defect_angles_unreduced(c, minus)) / (2.0 * h);
  }
  return a;
}

bool is_permitted(const PreComplex& c, const MetricData& m, double tol) {
  return defect_angles(c, m).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace lensinv
