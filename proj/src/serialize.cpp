#include "lensinv/serialize.hpp"

#include "lensinv/errors.hpp"

namespace lensinv {

using nlohmann::json;

json to_json(const PreComplex& c) {
  json tets = json::array();
  for (const Tetrahedron& t : c.tetrahedra())
    tets.push_back({{"vertices", t.vertices}, {"edges", t.edges}, {"faces", t.faces}});
  return {{"vertex_count", c.vertex_count()},
          {"face_count", c.face_count()},
          {"edges", c.edge_names()},
          {"tetrahedra", tets}};
}

json to_json(const MetricData& m) {
  return {{"lengths", std::vector<double>(m.lengths.begin(), m.lengths.end())}, {"signs", m.signs}};
}

json to_json(const LensRealization& r) {
  auto points = [](const std::vector<Point3>& pts) {
    json out = json::array();
    for (const Point3& x : pts) out.push_back({x.x(), x.y(), x.z()});
    return out;
  };
  return {{"p", r.params.p},
          {"q", r.params.q},
          {"k", r.params.k},
          {"rho", r.coords.rho},
          {"sigma", r.coords.sigma},
          {"s", r.coords.s},
          {"alpha", r.coords.alpha},
          {"complex", to_json(r.complex)},
          {"metric", to_json(r.metric())},
          {"B", points(r.b_points)},
          {"C", points(r.c_points)},
          {"volumes", r.volumes},
          {"R", r.r}};
}

json to_json(const InvariantReport& r) {
  json j = {{"p", r.params.p},
            {"q", r.params.q},
            {"k", r.params.k},
            {"samples", r.samples},
            {"mean", r.mean},
            {"max_dev", r.max_dev},
            {"conjecture", r.conjecture},
            {"rel_err", r.rel_err},
            {"max_defect", r.max_defect},
            {"flagged", r.flagged}};
  if (r.paper_ref_value) j["paper_ref_value"] = *r.paper_ref_value;
  return j;
}

PreComplex complex_from_json(const json& j) {
  try {
    std::vector<Tetrahedron> tets;
    for (const json& t : j.at("tetrahedra")) {
      Tetrahedron tet{};
      tet.vertices = t.at("vertices").get<std::array<int, 4>>();
      tet.edges = t.at("edges").get<std::array<int, 6>>();
      tet.faces = t.at("faces").get<std::array<int, 4>>();
      tets.push_back(tet);
    }
    return PreComplex(j.at("vertex_count").get<int>(), j.at("edges").get<std::vector<std::string>>(),
                      j.at("face_count").get<int>(), std::move(tets));
  } catch (const json::exception& e) {
    throw InvalidComplex(std::string("malformed complex JSON: ") + e.what());
  }
}

MetricData metric_from_json(const json& j) {
  try {
    const auto lengths = j.at("lengths").get<std::vector<double>>();
    MetricData m;
    m.lengths = Eigen::Map<const Eigen::VectorXd>(lengths.data(), static_cast<Eigen::Index>(lengths.size()));
    m.signs = j.at("signs").get<std::vector<int>>();
    return m;
  } catch (const json::exception& e) {
    throw InvalidMetric(std::string("malformed metric JSON: ") + e.what());
  }
}

}  // namespace lensinv
