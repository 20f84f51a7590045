#include "cuntzwalk/report_json.hpp"

#include "cuntzwalk/walk_io.hpp"

namespace cuntz {

using nlohmann::json;

namespace {

const char* kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::RowNormalization:
      return "row_normalization";
    case ViolationKind::OutInjectivity:
      return "out_injectivity";
    case ViolationKind::InInjectivity:
      return "in_injectivity";
  }
  return "unknown";
}

json pair_json(const ProductGraph& pg, NodePair p) {
  return json::array({pg.first().vertex_id(p.first), pg.second().vertex_id(p.second)});
}

}  // namespace

json matrix_to_json(const DenseMatrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    data.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json to_json(const ValidationReport& report, const LabeledWalk& walk) {
  json list = json::array();
  for (const auto& v : report.violations) {
    list.push_back({{"kind", kind_name(v.kind)},
                    {"vertex", walk.vertex_id(v.vertex)},
                    {"label", walk.label_id(v.label)},
                    {"detail", v.detail}});
  }
  return json{{"valid", report.valid()}, {"violations", std::move(list)}};
}

json to_json(const MinimalSetReport& report, const ProductGraph& pg) {
  json sets = json::array();
  for (const auto& m : report.sets) {
    json nodes = json::array();
    for (const auto& p : m.nodes) nodes.push_back(pair_json(pg, p));
    json entry{{"nodes", std::move(nodes)},
               {"representative", pair_json(pg, m.representative)},
               {"balanced", m.balanced}};
    if (m.witness) {
      const auto& w = *m.witness;
      if (w.kind == BalanceWitness::Kind::ModulusMismatch) {
        entry["witness"] = {{"kind", "modulus_mismatch"},
                            {"node", pair_json(pg, w.node)},
                            {"label", pg.first().label_id(w.label)},
                            {"alpha", complex_to_json(pg.alpha_first(w.node, w.label))},
                            {"alpha_prime", complex_to_json(pg.alpha_second(w.node, w.label))}};
      } else {
        json loop = json::array();
        for (const auto& s : w.loop) {
          loop.push_back({{"node", pair_json(pg, s.node)}, {"label", pg.first().label_id(s.label)}});
        }
        entry["witness"] = {{"kind", "holonomy"},
                            {"loop", std::move(loop)},
                            {"holonomy", complex_to_json(w.holonomy)}};
      }
    }
    sets.push_back(std::move(entry));
  }
  return json{{"count", report.sets.size()},
              {"balanced_count", report.balanced_count()},
              {"sets", std::move(sets)}};
}

json to_json(const CuntzReport& report) {
  return json{{"isometry_residual", report.isometry_residual},
              {"range_residual", report.range_residual},
              {"compression_residual", report.compression_residual},
              {"adjoint_residual", report.adjoint_residual},
              {"tolerance", report.tolerance},
              {"passed", report.passed()}};
}

json to_json(const OracleComparison& cmp) {
  return json{{"structured_dimension", cmp.structured_dimension},
              {"oracle_dimension", cmp.oracle_dimension},
              {"balanced_count", cmp.balanced_count},
              {"span_residual", cmp.span_residual},
              {"fixed_point_residual", cmp.fixed_point_residual},
              {"agree", cmp.agree()}};
}

json to_json(const AssumptionReport& report) {
  return json{{"passed", report.passed()},
              {"alpha_zero_is_one", report.alpha_zero_is_one},
              {"isometry_residual", report.isometry_residual},
              {"isometry_ok", report.isometry_ok},
              {"no_overlap", report.no_overlap},
              {"no_overlap_basis", report.no_overlap_basis},
              {"problems", report.problems}};
}

json to_json(const MinSet& m, const SpectralSystem& sys) {
  json points = json::array();
  for (const auto& p : m.points) points.push_back(to_string(p));
  json transitions = json::array();
  for (std::size_t k = 0; k < m.points.size(); ++k) {
    for (const auto& t : m.transitions[k]) {
      transitions.push_back({{"from", to_string(m.points[k])},
                             {"frequency", sys.frequencies[t.frequency]},
                             {"to", to_string(m.points[t.to])}});
    }
  }
  return json{{"representative", to_string(m.representative())},
              {"points", std::move(points)},
              {"transitions", std::move(transitions)}};
}

}  // namespace cuntz
