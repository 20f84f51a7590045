#include "cuntzwalk/walk_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace cuntz {

namespace {

template <typename Lookup>
Lookup build_lookup(const std::vector<std::string>& ids, const char* what) {
  Lookup lookup;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!lookup.emplace(ids[k], k).second) {
      throw InputError(std::string("duplicate ") + what + " id '" + ids[k] + "'");
    }
  }
  return lookup;
}

}  // namespace

LabeledWalk::LabeledWalk(std::vector<std::string> vertices, std::vector<std::string> labels,
                         std::span<const EdgeSpec> edges)
    : vertices_(std::move(vertices)), labels_(std::move(labels)) {
  if (vertices_.empty()) throw InputError("a walk needs at least one vertex");
  if (labels_.empty()) throw InputError("a walk needs at least one label");
  vertex_lookup_ = build_lookup<decltype(vertex_lookup_)>(vertices_, "vertex");
  label_lookup_ = build_lookup<decltype(label_lookup_)>(labels_, "label");

  alpha_.assign(vertices_.size() * labels_.size(), Complex{0.0, 0.0});
  target_.assign(alpha_.size(), npos);
  std::vector<bool> seen(alpha_.size(), false);

  for (const auto& e : edges) {
    const VertexIndex i = vertex_index(e.from);
    const LabelIndex l = label_index(e.label);
    const VertexIndex j = vertex_index(e.to);
    const std::size_t s = slot(i, l);
    if (seen[s]) {
      throw InputError("duplicate edge from '" + e.from + "' with label '" + e.label + "'");
    }
    seen[s] = true;
    if (!std::isfinite(e.alpha.real()) || !std::isfinite(e.alpha.imag())) {
      throw InputError("non-finite amplitude on edge from '" + e.from + "'");
    }
    if (std::abs(e.alpha) < kZeroThreshold) continue;
    alpha_[s] = e.alpha;
    target_[s] = j;
  }
}

void LabeledWalk::check_vertex(VertexIndex i) const {
  if (i >= vertices_.size()) throw InputError("vertex index " + std::to_string(i) + " out of range");
}

void LabeledWalk::check_label(LabelIndex l) const {
  if (l >= labels_.size()) throw InputError("label index " + std::to_string(l) + " out of range");
}

const std::string& LabeledWalk::vertex_id(VertexIndex i) const {
  check_vertex(i);
  return vertices_[i];
}

const std::string& LabeledWalk::label_id(LabelIndex l) const {
  check_label(l);
  return labels_[l];
}

VertexIndex LabeledWalk::vertex_index(std::string_view id) const {
  auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) throw InputError("unknown vertex '" + std::string(id) + "'");
  return it->second;
}

LabelIndex LabeledWalk::label_index(std::string_view id) const {
  auto it = label_lookup_.find(id);
  if (it == label_lookup_.end()) throw InputError("unknown label '" + std::string(id) + "'");
  return it->second;
}

Complex LabeledWalk::alpha(VertexIndex i, LabelIndex l) const {
  check_vertex(i);
  check_label(l);
  return alpha_[slot(i, l)];
}

std::optional<VertexIndex> LabeledWalk::target(VertexIndex i, LabelIndex l) const {
  check_vertex(i);
  check_label(l);
  const std::size_t t = target_[slot(i, l)];
  if (t == npos) return std::nullopt;
  return t;
}

std::vector<VertexIndex> LabeledWalk::sources(VertexIndex j, LabelIndex l) const {
  check_vertex(j);
  check_label(l);
  std::vector<VertexIndex> out;
  for (VertexIndex i = 0; i < vertices_.size(); ++i) {
    if (target_[slot(i, l)] == j) out.push_back(i);
  }
  return out;
}

std::vector<Edge> LabeledWalk::edges() const {
  std::vector<Edge> out;
  for (VertexIndex i = 0; i < vertices_.size(); ++i) {
    for (LabelIndex l = 0; l < labels_.size(); ++l) {
      const std::size_t s = slot(i, l);
      if (target_[s] != npos) out.push_back({i, l, target_[s], alpha_[s]});
    }
  }
  return out;
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_walk(const LabeledWalk& walk, double tol) {
  ValidationReport report;
  const std::size_t n = walk.num_vertices();
  const std::size_t labels = walk.num_labels();

  for (VertexIndex i = 0; i < n; ++i) {
    double mass = 0.0;
    for (LabelIndex l = 0; l < labels; ++l) mass += std::norm(walk.alpha(i, l));
    if (std::abs(mass - 1.0) > tol) {
      std::ostringstream os;
      os << "row of vertex '" << walk.vertex_id(i) << "' has total probability " << mass;
      report.violations.push_back({ViolationKind::RowNormalization, i, 0, os.str()});
    }

    std::map<VertexIndex, LabelIndex> reached;
    for (LabelIndex l = 0; l < labels; ++l) {
      auto j = walk.target(i, l);
      if (!j) continue;
      auto [it, fresh] = reached.emplace(*j, l);
      if (!fresh) {
        report.violations.push_back(
            {ViolationKind::OutInjectivity, i, l,
             "labels '" + walk.label_id(it->second) + "' and '" + walk.label_id(l) + "' from '" +
                 walk.vertex_id(i) + "' both reach '" + walk.vertex_id(*j) + "'"});
      }
    }
  }

  for (LabelIndex l = 0; l < labels; ++l) {
    std::vector<std::size_t> incoming(n, 0);
    for (VertexIndex i = 0; i < n; ++i) {
      if (auto j = walk.target(i, l)) ++incoming[*j];
    }
    for (VertexIndex j = 0; j < n; ++j) {
      if (incoming[j] > 1) {
        report.violations.push_back({ViolationKind::InInjectivity, j, l,
                                     std::to_string(incoming[j]) + " edges labeled '" +
                                         walk.label_id(l) + "' enter '" + walk.vertex_id(j) + "'"});
      }
    }
  }
  return report;
}

void require_coisometric(const LabeledWalk& walk, double tol) {
  const auto report = validate_walk(walk, tol);
  for (const auto& v : report.violations) {
    if (v.kind != ViolationKind::OutInjectivity) throw InvalidWalk(v.detail);
  }
}

std::optional<std::pair<VertexIndex, Complex>> walk_step(const LabeledWalk& walk, VertexIndex i,
                                                         std::span<const LabelIndex> word) {
  walk.vertex_id(i);
  Complex amplitude{1.0, 0.0};
  VertexIndex at = i;
  for (LabelIndex l : word) {
    auto next = walk.target(at, l);
    if (!next) {
      // Remaining letters must still be valid labels.
      for (LabelIndex rest : word) walk.label_id(rest);
      return std::nullopt;
    }
    amplitude *= walk.alpha(at, l);
    at = *next;
  }
  return std::make_pair(at, amplitude);
}

std::vector<LabelIndex> label_correspondence(const LabeledWalk& walk, const LabeledWalk& other) {
  if (walk.num_labels() != other.num_labels()) {
    throw AlphabetMismatch("label alphabets differ in size");
  }
  std::vector<LabelIndex> map(walk.num_labels());
  for (LabelIndex l = 0; l < walk.num_labels(); ++l) {
    try {
      map[l] = other.label_index(walk.label_id(l));
    } catch (const InputError&) {
      throw AlphabetMismatch("label '" + walk.label_id(l) + "' missing from the second walk");
    }
  }
  return map;
}

LabeledWalk cayley_walk(const std::vector<std::vector<std::size_t>>& table,
                        const std::vector<std::size_t>& generators,
                        const std::map<std::size_t, Complex>& phases,
                        std::vector<std::string> element_names) {
  const std::size_t n = table.size();
  if (n == 0) throw InputError("empty group table");
  for (const auto& row : table) {
    if (row.size() != n) throw InputError("group table is not square");
    for (auto v : row) {
      if (v >= n) throw InputError("group table entry out of range");
    }
  }

  // Each row and column of a group table is a permutation.
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      if (row_seen[table[a][b]] || col_seen[table[b][a]]) {
        throw InputError("group table is not a Latin square");
      }
      row_seen[table[a][b]] = col_seen[table[b][a]] = true;
    }
  }
  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (!identity) throw InputError("group table has no identity element");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw InputError("group table is not associative");
        }
      }
    }
  }

  if (generators.empty()) throw InputError("no generators given");
  std::set<std::size_t> distinct;
  for (auto g : generators) {
    if (g >= n) throw InputError("generator out of range");
    if (!distinct.insert(g).second) throw InputError("duplicate generator");
  }
  for (const auto& [g, phase] : phases) {
    if (!distinct.count(g)) {
      throw InputError("phase given for element " + std::to_string(g) +
                       ", which is not a generator (phases are per generator only)");
    }
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) throw InputError("phases must have unit modulus");
  }

  // Left multiplication from the identity must reach every element.
  std::vector<bool> reached(n, false);
  std::vector<std::size_t> frontier{*identity};
  reached[*identity] = true;
  while (!frontier.empty()) {
    const std::size_t g = frontier.back();
    frontier.pop_back();
    for (auto s : generators) {
      const std::size_t h = table[s][g];
      if (!reached[h]) {
        reached[h] = true;
        frontier.push_back(h);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
    throw InputError("generators do not generate the group");
  }

  if (element_names.empty()) {
    for (std::size_t g = 0; g < n; ++g) element_names.push_back(std::to_string(g));
  }
  if (element_names.size() != n) throw InputError("element name count does not match the table");

  std::vector<std::string> labels;
  for (auto s : generators) labels.push_back(element_names[s]);

  const double weight = 1.0 / std::sqrt(static_cast<double>(generators.size()));
  std::vector<EdgeSpec> edges;
  for (std::size_t g = 0; g < n; ++g) {
    for (auto s : generators) {
      auto it = phases.find(s);
      const Complex phase = it == phases.end() ? Complex{1.0, 0.0} : it->second;
      edges.push_back({element_names[g], element_names[s], element_names[table[s][g]], phase * weight});
    }
  }
  return LabeledWalk(element_names, labels, edges);
}

}  // namespace cuntz
