#include "ccc/orbit_graph.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>

namespace ccc {

std::string ActionModel::describe(const Vec& v) const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
  os << ")";
  return os.str();
}

const GraphNode* AccessibilityGraph::find(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::vector<std::string> AccessibilityGraph::successors(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& e : edges)
    if (e.from == id) out.push_back(e.to);
  return out;
}

bool AccessibilityGraph::has_edge(const std::string& from, const std::string& to) const {
  return std::any_of(edges.begin(), edges.end(), [&](const GraphEdge& e) { return e.from == from && e.to == to; });
}

std::vector<OneStepLimit> one_step_limits(const Vec& v, const ActionModel& model) {
  if (v.size() != model.action().dimension())
    fail(ErrorKind::DimensionMismatch, "point has the wrong dimension for " + model.name());
  auto out = model.one_step_limits(v);
  std::sort(out.begin(), out.end(), [](const OneStepLimit& a, const OneStepLimit& b) { return a.target < b.target; });
  return out;
}

AccessibilityGraph accessibility_graph(const Vec& seed, const ActionModel& model, std::size_t budget,
                                       unsigned threads) {
  AccessibilityGraph g;
  g.model = model.name();
  std::set<std::string> seen;
  std::vector<Vec> frontier{seed};
  seen.insert(model.orbit_id(seed));
  g.nodes.push_back({model.orbit_id(seed), model.representative(seed), model.describe(model.representative(seed))});
  while (!frontier.empty()) {
    std::vector<std::vector<OneStepLimit>> results(frontier.size());
    if (threads > 1 && frontier.size() > 1) {
      std::vector<std::future<std::vector<OneStepLimit>>> jobs;
      for (const auto& v : frontier)
        jobs.push_back(std::async(std::launch::async, [&model, v] { return one_step_limits(v, model); }));
      for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
    } else {
      for (std::size_t i = 0; i < frontier.size(); ++i) results[i] = one_step_limits(frontier[i], model);
    }
    // Merge in frontier order so the graph is independent of scheduling.
    std::vector<Vec> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const std::string from = model.orbit_id(frontier[i]);
      for (const auto& l : results[i]) {
        if (l.target == from) continue;
        g.edges.push_back({from, l.target, l.witness});
        if (seen.insert(l.target).second) {
          if (seen.size() > budget) fail(ErrorKind::EnumerationBudgetExceeded, "accessibility graph exceeds the budget");
          Vec rep = model.representative(l.point);
          g.nodes.push_back({l.target, rep, model.describe(rep)});
          next.push_back(l.point);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const GraphEdge& a, const GraphEdge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  g.minimal = minimal_orbit(g);
  return g;
}

std::string minimal_orbit(const AccessibilityGraph& g) {
  std::vector<std::string> closed;
  for (const auto& n : g.nodes)
    if (g.successors(n.id).empty()) closed.push_back(n.id);
  if (closed.size() != 1)
    fail(ErrorKind::NonUniqueMinimal, "expected exactly one closed orbit, found " + std::to_string(closed.size()));
  return closed.front();
}

AntisymmetryReport check_antisymmetry(const ActionModel& model, std::size_t budget,
                                      std::optional<std::vector<Vec>> points) {
  if (!points) points = model.all_points();
  if (!points) fail(ErrorKind::EnumerationBudgetExceeded, "model " + model.name() + " is not enumerable");
  if (points->size() > budget) fail(ErrorKind::EnumerationBudgetExceeded, "too many points for the budget");
  AntisymmetryReport rep;
  rep.points = points->size();
  std::map<std::string, std::size_t> index;
  std::vector<Vec> reps;
  for (const auto& v : *points) {
    auto id = model.orbit_id(v);
    if (index.emplace(id, reps.size()).second) reps.push_back(v);
  }
  const std::size_t m = reps.size();
  rep.orbits = m;
  // reach[i][j]: orbit j accessible from orbit i.
  std::vector<std::vector<char>> reach(m, std::vector<char>(m, 0));
  for (const auto& [id, i] : index) {
    reach[i][i] = 1;
    for (const auto& l : model.one_step_limits(reps[i])) {
      auto it = index.find(l.target);
      if (it == index.end()) fail(ErrorKind::InternalError, "limit left the enumerated point set");
      if (it->second != i) {
        reach[i][it->second] = 1;
        ++rep.edges;
      }
    }
  }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < m; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  std::vector<std::string> ids(m);
  for (const auto& [id, i] : index) ids[i] = id;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (reach[i][j] && reach[j][i]) rep.violations.emplace_back(ids[i], ids[j]);
  std::sort(rep.violations.begin(), rep.violations.end());
  return rep;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const AccessibilityGraph& g) {
  std::vector<const GraphNode*> nodes;
  for (const auto& n : g.nodes) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(), [](const GraphNode* a, const GraphNode* b) { return a->id < b->id; });
  std::ostringstream os;
  os << "digraph accessibility {\n";
  for (const auto* n : nodes) {
    os << "  \"" << dot_escape(n->id) << "\" [label=\"" << dot_escape(n->label.empty() ? n->id : n->label) << "\"";
    if (g.minimal && *g.minimal == n->id) os << ", shape=box";
    os << "];\n";
  }
  for (const auto& e : g.edges)
    os << "  \"" << dot_escape(e.from) << "\" -> \"" << dot_escape(e.to) << "\" [label=\""
       << dot_escape(e.witness.str()) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace ccc
