#pragma once

// Accessibility graphs of rational orbits: one-step limits, BFS closure,
// the minimal orbit and antisymmetry of the accessibility preorder.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccc/limit.hpp"

namespace ccc {

constexpr std::size_t kDefaultBudget = 200000;

struct OneStepLimit {
  std::string target;  // orbit id of the limit
  Vec point;           // the limit itself
  Cocharacter witness;
};

// A group acting linearly on a space, with canonical orbit identifiers and
// an enumeration of the limits along k-defined cocharacters.
class ActionModel {
 public:
  virtual ~ActionModel() = default;
  virtual std::string name() const = 0;
  virtual const LinearAction& action() const = 0;
  virtual std::string orbit_id(const Vec& v) const = 0;
  // Canonical representative of the orbit of v, used for node labels.
  virtual Vec representative(const Vec& v) const { return v; }
  virtual std::string describe(const Vec& v) const;
  // One witness per distinct target orbit, the orbit of v included.
  virtual std::vector<OneStepLimit> one_step_limits(const Vec& v) const = 0;
  // Every point of the space, for exhaustive checks; nullopt if infinite.
  virtual std::optional<std::vector<Vec>> all_points() const { return std::nullopt; }
  const Field& field() const { return action().field(); }
};

struct GraphNode {
  std::string id;
  Vec representative;
  std::string label;
};

struct GraphEdge {
  std::string from, to;
  Cocharacter witness;
};

struct AccessibilityGraph {
  std::string model;
  std::vector<GraphNode> nodes;  // BFS order from the seed
  std::vector<GraphEdge> edges;  // proper one-step edges, sorted
  std::optional<std::string> minimal;

  const GraphNode* find(const std::string& id) const;
  std::vector<std::string> successors(const std::string& id) const;
  bool has_edge(const std::string& from, const std::string& to) const;
};

std::vector<OneStepLimit> one_step_limits(const Vec& v, const ActionModel& model);
// threads > 1 expands each BFS layer in parallel; the result does not depend on it.
AccessibilityGraph accessibility_graph(const Vec& seed, const ActionModel& model, std::size_t budget = kDefaultBudget,
                                       unsigned threads = 1);
std::string minimal_orbit(const AccessibilityGraph& g);

struct AntisymmetryReport {
  std::size_t points = 0;
  std::size_t orbits = 0;
  std::size_t edges = 0;
  std::vector<std::pair<std::string, std::string>> violations;
  bool antisymmetric() const { return violations.empty(); }
};

// Exhaustive over the given points (all of the space when omitted).
AntisymmetryReport check_antisymmetry(const ActionModel& model, std::size_t budget = kDefaultBudget,
                                      std::optional<std::vector<Vec>> points = std::nullopt);

std::string export_dot(const AccessibilityGraph& g);

}  // namespace ccc
