#include "netmaps/checks.hpp"

#include <cstdio>

#include "netmaps/errors.hpp"
#include "netmaps/render.hpp"

namespace netmaps {

namespace {

std::string describe(const RelationReport& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu violating cells, fraction %.6f", r.violation_count, r.violation_fraction);
  return buf;
}

std::string status_text(const NodeStatus& s) {
  if (s.state == NodeState::Escaped) return "escaped at " + std::to_string(s.iteration);
  return s.state == NodeState::Bounded ? "bounded" : "undecided";
}

Field2D slice(const WeightMatrix& w, const CheckSettings& s) {
  return render_equi_m(w, Window2D::equi_m_default(s.resolution, s.resolution), s.budget, s.radius, s.threads);
}

// Witness orbits are pinned to the reference budget and radius.
EscapeRecord witness(const WeightMatrix& w, double c) {
  return iterate_escape(w, ParameterVector::equi(Mode::Real, c, 3), StateVector::equi(Mode::Real, 0.0, 3),
                        kDefaultSliceBudget, kDefaultRadius);
}

CheckResult prop1(const CheckSettings& s) {
  const auto w = build_model(SimpleDual{-2.0 / 3.0});
  const auto field = slice(w, s);
  const auto z1 = field.node_layer(0), z2 = field.node_layer(1), z3 = field.node_layer(2);
  CheckResult out{"prop1", true, {}};
  const auto eq = equality_relation(z2, z3, s.tolerance);
  out.lines.push_back({"z2 layer equals z3 layer", eq.holds, describe(eq)});
  const auto sub = subset_relation(z2, z1, s.tolerance);
  out.lines.push_back({"z2 layer inside z1 layer", sub.holds, describe(sub)});
  const auto rec = witness(w, -2.0);
  // z2 overflows long before the budget, so z1 may come back Undecided.
  const bool ok = rec.nodes[0].counts_as_bounded() && rec.nodes[1] == NodeStatus::escaped(4) &&
                  rec.nodes[2] == NodeStatus::escaped(2);
  out.lines.push_back({"witness c=-2", ok,
                       "z1 " + status_text(rec.nodes[0]) + ", z2 " + status_text(rec.nodes[1]) + ", z3 " +
                           status_text(rec.nodes[2])});
  return out;
}

CheckResult prop2(const CheckSettings& s) {
  const auto w = build_model(SelfDrive{-2.0 / 3.0, 1.0 / 3.0});
  const auto field = slice(w, s);
  const auto z2 = field.node_layer(1), z3 = field.node_layer(2);
  CheckResult out{"prop2", true, {}};
  const auto sub = subset_relation(z3, z2, s.tolerance);
  out.lines.push_back({"z3 layer inside z2 layer", sub.holds, describe(sub)});
  constexpr double kMinDifference = 0.005;
  const auto back = subset_relation(z2, z3, s.tolerance);
  out.lines.push_back({"z2 layer differs from z3 layer by at least 0.5%", back.violation_fraction >= kMinDifference,
                       describe(back)});
  const auto rec = witness(w, -0.75);
  out.lines.push_back({"witness c=-3/4 keeps z2 bounded", rec.nodes[1].counts_as_bounded(),
                       "z2 " + status_text(rec.nodes[1])});
  return out;
}

CheckResult prop3(const CheckSettings& s) {
  const auto field = slice(build_model(Feedback{-2.0 / 3.0, 1.0 / 3.0, -1.0}), s);
  CheckResult out{"prop3", true, {}};
  const auto eq = equality_relation(field.node_layer(1), field.node_layer(2), s.tolerance);
  out.lines.push_back({"z2 layer equals z3 layer", eq.holds, describe(eq)});
  return out;
}

CheckResult nesting(const CheckSettings& s) {
  const double as[] = {0.0, 1.0 / 3.0, 2.0 / 3.0};
  const char* labels[] = {"0", "1/3", "2/3"};
  std::vector<BinaryGrid> fields;
  for (double a : as) fields.push_back(slice(build_model(SimpleDual{a}), s).intersection());
  CheckResult out{"nesting", true, {}};
  const auto reports = nesting_check(fields, s.tolerance);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out.lines.push_back({std::string("a=") + labels[i + 1] + " set inside a=" + labels[i] + " set", reports[i].holds,
                         describe(reports[i])});
  }
  return out;
}

}  // namespace

std::string CheckResult::report() const {
  std::string out;
  for (const auto& l : lines) out += std::string(l.passed ? "PASS " : "FAIL ") + l.label + ": " + l.detail + "\n";
  out += std::string(passed ? "PASS " : "FAIL ") + name + "\n";
  return out;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"prop1", "prop2", "prop3", "nesting"};
  return names;
}

CheckResult run_check(const std::string& name, const CheckSettings& settings) {
  CheckResult result;
  if (name == "prop1") result = prop1(settings);
  else if (name == "prop2") result = prop2(settings);
  else if (name == "prop3") result = prop3(settings);
  else if (name == "nesting") result = nesting(settings);
  else throw DomainError("unknown check '" + name + "'");
  for (const auto& l : result.lines) result.passed = result.passed && l.passed;
  return result;
}

}  // namespace netmaps
