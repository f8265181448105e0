#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "netmaps/config.hpp"
#include "netmaps/errors.hpp"
#include "netmaps/job.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw netmaps::IoError("cannot read config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string describe(const netmaps::NodeStatus& s) {
  switch (s.state) {
    case netmaps::NodeState::Bounded: return "bounded";
    case netmaps::NodeState::Undecided: return "undecided";
    case netmaps::NodeState::Escaped: return "escaped " + std::to_string(s.iteration);
  }
  return "?";
}

// Classifies one point of the job's slice: the equi-parameter for equi-m
// jobs, the diagonal seed for uni-j jobs.
int classify(const netmaps::JobSpec& spec, const std::string& point_text) {
  using namespace netmaps;
  const auto point = parse_complex(point_text);
  if (!point) throw DomainError("malformed point '" + point_text + "'");
  const JobKind kind = spec.render_kind();
  const auto w = spec.model.build(spec.seed);
  const std::size_t n = w.size();
  EscapeRecord rec;
  if (kind == JobKind::EquiM) {
    rec = iterate_escape(w, ParameterVector::equi(Mode::Complex, *point, n), StateVector::equi(Mode::Complex, 0.0, n),
                         spec.budget, spec.radius);
  } else if (kind == JobKind::UniJ && !spec.parameters.empty()) {
    rec = iterate_escape(w, job_parameters(spec), StateVector::equi(Mode::Complex, *point, n), spec.budget,
                         spec.radius);
  } else {
    throw DomainError("classify needs an equi-m or uni-j job with fixed parameters");
  }
  for (std::size_t k = 0; k < n; ++k) std::printf("z%zu %s\n", k + 1, describe(rec.nodes[k]).c_str());
  std::printf("stop %d\n", rec.stop_iteration);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Render and analyse escape sets of coupled quadratic-map networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  unsigned threads = 0;
  std::string point;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Job config file")->required();
    sub->add_option("--set", overrides, "Override a config key: section.key=value")->allow_extra_args(false);
  };
  auto* run = app.add_subcommand("run", "Run a job and write its outputs");
  add_common(run);
  run->add_option("--threads", threads, "Worker threads (0 = hardware count)");
  auto* validate = app.add_subcommand("validate", "Check a config and print its canonical form");
  add_common(validate);
  auto* cls = app.add_subcommand("classify", "Print per-node escape status for one point");
  add_common(cls);
  cls->add_option("--point", point, "Equi-parameter (equi-m) or diagonal seed (uni-j)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto spec = netmaps::parse_config(read_text(config_path), overrides);
    if (*validate) {
      std::cout << netmaps::serialize_config(spec);
      return kExitOk;
    }
    if (*cls) return classify(spec, point);

    const auto outcome = netmaps::run_job(spec, threads);
    std::cout << outcome.summary;
    if (!outcome.summary.empty() && outcome.summary.back() != '\n') std::cout << "\n";
    for (const auto& e : outcome.manifest) std::cout << e.sha256 << "  " << (outcome.output_dir / e.file).string() << "\n";
    return outcome.verification_passed ? kExitOk : kExitVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
