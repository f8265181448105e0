#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netmaps/network.hpp"

namespace netmaps {

enum class JobKind { EquiM, UniJ, MultiMReal, MultiJReal, Sweep, Analyze, Verify };

enum class ModelType { SimpleDual, SelfDrive, Feedback, General, Bipartite, BipartiteRandom };

const char* job_kind_name(JobKind kind);
const char* model_type_name(ModelType type);

struct ModelDescriptor {
  ModelType type = ModelType::SimpleDual;
  double a = 0.0;
  double b = 0.0;
  double f = 0.0;
  // general
  std::size_t nodes = 0;
  std::vector<double> weights;
  // bipartite / bipartite-random
  std::size_t half = 0;
  std::vector<int> m_block, a1_block, a2_block;  // row-major half x half
  CouplingWeights g;
  std::size_t n_xy = 0;
  std::size_t n_yx = 0;

  std::size_t node_count() const;
  // Uses `seed` for bipartite-random.
  WeightMatrix build(std::uint64_t seed) const;

  friend bool operator==(const ModelDescriptor&, const ModelDescriptor&) = default;
};

struct SweepAxis {
  std::string name;  // a, b, f or c
  std::vector<Complex> values;

  friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

// Fully validated job with every default filled in.
struct JobSpec {
  JobKind kind = JobKind::EquiM;
  JobKind target = JobKind::EquiM;  // what sweep/analyze jobs render
  std::string id = "job";
  std::string check;  // verify jobs: prop1, prop2, prop3, nesting
  std::uint64_t seed = 0;

  ModelDescriptor model;
  std::vector<Complex> parameters;  // empty, one (equi-parameter) or one per node
  std::array<double, 4> window{};   // re_min, re_max, im_min, im_max
  std::array<double, 6> box{};      // x_min, x_max, y_min, y_max, z_min, z_max
  std::vector<int> resolution;      // 2 entries for slices, 3 for boxes
  int budget = 100;
  double radius = 10.0;
  int connectivity = 8;

  std::vector<SweepAxis> sweep;
  std::string output_dir = "out";

  // Kind that determines rendering defaults (target for sweep/analyze).
  JobKind render_kind() const;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

// `section.key=value` overrides applied on top of the file contents.
using Overrides = std::vector<std::string>;

JobSpec parse_config(const std::string& text, const Overrides& overrides = {});

// Canonical text form; parse_config(serialize_config(s)) == s.
std::string serialize_config(const JobSpec& spec);

// Sub-jobs of a sweep in row-major order of the axes (first axis slowest).
std::vector<JobSpec> expand_sweep(const JobSpec& spec);

// Number parsing shared with the CLI: decimals, p/q fractions and complex
// literals such as -0.117-0.76i.
std::optional<double> parse_real(const std::string& text);
std::optional<Complex> parse_complex(const std::string& text);
std::string format_real(double v);
std::string format_complex(Complex v);

}  // namespace netmaps
