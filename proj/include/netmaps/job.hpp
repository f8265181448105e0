#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "netmaps/config.hpp"
#include "netmaps/field.hpp"
#include "netmaps/io.hpp"

namespace netmaps {

struct ManifestEntry {
  std::string file;  // relative to the output directory
  std::string sha256;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct JobOutcome {
  std::filesystem::path output_dir;
  std::vector<ManifestEntry> manifest;  // every file written except the manifest itself
  bool verification_passed = true;      // false only for failing verify jobs
  std::string summary;                  // human-readable, printed by the CLI
};

// Renders, analyses or verifies per spec.kind and writes everything under
// spec.output_dir with names prefixed by spec.id. Outputs are deterministic.
JobOutcome run_job(const JobSpec& spec, unsigned threads = 0);

// Building blocks shared with the CLI and tests.
ParameterVector job_parameters(const JobSpec& spec);
Window2D job_window(const JobSpec& spec);
Box3D job_box(const JobSpec& spec);
MetricsRow slice_metrics(const JobSpec& spec, const Field2D& field);
MetricsRow volume_metrics(const JobSpec& spec, const Field3D& field);

}  // namespace netmaps
