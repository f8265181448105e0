#include "netmaps/job.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "netmaps/checks.hpp"
#include "netmaps/errors.hpp"
#include "netmaps/render.hpp"
#include "netmaps/topology.hpp"

namespace netmaps {

namespace {

using Output = std::pair<std::string, Bytes>;

bool is_volume(JobKind k) { return k == JobKind::MultiMReal || k == JobKind::MultiJReal; }

std::string resolution_text(const JobSpec& spec) {
  std::string s;
  for (std::size_t i = 0; i < spec.resolution.size(); ++i) s += (i ? "x" : "") + std::to_string(spec.resolution[i]);
  return s;
}

MetricsRow base_row(const JobSpec& spec) {
  MetricsRow row;
  row.job_id = spec.id;
  row.model = model_type_name(spec.model.type);
  row.a = spec.model.a;
  row.b = spec.model.b;
  row.f = spec.model.f;
  for (std::size_t i = 0; i < spec.parameters.size(); ++i) {
    row.c += (i ? ";" : "") + format_complex(spec.parameters[i]);
  }
  row.budget = spec.budget;
  row.radius = spec.radius;
  row.resolution = resolution_text(spec);
  return row;
}

void fill_topology(MetricsRow& row, const BinaryGrid& set, int connectivity) {
  row.component_count = label_components(set, connectivity).component_count;
  row.occupied_cells = set.occupied();
  const auto boundary = extract_boundary(set);
  const auto scales = default_box_scales(boundary);
  row.boxdim_slope = row.boxdim_r2 = std::numeric_limits<double>::quiet_NaN();
  if (scales.size() >= 3 && boundary.occupied() > 0) {
    const auto est = box_counting_dim(boundary, scales);
    row.boxdim_slope = est.slope;
    row.boxdim_r2 = est.r_squared;
  }
}

std::string relations_csv(const Field2D& field) {
  std::string out = "lhs,rhs,relation,violation_count,violation_fraction,holds\n";
  std::vector<BinaryGrid> layers;
  for (std::size_t k = 0; k < field.nodes(); ++k) layers.push_back(field.node_layer(k));
  auto line = [&](std::size_t i, std::size_t j, const char* rel, const RelationReport& r) {
    out += "z" + std::to_string(i + 1) + ",z" + std::to_string(j + 1) + "," + rel + "," +
           std::to_string(r.violation_count) + "," + format_real(r.violation_fraction) + "," +
           (r.holds ? "true" : "false") + "\n";
  };
  for (std::size_t i = 0; i < layers.size(); ++i) {
    for (std::size_t j = 0; j < layers.size(); ++j) {
      if (i != j) line(i, j, "subset", subset_relation(layers[i], layers[j]));
    }
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    for (std::size_t j = i + 1; j < layers.size(); ++j) line(i, j, "equal", equality_relation(layers[i], layers[j]));
  }
  return out;
}

Field2D render_slice_job(const JobSpec& spec, unsigned threads) {
  const auto w = spec.model.build(spec.seed);
  if (spec.render_kind() == JobKind::EquiM) {
    return render_equi_m(w, job_window(spec), spec.budget, spec.radius, threads);
  }
  return render_uni_j(w, job_parameters(spec), job_window(spec), spec.budget, spec.radius, threads);
}

Field3D render_volume_job(const JobSpec& spec, unsigned threads) {
  const auto w = spec.model.build(spec.seed);
  if (spec.render_kind() == JobKind::MultiMReal) {
    return render_multi_m_real(w, job_box(spec), spec.budget, spec.radius, threads);
  }
  return render_multi_j_real(w, job_parameters(spec), job_box(spec), spec.budget, spec.radius, threads);
}

// Images for one render job plus its metrics row.
MetricsRow render_outputs(const JobSpec& spec, unsigned threads, std::vector<Output>& outputs) {
  if (is_volume(spec.kind)) {
    const auto field = render_volume_job(spec, threads);
    outputs.emplace_back(spec.id + ".vox", encode_voxels(field.occupancy()));
    return volume_metrics(spec, field);
  }
  const auto field = render_slice_job(spec, threads);
  for (std::size_t k = 0; k < field.nodes(); ++k) {
    outputs.emplace_back(spec.id + "_z" + std::to_string(k + 1) + ".pgm", encode_image(field, k));
  }
  outputs.emplace_back(spec.id + "_all.pgm", encode_image(field, kIntersectionLayer));
  if (spec.kind == JobKind::UniJ) {
    outputs.emplace_back(spec.id + "_boundary.pgm", encode_mask(extract_boundary(field.intersection())));
  }
  return slice_metrics(spec, field);
}

Bytes text_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

}  // namespace

ParameterVector job_parameters(const JobSpec& spec) {
  const std::size_t n = spec.model.node_count();
  const Mode mode = is_volume(spec.render_kind()) ? Mode::Real : Mode::Complex;
  if (spec.parameters.size() == 1) return ParameterVector::equi(mode, spec.parameters[0], n);
  if (spec.parameters.size() != n) {
    throw DimensionError("job needs 1 or " + std::to_string(n) + " parameter values");
  }
  if (mode == Mode::Complex) return ParameterVector::complex(spec.parameters);
  std::vector<double> re;
  for (const auto& c : spec.parameters) re.push_back(c.real());
  return ParameterVector::real(re);
}

Window2D job_window(const JobSpec& spec) {
  return {spec.window[0], spec.window[1], spec.window[2], spec.window[3], spec.resolution.at(0),
          spec.resolution.at(1)};
}

Box3D job_box(const JobSpec& spec) {
  return {{spec.box[0], spec.box[2], spec.box[4]},
          {spec.box[1], spec.box[3], spec.box[5]},
          {spec.resolution.at(0), spec.resolution.at(1), spec.resolution.at(2)}};
}

MetricsRow slice_metrics(const JobSpec& spec, const Field2D& field) {
  auto row = base_row(spec);
  fill_topology(row, field.intersection(), spec.connectivity);
  return row;
}

MetricsRow volume_metrics(const JobSpec& spec, const Field3D& field) {
  auto row = base_row(spec);
  fill_topology(row, field.occupancy(), spec.connectivity);
  return row;
}

JobOutcome run_job(const JobSpec& spec, unsigned threads) {
  JobOutcome outcome;
  outcome.output_dir = spec.output_dir;
  std::vector<Output> outputs;
  outputs.emplace_back(spec.id + ".cfg", text_bytes(serialize_config(spec)));

  switch (spec.kind) {
    case JobKind::EquiM:
    case JobKind::UniJ:
    case JobKind::MultiMReal:
    case JobKind::MultiJReal: {
      const auto row = render_outputs(spec, threads, outputs);
      outputs.emplace_back(spec.id + "_metrics.csv", text_bytes(encode_metrics({row})));
      outcome.summary = spec.id + ": " + std::to_string(row.component_count) + " components, " +
                        std::to_string(row.occupied_cells) + " occupied cells";
      break;
    }
    case JobKind::Sweep: {
      std::vector<MetricsRow> rows;
      for (const auto& sub : expand_sweep(spec)) rows.push_back(render_outputs(sub, threads, outputs));
      outputs.emplace_back(spec.id + "_metrics.csv", text_bytes(encode_metrics(rows)));
      outcome.summary = spec.id + ": " + std::to_string(rows.size()) + " sweep jobs";
      break;
    }
    case JobKind::Analyze: {
      JobSpec target = spec;
      target.kind = spec.target;
      MetricsRow row;
      if (is_volume(spec.target)) {
        row = volume_metrics(spec, render_volume_job(target, threads));
      } else {
        const auto field = render_slice_job(target, threads);
        row = slice_metrics(spec, field);
        outputs.emplace_back(spec.id + "_relations.csv", text_bytes(relations_csv(field)));
      }
      outputs.emplace_back(spec.id + "_metrics.csv", text_bytes(encode_metrics({row})));
      outcome.summary = spec.id + ": " + std::to_string(row.component_count) + " components, " +
                        std::to_string(row.occupied_cells) + " occupied cells";
      break;
    }
    case JobKind::Verify: {
      if (spec.resolution.at(0) != spec.resolution.at(1)) throw DomainError("verify jobs need a square resolution");
      CheckSettings settings;
      settings.resolution = spec.resolution[0];
      settings.budget = spec.budget;
      settings.radius = spec.radius;
      settings.threads = threads;
      const auto result = run_check(spec.check, settings);
      outcome.verification_passed = result.passed;
      outcome.summary = result.report();
      outputs.emplace_back(spec.id + "_verify.txt", text_bytes(outcome.summary));
      break;
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(outcome.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + outcome.output_dir.string() + ": " + ec.message());
  std::string manifest;
  for (const auto& [name, bytes] : outputs) {
    write_file(outcome.output_dir / name, bytes);
    outcome.manifest.push_back({name, sha256_hex(bytes)});
    manifest += outcome.manifest.back().sha256 + "  " + name + "\n";
  }
  write_file(outcome.output_dir / (spec.id + "_manifest.txt"), manifest);
  return outcome;
}

}  // namespace netmaps
