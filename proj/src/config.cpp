#include "netmaps/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "netmaps/errors.hpp"
#include "netmaps/field.hpp"
#include "netmaps/render.hpp"

namespace netmaps {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  if (!value.empty() && value.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> parse_decimal(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  std::size_t line = 0;  // 0 for command-line overrides
};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"job", {"kind", "id", "target", "check", "seed"}},
      {"model", {"type", "a", "b", "f", "nodes", "weights", "half", "m", "a1", "a2", "gxx", "gxy", "gyx", "gyy", "nxy",
                 "nyx"}},
      {"render", {"c", "iterations", "radius", "resolution", "window", "box", "connectivity"}},
      {"sweep", {"a", "b", "f", "c"}},
      {"output", {"dir"}},
  };
  return keys;
}

// Raw key/value view of a config, remembering where each value came from.
class RawConfig {
 public:
  void put(const std::string& section, const std::string& key, Entry entry, bool allow_replace) {
    const auto sec = schema().find(section);
    if (sec == schema().end()) throw ParseError(entry.line, "unknown section [" + section + "]");
    if (!sec->second.count(key)) throw ParseError(entry.line, "unknown key '" + key + "' in [" + section + "]");
    const std::string full = section + "." + key;
    auto it = values_.find(full);
    if (it != values_.end()) {
      if (!allow_replace) throw ParseError(entry.line, "duplicate key '" + full + "'");
      it->second = std::move(entry);
      return;
    }
    order_.push_back(full);
    values_.emplace(full, std::move(entry));
  }

  const Entry* find(const std::string& full) const {
    auto it = values_.find(full);
    return it == values_.end() ? nullptr : &it->second;
  }

  void mark_section(const std::string& section, std::size_t line) { section_lines_.emplace(section, line); }
  std::size_t section_line(const std::string& section) const {
    auto it = section_lines_.find(section);
    return it == section_lines_.end() ? 0 : it->second;
  }

  bool has_section_keys(const std::string& section) const {
    const std::string prefix = section + ".";
    return std::any_of(order_.begin(), order_.end(), [&](const auto& k) { return k.rfind(prefix, 0) == 0; });
  }

  std::vector<std::string> keys_in(const std::string& section) const {
    std::vector<std::string> out;
    const std::string prefix = section + ".";
    for (const auto& k : order_) {
      if (k.rfind(prefix, 0) == 0) out.push_back(k.substr(prefix.size()));
    }
    return out;
  }

 private:
  std::map<std::string, Entry> values_;
  std::vector<std::string> order_;
  std::map<std::string, std::size_t> section_lines_;
};

RawConfig read_raw(const std::string& text, const Overrides& overrides) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError(number, "malformed section header");
      section = trim(std::string_view(body).substr(1, body.size() - 2));
      if (!schema().count(section)) throw ParseError(number, "unknown section [" + section + "]");
      raw.mark_section(section, number);
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected 'key = value'");
    if (section.empty()) throw ParseError(number, "key outside of any section");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParseError(number, "empty key");
    raw.put(section, key, {value, number}, false);
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    const auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      throw ParseError(0, "override '" + o + "' is not of the form section.key=value");
    }
    raw.put(trim(std::string_view(o).substr(0, dot)), trim(std::string_view(o).substr(dot + 1, eq - dot - 1)),
            {trim(std::string_view(o).substr(eq + 1)), 0}, true);
  }
  return raw;
}

std::string where(const Entry& e) { return e.line == 0 ? "--set " : ""; }

double real_value(const Entry& e, const std::string& key) {
  auto v = parse_real(e.value);
  if (!v) throw ParseError(e.line, where(e) + "malformed number for '" + key + "': '" + e.value + "'");
  return *v;
}

long long integer_value(const Entry& e, const std::string& key) {
  long long v = 0;
  const auto& s = e.value;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(e.line, where(e) + "malformed integer for '" + key + "': '" + s + "'");
  }
  return v;
}

std::vector<double> real_list(const Entry& e, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(e.value)) {
    auto v = parse_real(item);
    if (!v) throw ParseError(e.line, where(e) + "malformed number in '" + key + "': '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<Complex> complex_list(const Entry& e, const std::string& key) {
  std::vector<Complex> out;
  for (const auto& item : split_list(e.value)) {
    auto v = parse_complex(item);
    if (!v) throw ParseError(e.line, where(e) + "malformed number in '" + key + "': '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<int> int_list(const Entry& e, const std::string& key) {
  std::vector<int> out;
  for (const auto& item : split_list(e.value)) {
    Entry tmp{item, e.line};
    const long long v = integer_value(tmp, key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      throw ParseError(e.line, where(e) + "integer out of range in '" + key + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::optional<JobKind> kind_from_name(const std::string& name) {
  static const std::map<std::string, JobKind> names = {
      {"equi-m", JobKind::EquiM},   {"uni-j", JobKind::UniJ},       {"multi-m-real", JobKind::MultiMReal},
      {"multi-j-real", JobKind::MultiJReal}, {"sweep", JobKind::Sweep}, {"analyze", JobKind::Analyze},
      {"verify", JobKind::Verify}};
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::optional<ModelType> model_from_name(const std::string& name) {
  static const std::map<std::string, ModelType> names = {
      {"simple-dual", ModelType::SimpleDual}, {"self-drive", ModelType::SelfDrive},
      {"feedback", ModelType::Feedback},      {"general", ModelType::General},
      {"bipartite", ModelType::Bipartite},    {"bipartite-random", ModelType::BipartiteRandom}};
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

bool is_render_kind(JobKind k) {
  return k == JobKind::EquiM || k == JobKind::UniJ || k == JobKind::MultiMReal || k == JobKind::MultiJReal;
}
bool is_volume_kind(JobKind k) { return k == JobKind::MultiMReal || k == JobKind::MultiJReal; }
bool needs_parameters(JobKind k) { return k == JobKind::UniJ || k == JobKind::MultiJReal; }

const std::vector<std::string>& model_keys(ModelType t) {
  static const std::map<ModelType, std::vector<std::string>> keys = {
      {ModelType::SimpleDual, {"a"}},
      {ModelType::SelfDrive, {"a", "b"}},
      {ModelType::Feedback, {"a", "b", "f"}},
      {ModelType::General, {"nodes", "weights"}},
      {ModelType::Bipartite, {"half", "m", "a1", "a2", "gxx", "gxy", "gyx", "gyy"}},
      {ModelType::BipartiteRandom, {"half", "nxy", "nyx", "gxx", "gxy", "gyx", "gyy"}},
  };
  return keys.at(t);
}

constexpr std::array<double, 4> kEquiWindow{-1.75, 1.25, -1.5, 1.5};
constexpr std::array<double, 4> kUniWindow{-1.6, 1.6, -1.6, 1.6};
constexpr std::array<double, 6> kDefaultBox{-2.0, 2.0, -2.0, 2.0, -2.0, 2.0};

class SpecBuilder {
 public:
  explicit SpecBuilder(const RawConfig& raw) : raw_(raw) {}

  JobSpec build() {
    parse_job();
    if (spec_.kind != JobKind::Verify) {
      parse_model();
    } else if (raw_.has_section_keys("model")) {
      throw ParseError(raw_.section_line("model"), "verify jobs use built-in scenes; remove the [model] section");
    }
    parse_render();
    parse_sweep();
    if (const Entry* e = raw_.find("output.dir")) {
      if (e->value.empty()) throw ParseError(e->line, "output.dir must not be empty");
      spec_.output_dir = e->value;
    }
    return spec_;
  }

 private:
  const Entry& require(const std::string& section, const std::string& key) {
    const Entry* e = raw_.find(section + "." + key);
    if (!e) throw ParseError(raw_.section_line(section), "missing required key '" + section + "." + key + "'");
    return *e;
  }

  void parse_job() {
    const Entry& kind = require("job", "kind");
    auto k = kind_from_name(kind.value);
    if (!k) throw ParseError(kind.line, "unknown job kind '" + kind.value + "'");
    spec_.kind = *k;

    if (const Entry* id = raw_.find("job.id")) {
      const bool ok = !id->value.empty() && std::all_of(id->value.begin(), id->value.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
      });
      if (!ok) throw ParseError(id->line, "job.id may only contain letters, digits, '_' and '-'");
      spec_.id = id->value;
    }

    const Entry* target = raw_.find("job.target");
    if (spec_.kind == JobKind::Sweep || spec_.kind == JobKind::Analyze) {
      const Entry& t = require("job", "target");
      auto tk = kind_from_name(t.value);
      if (!tk || !is_render_kind(*tk)) throw ParseError(t.line, "job.target must be a render kind, got '" + t.value + "'");
      spec_.target = *tk;
    } else if (target) {
      throw ParseError(target->line, "job.target only applies to sweep and analyze jobs");
    } else {
      spec_.target = spec_.kind == JobKind::Verify ? JobKind::EquiM : spec_.kind;
    }

    const Entry* check = raw_.find("job.check");
    if (spec_.kind == JobKind::Verify) {
      const Entry& c = require("job", "check");
      static const std::set<std::string> checks = {"prop1", "prop2", "prop3", "nesting"};
      if (!checks.count(c.value)) throw ParseError(c.line, "unknown verify check '" + c.value + "'");
      spec_.check = c.value;
    } else if (check) {
      throw ParseError(check->line, "job.check only applies to verify jobs");
    }

    if (const Entry* seed = raw_.find("job.seed")) {
      std::uint64_t v = 0;
      const auto& s = seed->value;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(seed->line, "malformed seed '" + s + "'");
      }
      spec_.seed = v;
    }
  }

  void parse_model() {
    const Entry& type = require("model", "type");
    auto t = model_from_name(type.value);
    if (!t) throw ParseError(type.line, "unknown model type '" + type.value + "'");
    auto& m = spec_.model;
    m.type = *t;

    const auto& allowed = model_keys(m.type);
    for (const auto& key : raw_.keys_in("model")) {
      if (key == "type") continue;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ParseError(raw_.find("model." + key)->line,
                         "key '" + key + "' does not apply to model type '" + type.value + "'");
      }
    }
    auto real_or = [&](const std::string& key, double fallback) {
      const Entry* e = raw_.find("model." + key);
      return e ? real_value(*e, key) : fallback;
    };
    auto count = [&](const std::string& key) {
      const Entry& e = require("model", key);
      const long long v = integer_value(e, key);
      if (v < 0) throw ParseError(e.line, "'" + key + "' must be non-negative");
      return static_cast<std::size_t>(v);
    };
    auto block = [&](const std::string& key) {
      const Entry& e = require("model", key);
      auto v = int_list(e, key);
      if (v.size() != m.half * m.half) {
        throw ParseError(e.line, "block '" + key + "' needs " + std::to_string(m.half * m.half) + " entries");
      }
      return v;
    };

    switch (m.type) {
      case ModelType::SimpleDual:
      case ModelType::SelfDrive:
      case ModelType::Feedback:
        m.a = real_or("a", 0.0);
        m.b = real_or("b", 0.0);
        m.f = real_or("f", 0.0);
        break;
      case ModelType::General: {
        m.nodes = count("nodes");
        const Entry& w = require("model", "weights");
        m.weights = real_list(w, "weights");
        if (m.nodes == 0 || m.weights.size() != m.nodes * m.nodes) {
          throw ParseError(w.line, "weights needs nodes*nodes entries");
        }
        break;
      }
      case ModelType::Bipartite:
      case ModelType::BipartiteRandom:
        m.half = count("half");
        if (m.half == 0) throw ParseError(require("model", "half").line, "half must be at least 1");
        m.g = {real_value(require("model", "gxx"), "gxx"), real_value(require("model", "gxy"), "gxy"),
               real_value(require("model", "gyx"), "gyx"), real_value(require("model", "gyy"), "gyy")};
        if (m.type == ModelType::Bipartite) {
          m.m_block = block("m");
          m.a1_block = block("a1");
          m.a2_block = block("a2");
        } else {
          m.n_xy = count("nxy");
          m.n_yx = count("nyx");
        }
        break;
    }
    try {
      (void)m.build(spec_.seed);
    } catch (const std::exception& ex) {
      throw ParseError(type.line, std::string("invalid model: ") + ex.what());
    }
  }

  void parse_render() {
    const JobKind rk = spec_.render_kind();
    const bool volume = is_volume_kind(rk);
    const std::size_t n = spec_.kind == JobKind::Verify ? 3 : spec_.model.node_count();

    if (volume && n != 3) {
      throw ParseError(raw_.section_line("model"), "real 3-D jobs need a 3-node network");
    }

    spec_.budget = volume ? kDefaultVoxelBudget : kDefaultSliceBudget;
    if (const Entry* e = raw_.find("render.iterations")) {
      const long long v = integer_value(*e, "iterations");
      if (v < 1 || v > 1000000) throw ParseError(e->line, where(*e) + "iterations must be in [1, 1000000]");
      spec_.budget = static_cast<int>(v);
    }
    if (const Entry* e = raw_.find("render.radius")) {
      spec_.radius = real_value(*e, "radius");
      if (!(spec_.radius > 0.0)) throw ParseError(e->line, where(*e) + "radius must be positive");
    }

    const std::size_t dims = volume ? 3 : 2;
    spec_.resolution.assign(dims, volume ? 200 : 600);
    if (const Entry* e = raw_.find("render.resolution")) {
      auto r = int_list(*e, "resolution");
      if (r.size() == 1) r.assign(dims, r[0]);
      if (r.size() != dims) throw ParseError(e->line, where(*e) + "resolution needs 1 or " + std::to_string(dims) + " values");
      for (int v : r) {
        if (v < 2) throw ParseError(e->line, where(*e) + "resolution must be at least 2");
      }
      spec_.resolution = r;
    }

    spec_.window = rk == JobKind::UniJ ? kUniWindow : kEquiWindow;
    spec_.box = kDefaultBox;
    if (const Entry* e = raw_.find("render.window")) {
      if (volume) throw ParseError(e->line, "window applies to 2-D jobs; use box");
      auto v = real_list(*e, "window");
      if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3])) {
        throw ParseError(e->line, where(*e) + "window needs re_min, re_max, im_min, im_max with min < max");
      }
      std::copy(v.begin(), v.end(), spec_.window.begin());
    }
    if (const Entry* e = raw_.find("render.box")) {
      if (!volume) throw ParseError(e->line, "box applies to 3-D jobs; use window");
      auto v = real_list(*e, "box");
      if (v.size() != 6 || !(v[0] < v[1]) || !(v[2] < v[3]) || !(v[4] < v[5])) {
        throw ParseError(e->line, where(*e) + "box needs min,max pairs for x, y and z with min < max");
      }
      std::copy(v.begin(), v.end(), spec_.box.begin());
    }

    spec_.connectivity = volume ? 26 : 8;
    if (const Entry* e = raw_.find("render.connectivity")) {
      const long long v = integer_value(*e, "connectivity");
      const bool ok = volume ? (v == 6 || v == 26) : (v == 4 || v == 8);
      if (!ok) throw ParseError(e->line, where(*e) + (volume ? "connectivity must be 6 or 26" : "connectivity must be 4 or 8"));
      spec_.connectivity = static_cast<int>(v);
    }

    const Entry* c = raw_.find("render.c");
    const bool sweeps_c = raw_.find("sweep.c") != nullptr;
    if (c) {
      if (!needs_parameters(rk) || spec_.kind == JobKind::Verify) {
        throw ParseError(c->line, std::string("parameter c does not apply to ") + job_kind_name(rk) + " jobs");
      }
      spec_.parameters = complex_list(*c, "c");
      if (spec_.parameters.size() != 1 && spec_.parameters.size() != n) {
        throw ParseError(c->line, "c needs 1 value (equi-parameter) or " + std::to_string(n) + " values");
      }
      if (volume) {
        for (const auto& v : spec_.parameters) {
          if (v.imag() != 0.0) throw ParseError(c->line, "real 3-D jobs take real parameters");
        }
      }
    } else if (needs_parameters(rk) && !sweeps_c) {
      throw ParseError(raw_.section_line("render"), "missing required key 'render.c'");
    }
  }

  void parse_sweep() {
    const auto keys = raw_.keys_in("sweep");
    if (spec_.kind != JobKind::Sweep) {
      if (!keys.empty()) throw ParseError(raw_.find("sweep." + keys.front())->line, "[sweep] only applies to sweep jobs");
      return;
    }
    if (keys.empty()) throw ParseError(raw_.section_line("sweep"), "sweep jobs need at least one axis");
    const auto& allowed = model_keys(spec_.model.type);
    for (const auto& key : keys) {
      const Entry& e = *raw_.find("sweep." + key);
      SweepAxis axis{key, complex_list(e, key)};
      if (axis.values.empty()) throw ParseError(e.line, "sweep axis '" + key + "' is empty");
      if (key == "c") {
        if (!needs_parameters(spec_.target) && spec_.target != JobKind::EquiM) {
          throw ParseError(e.line, "sweep over c needs a uni-j or multi-j-real target");
        }
        if (spec_.target == JobKind::EquiM) throw ParseError(e.line, "equi-m jobs have no parameter c to sweep");
        if (raw_.find("render.c")) throw ParseError(e.line, "c is swept; remove render.c");
        if (is_volume_kind(spec_.target)) {
          for (const auto& v : axis.values) {
            if (v.imag() != 0.0) throw ParseError(e.line, "real 3-D jobs take real parameters");
          }
        }
      } else {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
          throw ParseError(e.line, "model parameter '" + key + "' does not apply to this model type");
        }
        for (const auto& v : axis.values) {
          if (v.imag() != 0.0) throw ParseError(e.line, "coupling weights are real");
        }
      }
      spec_.sweep.push_back(std::move(axis));
    }
  }

  const RawConfig& raw_;
  JobSpec spec_;
};

void put_line(std::ostringstream& out, const char* key, const std::string& value) {
  out << key << " = " << value << "\n";
}

template <class T, class Fmt>
std::string join(const std::vector<T>& values, Fmt fmt) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += fmt(values[i]);
  }
  return s;
}

}  // namespace

std::optional<double> parse_real(const std::string& raw) {
  const std::string text = trim(raw);
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  auto num = parse_decimal(std::string_view(text).substr(0, slash));
  auto den = parse_decimal(std::string_view(text).substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

std::optional<Complex> parse_complex(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (ch != ' ' && ch != '\t') text += ch;
  }
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    auto r = parse_real(text);
    if (!r) return std::nullopt;
    return Complex(*r, 0.0);
  }
  text.pop_back();
  // Split at the last sign that is not leading and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re_text = split == std::string::npos ? "" : text.substr(0, split);
  std::string im_text = split == std::string::npos ? text : text.substr(split);
  double re = 0.0;
  if (!re_text.empty()) {
    auto r = parse_real(re_text);
    if (!r) return std::nullopt;
    re = *r;
  }
  double im = 0.0;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    auto v = parse_real(im_text);
    if (!v) return std::nullopt;
    im = *v;
  }
  return Complex(re, im);
}

std::string format_real(double v) {
  // Shortest text that reads back to the same double.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex v) {
  if (v.imag() == 0.0) return format_real(v.real());
  std::string s = v.real() == 0.0 ? "" : format_real(v.real());
  if (v.imag() < 0.0) {
    s += "-" + format_real(-v.imag());
  } else {
    s += (s.empty() ? "" : "+") + format_real(v.imag());
  }
  return s + "i";
}

const char* job_kind_name(JobKind kind) {
  switch (kind) {
    case JobKind::EquiM: return "equi-m";
    case JobKind::UniJ: return "uni-j";
    case JobKind::MultiMReal: return "multi-m-real";
    case JobKind::MultiJReal: return "multi-j-real";
    case JobKind::Sweep: return "sweep";
    case JobKind::Analyze: return "analyze";
    case JobKind::Verify: return "verify";
  }
  return "unknown";
}

const char* model_type_name(ModelType type) {
  switch (type) {
    case ModelType::SimpleDual: return "simple-dual";
    case ModelType::SelfDrive: return "self-drive";
    case ModelType::Feedback: return "feedback";
    case ModelType::General: return "general";
    case ModelType::Bipartite: return "bipartite";
    case ModelType::BipartiteRandom: return "bipartite-random";
  }
  return "unknown";
}

std::size_t ModelDescriptor::node_count() const {
  switch (type) {
    case ModelType::General: return nodes;
    case ModelType::Bipartite:
    case ModelType::BipartiteRandom: return 2 * half;
    default: return 3;
  }
}

WeightMatrix ModelDescriptor::build(std::uint64_t seed) const {
  auto to_block = [this](const std::vector<int>& flat) {
    BinaryBlock block(half, std::vector<int>(half));
    for (std::size_t i = 0; i < half; ++i) {
      for (std::size_t j = 0; j < half; ++j) block[i][j] = flat.at(i * half + j);
    }
    return block;
  };
  switch (type) {
    case ModelType::SimpleDual: return build_model(SimpleDual{a});
    case ModelType::SelfDrive: return build_model(SelfDrive{a, b});
    case ModelType::Feedback: return build_model(Feedback{a, b, f});
    case ModelType::General: return WeightMatrix(nodes, weights);
    case ModelType::Bipartite: return build_bipartite(half, to_block(m_block), to_block(a1_block), to_block(a2_block), g);
    case ModelType::BipartiteRandom: return build_bipartite_random(half, n_xy, n_yx, g, seed);
  }
  throw DomainError("unknown model type");
}

JobKind JobSpec::render_kind() const { return is_render_kind(kind) ? kind : target; }

JobSpec parse_config(const std::string& text, const Overrides& overrides) {
  return SpecBuilder(read_raw(text, overrides)).build();
}

std::string serialize_config(const JobSpec& spec) {
  std::ostringstream out;
  out << "[job]\n";
  put_line(out, "kind", job_kind_name(spec.kind));
  put_line(out, "id", spec.id);
  if (spec.kind == JobKind::Sweep || spec.kind == JobKind::Analyze) put_line(out, "target", job_kind_name(spec.target));
  if (spec.kind == JobKind::Verify) put_line(out, "check", spec.check);
  put_line(out, "seed", std::to_string(spec.seed));

  if (spec.kind != JobKind::Verify) {
    const auto& m = spec.model;
    out << "\n[model]\n";
    put_line(out, "type", model_type_name(m.type));
    auto ints = [](const std::vector<int>& v) { return join(v, [](int x) { return std::to_string(x); }); };
    switch (m.type) {
      case ModelType::Feedback: put_line(out, "f", format_real(m.f)); [[fallthrough]];
      case ModelType::SelfDrive: put_line(out, "b", format_real(m.b)); [[fallthrough]];
      case ModelType::SimpleDual: put_line(out, "a", format_real(m.a)); break;
      case ModelType::General:
        put_line(out, "nodes", std::to_string(m.nodes));
        put_line(out, "weights", join(m.weights, format_real));
        break;
      case ModelType::Bipartite:
      case ModelType::BipartiteRandom:
        put_line(out, "half", std::to_string(m.half));
        if (m.type == ModelType::Bipartite) {
          put_line(out, "m", ints(m.m_block));
          put_line(out, "a1", ints(m.a1_block));
          put_line(out, "a2", ints(m.a2_block));
        } else {
          put_line(out, "nxy", std::to_string(m.n_xy));
          put_line(out, "nyx", std::to_string(m.n_yx));
        }
        put_line(out, "gxx", format_real(m.g.xx));
        put_line(out, "gxy", format_real(m.g.xy));
        put_line(out, "gyx", format_real(m.g.yx));
        put_line(out, "gyy", format_real(m.g.yy));
        break;
    }
  }

  out << "\n[render]\n";
  if (!spec.parameters.empty()) put_line(out, "c", join(spec.parameters, format_complex));
  put_line(out, "iterations", std::to_string(spec.budget));
  put_line(out, "radius", format_real(spec.radius));
  put_line(out, "resolution", join(spec.resolution, [](int x) { return std::to_string(x); }));
  if (is_volume_kind(spec.render_kind())) {
    put_line(out, "box", join(std::vector<double>(spec.box.begin(), spec.box.end()), format_real));
  } else {
    put_line(out, "window", join(std::vector<double>(spec.window.begin(), spec.window.end()), format_real));
  }
  put_line(out, "connectivity", std::to_string(spec.connectivity));

  if (!spec.sweep.empty()) {
    out << "\n[sweep]\n";
    for (const auto& axis : spec.sweep) put_line(out, axis.name.c_str(), join(axis.values, format_complex));
  }

  out << "\n[output]\n";
  put_line(out, "dir", spec.output_dir);
  return out.str();
}

std::vector<JobSpec> expand_sweep(const JobSpec& spec) {
  if (spec.kind != JobKind::Sweep) return {spec};
  std::size_t total = 1;
  for (const auto& axis : spec.sweep) total *= axis.values.size();

  std::vector<JobSpec> jobs;
  jobs.reserve(total);
  std::vector<std::size_t> index(spec.sweep.size(), 0);
  for (std::size_t j = 0; j < total; ++j) {
    JobSpec sub = spec;
    sub.kind = spec.target;
    sub.sweep.clear();
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_%03zu", j);
    sub.id = spec.id + suffix;
    for (std::size_t a = 0; a < spec.sweep.size(); ++a) {
      const auto& axis = spec.sweep[a];
      const Complex v = axis.values[index[a]];
      if (axis.name == "a") sub.model.a = v.real();
      else if (axis.name == "b") sub.model.b = v.real();
      else if (axis.name == "f") sub.model.f = v.real();
      else if (axis.name == "c") sub.parameters = {v};
    }
    // Odometer increment, last axis fastest.
    for (std::size_t a = spec.sweep.size(); a-- > 0;) {
      if (++index[a] < spec.sweep[a].values.size()) break;
      index[a] = 0;
    }
    jobs.push_back(std::move(sub));
  }
  return jobs;
}

}  // namespace netmaps
