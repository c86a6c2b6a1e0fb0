#include "pauli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace pauli {
namespace pt = boost::property_tree;

namespace {

using Kind = ConfigError::Kind;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"grid", {"n", "box_length"}},
      {"field_solver", {"gauge", "tolerance", "max_iterations", "damping", "warm_start", "current_form"}},
      {"evolution",
       {"epsilon", "dt", "T", "scheme", "picard_tol", "picard_max_iterations", "dealias", "coupling", "blowup_guard",
        "c_guard", "hs_order"}},
      {"initial_data", {"kind", "center", "width", "momentum", "spin", "path", "norm"}},
      {"output", {"directory", "stride", "snapshots", "snapshot_stride"}},
      {"sweep", {"epsilons"}},
      {"convergence", {"dt_list", "n_list"}},
      {"run", {"seed"}},
  };
  return keys;
}

void require_known(const std::string& key) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) throw ConfigError(Kind::UnknownKey, key, "key must have the form section.key");
  const auto section = key.substr(0, dot);
  const auto name = key.substr(dot + 1);
  const auto& keys = known_keys();
  const auto it = keys.find(section);
  if (it == keys.end()) throw ConfigError(Kind::UnknownKey, key, "unknown section '" + section + "'");
  if (!it->second.count(name)) throw ConfigError(Kind::UnknownKey, key, "unknown key '" + key + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(Kind::TypeError, key, "expected a real number, got '" + text + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(Kind::TypeError, key, "expected an integer, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw ConfigError(Kind::TypeError, key, "expected a boolean, got '" + text + "'");
}

std::array<double, 3> to_vec3(const std::string& key, const std::string& text) {
  const auto items = split_list(text);
  if (items.size() != 3) throw ConfigError(Kind::TypeError, key, "expected three comma-separated reals");
  return {to_double(key, items[0]), to_double(key, items[1]), to_double(key, items[2])};
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  bool has(const std::string& key) const { return tree_.get_optional<std::string>(pt::ptree::path_type(key, '.')).has_value(); }

  std::string raw(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
    if (!v) throw ConfigError(Kind::MissingKey, key, "missing required key '" + key + "'");
    return trim(*v);
  }

  double real(const std::string& key) const { return to_double(key, raw(key)); }
  double real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }
  long long integer(const std::string& key) const { return to_integer(key, raw(key)); }
  long long integer(const std::string& key, long long fallback) const { return has(key) ? integer(key) : fallback; }
  bool boolean(const std::string& key, bool fallback) const { return has(key) ? to_bool(key, raw(key)) : fallback; }
  std::string text(const std::string& key, const std::string& fallback) const { return has(key) ? raw(key) : fallback; }

 private:
  const pt::ptree& tree_;
};

void invariant(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(Kind::InvariantViolation, key, key + ": " + message);
}

void check_structure(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(Kind::UnknownKey, section, "key '" + section + "' outside any section");
    }
    if (!known_keys().count(section)) throw ConfigError(Kind::UnknownKey, section, "unknown section '" + section + "'");
    for (const auto& [name, value] : body) {
      require_known(section + "." + name);
      if (!value.empty()) throw ConfigError(Kind::TypeError, section + "." + name, "nested values are not allowed");
    }
  }
}

RunConfig build(pt::ptree tree, const Overrides& overrides) {
  check_structure(tree);
  for (const auto& [key, value] : overrides) {
    require_known(key);
    tree.put(pt::ptree::path_type(key, '.'), value);
  }
  const Reader r(tree);
  RunConfig c;

  c.n = static_cast<int>(r.integer("grid.n"));
  invariant(c.n >= 4 && c.n % 2 == 0, "grid.n", "must be even and >= 4");
  c.box_length = r.real("grid.box_length");
  invariant(c.box_length > 0.0 && std::isfinite(c.box_length), "grid.box_length", "must be positive");

  try {
    c.model.gauge = parse_gauge(r.raw("field_solver.gauge"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(Kind::TypeError, "field_solver.gauge", e.what());
  }
  c.model.solver.tolerance = r.real("field_solver.tolerance", 1e-10);
  invariant(c.model.solver.tolerance > 0.0, "field_solver.tolerance", "must be > 0");
  c.model.solver.max_iterations = static_cast<int>(r.integer("field_solver.max_iterations", 200));
  invariant(c.model.solver.max_iterations >= 1, "field_solver.max_iterations", "must be >= 1");
  c.model.solver.damping = r.real("field_solver.damping", 1.0);
  invariant(c.model.solver.damping > 0.0 && c.model.solver.damping <= 1.0, "field_solver.damping", "must lie in (0, 1]");
  c.model.solver.warm_start = r.boolean("field_solver.warm_start", true);
  {
    const auto form = r.text("field_solver.current_form", "sigma");
    if (form == "sigma") c.model.solver.current_form = CurrentForm::sigma;
    else if (form == "pauli") c.model.solver.current_form = CurrentForm::pauli;
    else throw ConfigError(Kind::TypeError, "field_solver.current_form", "expected sigma or pauli, got '" + form + "'");
  }

  c.model.epsilon = r.real("evolution.epsilon");
  invariant(c.model.epsilon >= 0.0 && std::isfinite(c.model.epsilon), "evolution.epsilon", "must be >= 0");
  c.dt = r.real("evolution.dt");
  invariant(c.dt > 0.0, "evolution.dt", "must be > 0");
  c.T = r.real("evolution.T");
  invariant(c.T >= 0.0, "evolution.T", "must be >= 0");
  try {
    c.step.scheme = parse_scheme(r.text("evolution.scheme", "rk4"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(Kind::TypeError, "evolution.scheme", e.what());
  }
  c.step.picard_tol = r.real("evolution.picard_tol", 1e-10);
  invariant(c.step.picard_tol > 0.0, "evolution.picard_tol", "must be > 0");
  c.step.picard_max_iterations = static_cast<int>(r.integer("evolution.picard_max_iterations", 25));
  invariant(c.step.picard_max_iterations >= 1, "evolution.picard_max_iterations", "must be >= 1");
  c.step.dealias = r.boolean("evolution.dealias", true);
  {
    const auto coupling = r.text("evolution.coupling", "full");
    if (coupling == "full") c.model.coupling = Coupling::full;
    else if (coupling == "free") c.model.coupling = Coupling::free;
    else throw ConfigError(Kind::TypeError, "evolution.coupling", "expected full or free, got '" + coupling + "'");
  }
  c.blowup_guard = r.real("evolution.blowup_guard", 1e6);
  invariant(c.blowup_guard > 0.0, "evolution.blowup_guard", "must be > 0");
  c.c_guard = r.real("evolution.c_guard", 10.0);
  invariant(c.c_guard > 0.0, "evolution.c_guard", "must be > 0");
  c.hs_order = r.real("evolution.hs_order", 2.0);

  auto& init = c.initial;
  init.kind = r.raw("initial_data.kind");
  init.norm = r.real("initial_data.norm", 1.0);
  invariant(init.norm > 0.0, "initial_data.norm", "must be > 0");
  auto read_spin = [&] {
    const auto items = split_list(r.raw("initial_data.spin"));
    if (items.size() != 2) throw ConfigError(Kind::TypeError, "initial_data.spin", "expected two complex entries");
    try {
      init.spin = {parse_complex(items[0]), parse_complex(items[1])};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(Kind::TypeError, "initial_data.spin", e.what());
    }
    invariant(std::abs(init.spin[0]) + std::abs(init.spin[1]) > 0.0, "initial_data.spin", "must be nonzero");
  };
  if (init.kind == "gaussian_packet") {
    if (r.has("initial_data.center")) {
      init.center = to_vec3("initial_data.center", r.raw("initial_data.center"));
      init.center_given = true;
    } else {
      init.center = {c.box_length / 2, c.box_length / 2, c.box_length / 2};
    }
    init.width = r.real("initial_data.width");
    invariant(init.width > 0.0, "initial_data.width", "must be > 0");
    init.momentum = to_vec3("initial_data.momentum", r.raw("initial_data.momentum"));
    read_spin();
  } else if (init.kind == "plane_wave") {
    init.momentum = to_vec3("initial_data.momentum", r.raw("initial_data.momentum"));
    const double k0 = 2.0 * std::numbers::pi / c.box_length;
    for (double k : init.momentum) {
      const double m = k / k0;
      invariant(std::abs(m - std::round(m)) < 1e-9, "initial_data.momentum",
                "plane-wave momentum must be a multiple of 2*pi/box_length");
    }
    read_spin();
  } else if (init.kind == "file") {
    init.path = r.raw("initial_data.path");
  } else {
    throw ConfigError(Kind::TypeError, "initial_data.kind",
                      "expected gaussian_packet, plane_wave or file, got '" + init.kind + "'");
  }

  c.output_directory = r.text("output.directory", "out");
  c.stride = static_cast<int>(r.integer("output.stride", 10));
  invariant(c.stride >= 1, "output.stride", "must be >= 1");
  c.snapshots = r.boolean("output.snapshots", false);
  c.snapshot_stride = static_cast<int>(r.integer("output.snapshot_stride", 0));
  invariant(c.snapshot_stride >= 0, "output.snapshot_stride", "must be >= 0");

  if (r.has("sweep.epsilons")) {
    c.sweep_epsilons.clear();
    for (const auto& item : split_list(r.raw("sweep.epsilons"))) c.sweep_epsilons.push_back(to_double("sweep.epsilons", item));
  }
  invariant(c.sweep_epsilons.size() >= 3, "sweep.epsilons", "needs at least three entries");
  for (std::size_t i = 0; i < c.sweep_epsilons.size(); ++i) {
    invariant(c.sweep_epsilons[i] >= 0.0, "sweep.epsilons", "entries must be >= 0");
    if (i > 0) invariant(c.sweep_epsilons[i] <= c.sweep_epsilons[i - 1], "sweep.epsilons", "must be sorted descending");
  }
  if (r.has("convergence.dt_list")) {
    for (const auto& item : split_list(r.raw("convergence.dt_list"))) {
      c.dt_list.push_back(to_double("convergence.dt_list", item));
      invariant(c.dt_list.back() > 0.0, "convergence.dt_list", "entries must be > 0");
    }
  }
  if (r.has("convergence.n_list")) {
    for (const auto& item : split_list(r.raw("convergence.n_list"))) {
      const auto n = to_integer("convergence.n_list", item);
      invariant(n >= 4 && n % 2 == 0, "convergence.n_list", "entries must be even and >= 4");
      c.n_list.push_back(static_cast<int>(n));
    }
  }

  const auto seed = r.integer("run.seed", 1);
  invariant(seed >= 0, "run.seed", "must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  return c;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v, std::string (*f)(T)) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + f(v[i]);
  return out;
}

std::string fmt_int(int x) { return std::to_string(x); }

}  // namespace

ConfigError::ConfigError(Kind kind, std::string key, const std::string& message)
    : std::runtime_error(message), kind_(kind), key_(std::move(key)) {}

const char* ConfigError::kind_name() const noexcept {
  switch (kind_) {
    case Kind::MissingKey: return "MissingKey";
    case Kind::TypeError: return "TypeError";
    case Kind::InvariantViolation: return "InvariantViolation";
    case Kind::UnknownKey: return "UnknownKey";
    default: return "FileError";
  }
}

std::pair<std::string, std::string> parse_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(Kind::TypeError, assignment, "override must look like section.key=value");
  }
  return {trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1))};
}

RunConfig parse_config(const std::filesystem::path& path, const Overrides& overrides) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(Kind::FileError, path.string(), e.what());
  }
  return build(std::move(tree), overrides);
}

RunConfig parse_config_string(const std::string& text, const Overrides& overrides) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(Kind::FileError, "<string>", e.what());
  }
  return build(std::move(tree), overrides);
}

cplx parse_complex(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw std::invalid_argument("empty complex literal");
  auto number = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data() + (s[0] == '+' ? 1 : 0), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad complex literal '" + text + "'");
    return v;
  };
  if (t.back() != 'i') return {number(t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(body)};
  return {number(body.substr(0, split)), number(body.substr(split))};
}

std::string format_complex(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::string resolved_config(const RunConfig& c) {
  std::ostringstream os;
  auto vec3 = [](const std::array<double, 3>& v) { return fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]); };
  os << "[grid]\n"
     << "n = " << c.n << "\n"
     << "box_length = " << fmt(c.box_length) << "\n\n";
  os << "[field_solver]\n"
     << "gauge = " << to_string(c.model.gauge) << "\n"
     << "tolerance = " << fmt(c.model.solver.tolerance) << "\n"
     << "max_iterations = " << c.model.solver.max_iterations << "\n"
     << "damping = " << fmt(c.model.solver.damping) << "\n"
     << "warm_start = " << (c.model.solver.warm_start ? "true" : "false") << "\n"
     << "current_form = " << (c.model.solver.current_form == CurrentForm::sigma ? "sigma" : "pauli") << "\n\n";
  os << "[evolution]\n"
     << "epsilon = " << fmt(c.model.epsilon) << "\n"
     << "dt = " << fmt(c.dt) << "\n"
     << "T = " << fmt(c.T) << "\n"
     << "scheme = " << to_string(c.step.scheme) << "\n"
     << "picard_tol = " << fmt(c.step.picard_tol) << "\n"
     << "picard_max_iterations = " << c.step.picard_max_iterations << "\n"
     << "dealias = " << (c.step.dealias ? "true" : "false") << "\n"
     << "coupling = " << (c.model.coupling == Coupling::full ? "full" : "free") << "\n"
     << "blowup_guard = " << fmt(c.blowup_guard) << "\n"
     << "c_guard = " << fmt(c.c_guard) << "\n"
     << "hs_order = " << fmt(c.hs_order) << "\n\n";
  os << "[initial_data]\n"
     << "kind = " << c.initial.kind << "\n";
  if (c.initial.kind == "file") {
    os << "path = " << c.initial.path << "\n";
  } else {
    if (c.initial.kind == "gaussian_packet") {
      os << "center = " << vec3(c.initial.center) << "\n"
         << "width = " << fmt(c.initial.width) << "\n";
    }
    os << "momentum = " << vec3(c.initial.momentum) << "\n"
       << "spin = " << format_complex(c.initial.spin[0]) << ", " << format_complex(c.initial.spin[1]) << "\n";
  }
  os << "norm = " << fmt(c.initial.norm) << "\n\n";
  os << "[output]\n"
     << "directory = " << c.output_directory << "\n"
     << "stride = " << c.stride << "\n"
     << "snapshots = " << (c.snapshots ? "true" : "false") << "\n"
     << "snapshot_stride = " << c.snapshot_stride << "\n\n";
  os << "[sweep]\n"
     << "epsilons = " << join(c.sweep_epsilons, fmt) << "\n\n";
  os << "[convergence]\n";
  if (!c.dt_list.empty()) os << "dt_list = " << join(c.dt_list, fmt) << "\n";
  if (!c.n_list.empty()) os << "n_list = " << join(c.n_list, fmt_int) << "\n";
  os << "\n[run]\n"
     << "seed = " << c.seed << "\n";
  return os.str();
}

}  // namespace pauli
