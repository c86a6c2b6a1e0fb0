#include "pauli/commands.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "pauli/errors.hpp"
#include "pauli/evolution.hpp"
#include "pauli/fft.hpp"
#include "pauli/initial_data.hpp"
#include "pauli/snapshot.hpp"
#include "pauli/spinor.hpp"

namespace pauli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_diagnostics(const fs::path& path, const std::vector<DiagnosticsRecord>& records) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << diagnostics_csv_header() << "\n";
  for (const auto& r : records) os << diagnostics_csv_row(r) << "\n";
}

// Runs `body`, turning exceptions into error.json records and exit status 2.
template <class F>
int guarded(const fs::path& out, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    write_error_record(out, e.kind_name(), e.what(), e.key());
  } catch (const Error& e) {
    write_error_record(out, e.kind(), e.what());
  } catch (const std::exception& e) {
    write_error_record(out, "Error", e.what());
  }
  return 2;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

EvolveOptions evolve_options(const RunConfig& c) {
  EvolveOptions o;
  o.dt = c.dt;
  o.T = c.T;
  o.step = c.step;
  o.stride = c.stride;
  o.blowup_guard = c.blowup_guard;
  o.hs_order = c.hs_order;
  return o;
}

struct Gate {
  std::string name;
  double value;
  double limit;
  bool passed;
};

json gates_to_json(const std::vector<Gate>& gates) {
  json arr = json::array();
  for (const auto& g : gates) arr.push_back({{"name", g.name}, {"value", g.value}, {"limit", g.limit}, {"passed", g.passed}});
  return arr;
}

bool all_passed(const std::vector<Gate>& gates) {
  for (const auto& g : gates)
    if (!g.passed) return false;
  return true;
}

double max_relative_drift(const std::vector<DiagnosticsRecord>& rs, double DiagnosticsRecord::*field) {
  const double ref = rs.front().*field;
  double worst = 0.0;
  for (const auto& r : rs) worst = std::max(worst, std::abs(r.*field - ref) / std::max(std::abs(ref), 1e-300));
  return worst;
}

}  // namespace

void write_error_record(const fs::path& out, const std::string& kind, const std::string& message,
                        const std::string& key) {
  std::error_code ec;
  fs::create_directories(out, ec);
  json j{{"error", kind}, {"message", message}};
  if (!key.empty()) j["key"] = key;
  std::ofstream os(out / "error.json");
  if (os) os << j.dump(2) << "\n";
  std::cerr << "error (" << kind << (key.empty() ? "" : ", key " + key) << "): " << message << "\n";
}

int cmd_run(const RunConfig& config, const fs::path& out, const RunGates& gates) {
  return guarded(out, [&] {
    fs::create_directories(out);
    write_text(out / "resolved_config", resolved_config(config));
    const Grid grid = make_grid(config.n, config.box_length);
    const SpinorField u0 = make_initial_data(config.initial, grid);

    EvolveOptions opts = evolve_options(config);
    const int snapshot_stride = config.snapshot_stride > 0 ? config.snapshot_stride : config.stride;
    const int nsteps = step_count(config.T, config.dt);
    const double dt = nsteps > 0 ? config.T / nsteps : config.dt;
    if (config.snapshots) fs::create_directories(out / "snapshots");

    double E0 = 0.0, Q0 = 0.0, min_h1_margin = INFINITY;
    bool h1_ok = true;
    EllipticReport worst_ratios;
    opts.on_record = [&](const SimState& s, const DiagnosticsRecord& r) {
      const long long index = std::llround(s.t / dt);
      if (r.t == 0.0) {
        E0 = r.E;
        Q0 = r.Q;
      }
      const auto check = h1_bound_check(s.u, E0, Q0, config.c_guard);
      min_h1_margin = std::min(min_h1_margin, check.margin);
      h1_ok = h1_ok && check.passed;
      // Monitored only: the estimate constants are not known.
      const auto ratios = elliptic_estimate_report(s.u, s.A, s.V);
      worst_ratios.grad_A_ratio = std::max(worst_ratios.grad_A_ratio, ratios.grad_A_ratio);
      worst_ratios.V_ratio = std::max(worst_ratios.V_ratio, ratios.V_ratio);
      if (config.snapshots && (index % snapshot_stride == 0 || index == nsteps)) {
        char name[32];
        std::snprintf(name, sizeof name, "%06lld.pwf", index);
        write_snapshot(out / "snapshots" / name, s.u);
      }
    };

    Trajectory traj;
    try {
      evolve(u0, config.model, opts, traj);
    } catch (...) {
      write_diagnostics(out / "diagnostics.csv", traj.records);
      throw;
    }
    write_diagnostics(out / "diagnostics.csv", traj.records);

    const auto& rs = traj.records;
    const double eps = config.model.epsilon;
    std::vector<Gate> g;
    const double q_drift = max_relative_drift(rs, &DiagnosticsRecord::Q);
    g.push_back({"charge_drift", q_drift, gates.charge_tolerance, q_drift <= gates.charge_tolerance});
    if (eps == 0.0) {
      const double e_drift = max_relative_drift(rs, &DiagnosticsRecord::E);
      g.push_back({"energy_drift", e_drift, gates.energy_tolerance, e_drift <= gates.energy_tolerance});
    } else {
      double worst_rise = 0.0;
      for (std::size_t i = 1; i < rs.size(); ++i) worst_rise = std::max(worst_rise, (rs[i].E - rs[i - 1].E) / rs[0].E);
      g.push_back({"energy_monotone", worst_rise, gates.monotone_slack, worst_rise <= gates.monotone_slack});
      g.push_back({"h1_bound_margin", min_h1_margin, 0.0, h1_ok});
    }
    if (config.model.coupling == Coupling::full) {
      double worst = 0.0;
      bool ok = true;
      for (const auto& r : rs) {
        const double limit = config.model.gauge == Gauge::darwin ? gates.darwin_gauge_tolerance
                                                                 : 10.0 * config.model.solver.tolerance * r.A_norm;
        worst = std::max(worst, r.gauge_residual);
        ok = ok && r.gauge_residual <= limit;
      }
      g.push_back({"gauge_residual", worst,
                   config.model.gauge == Gauge::darwin ? gates.darwin_gauge_tolerance : 10.0 * config.model.solver.tolerance,
                   ok});
    }
    double cs = 0.0;
    for (const auto& r : rs) {
      const double scale = r.Hu_norm_squared * r.Q;
      if (scale > 0.0) cs = std::min(cs, r.cauchy_schwarz_gap / scale);
    }
    g.push_back({"cauchy_schwarz", cs, -gates.cauchy_schwarz_slack, cs >= -gates.cauchy_schwarz_slack});

    const bool ok = all_passed(g);
    json summary{{"command", "run"},
                 {"steps", traj.steps},
                 {"dt", traj.dt},
                 {"records", rs.size()},
                 {"final", {{"t", rs.back().t}, {"Q", rs.back().Q}, {"E", rs.back().E}}},
                 {"gates", gates_to_json(g)},
                 {"elliptic_ratios", {{"max_grad_A", worst_ratios.grad_A_ratio}, {"max_V", worst_ratios.V_ratio}}},
                 {"passed", ok}};
    write_json(out / "summary.json", summary);
    return ok ? 0 : 1;
  });
}

int cmd_sweep(const RunConfig& config, const fs::path& out) {
  return guarded(out, [&] {
    fs::create_directories(out);
    write_text(out / "resolved_config", resolved_config(config));
    const Grid grid = make_grid(config.n, config.box_length);
    const SpinorField u0 = make_initial_data(config.initial, grid);
    const SweepResult result = epsilon_sweep(u0, config.model, config.sweep_epsilons, evolve_options(config));

    std::string csv = "epsilon_a,epsilon_b,gap,deviation\n";
    for (const auto& r : result.rows) {
      csv += fmt(r.epsilon_a) + "," + fmt(r.epsilon_b) + "," + fmt(std::abs(r.epsilon_a - r.epsilon_b)) + "," +
             fmt(r.deviation) + "\n";
    }
    write_text(out / "report.csv", csv);

    std::vector<Gate> g{{"slope", result.slope, 0.9, result.slope >= 0.9},
                        {"monotone", result.monotone ? 1.0 : 0.0, 1.0, result.monotone}};
    const bool ok = all_passed(g);
    write_json(out / "summary.json",
               json{{"command", "sweep"}, {"slope", result.slope}, {"monotone", result.monotone},
                    {"gates", gates_to_json(g)}, {"passed", ok}});
    return ok ? 0 : 1;
  });
}

int cmd_verify(std::uint64_t seed, const fs::path& out, Mutation mutation, int samples) {
  return guarded(out, [&] {
    fs::create_directories(out);
    IdentitySuiteOptions opts;
    opts.samples = samples;
    opts.mutation = mutation;
    const IdentityReport report = identity_suite(seed, opts);
    const std::string csv = report.to_csv();
    write_text(out / "report.csv", csv);
    std::cout << csv;
    json failed = json::array();
    for (const auto& c : report.checks)
      if (!c.passed) failed.push_back({{"identity", c.name}, {"n", c.n}, {"max_deviation", c.max_deviation}});
    write_json(out / "summary.json",
               json{{"command", "verify"}, {"seed", seed}, {"failed", failed}, {"passed", report.passed()}});
    return report.passed() ? 0 : 1;
  });
}

namespace {

// L^2 distance between spinors on two resolutions of the same box, through
// their Fourier coefficients (modes missing on the coarse grid count as zero).
double cross_grid_distance(const SpinorField& coarse, const SpinorField& fine) {
  const Grid& gc = coarse.grid;
  const Grid& gf = fine.grid;
  const double L3 = gf.volume();
  double acc = 0.0;
  for (int c = 0; c < 2; ++c) {
    const auto cc = fft::forward(gc, coarse[c]);
    const auto cf = fft::forward(gf, fine[c]);
    auto signed_index = [](int idx, int n) { return idx < n / 2 ? idx : idx - n; };
    const double nc = static_cast<double>(gc.size());
    const double nf = static_cast<double>(gf.size());
    for (int k = 0; k < gf.n; ++k)
      for (int j = 0; j < gf.n; ++j)
        for (int i = 0; i < gf.n; ++i) {
          const int mi = signed_index(i, gf.n), mj = signed_index(j, gf.n), mk = signed_index(k, gf.n);
          cplx coarse_coeff{};
          const int h = gc.n / 2;
          // The coarse Nyquist plane is ambiguous and treated as absent.
          if (std::abs(mi) < h && std::abs(mj) < h && std::abs(mk) < h) {
            coarse_coeff = cc[gc.index((mi + gc.n) % gc.n, (mj + gc.n) % gc.n, (mk + gc.n) % gc.n)] / nc;
          }
          acc += std::norm(cf[gf.index(i, j, k)] / nf - coarse_coeff);
        }
  }
  return std::sqrt(L3 * acc);
}

}  // namespace

int cmd_convergence(const RunConfig& config, const fs::path& out) {
  return guarded(out, [&] {
    if (config.dt_list.empty() && config.n_list.empty()) {
      throw ConfigError(ConfigError::Kind::MissingKey, "convergence.dt_list",
                        "need convergence.dt_list or convergence.n_list");
    }
    fs::create_directories(out);
    write_text(out / "resolved_config", resolved_config(config));
    std::string csv = "study,dt,n,charge_drift,energy_drift,difference_to_next,observed_order\n";
    std::vector<Gate> g;
    json studies = json::object();

    // One run per entry, keeping the final spinor and the conservation drifts.
    struct Sample {
      double dt;
      int n;
      SpinorField final_u;
      double q_drift;
      double e_drift;
    };
    auto run_one = [&](int n, double dt) {
      const Grid grid = make_grid(n, config.box_length);
      const SpinorField u0 = make_initial_data(config.initial, grid);
      EvolveOptions o = evolve_options(config);
      o.dt = dt;
      SpinorField last;
      o.on_record = [&](const SimState& s, const DiagnosticsRecord&) { last = s.u; };
      const Trajectory t = evolve(u0, config.model, o);
      return Sample{dt, n, std::move(last), max_relative_drift(t.records, &DiagnosticsRecord::Q),
                    max_relative_drift(t.records, &DiagnosticsRecord::E)};
    };

    auto emit = [&](const std::string& study, const std::vector<Sample>& samples, bool temporal) {
      std::vector<double> diff(samples.size(), std::nan("")), order(samples.size(), std::nan(""));
      for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        diff[i] = temporal ? std::sqrt(norm_squared(samples[i].final_u - samples[i + 1].final_u))
                           : (samples[i].n <= samples[i + 1].n
                                  ? cross_grid_distance(samples[i].final_u, samples[i + 1].final_u)
                                  : cross_grid_distance(samples[i + 1].final_u, samples[i].final_u));
      }
      for (std::size_t i = 0; i + 2 < samples.size(); ++i) {
        const double ratio = temporal ? samples[i].dt / samples[i + 1].dt
                                      : static_cast<double>(samples[i + 1].n) / samples[i].n;
        order[i] = std::log(diff[i] / diff[i + 1]) / std::log(ratio);
      }
      json rows = json::array();
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        csv += study + "," + fmt(s.dt) + "," + std::to_string(s.n) + "," + fmt(s.q_drift) + "," + fmt(s.e_drift) +
               "," + fmt(diff[i]) + "," + fmt(order[i]) + "\n";
        rows.push_back({{"dt", s.dt}, {"n", s.n}, {"charge_drift", s.q_drift}, {"energy_drift", s.e_drift},
                        {"difference_to_next", std::isnan(diff[i]) ? json(nullptr) : json(diff[i])},
                        {"observed_order", std::isnan(order[i]) ? json(nullptr) : json(order[i])}});
      }
      studies[study] = rows;
      return order;
    };

    if (!config.dt_list.empty()) {
      std::vector<Sample> samples;
      for (double dt : config.dt_list) samples.push_back(run_one(config.n, dt));
      const auto order = emit("dt", samples, true);
      if (config.step.scheme == Scheme::rk4) {
        if (samples.size() < 3) {
          throw ConfigError(ConfigError::Kind::InvariantViolation, "convergence.dt_list",
                            "the order gate needs at least three step sizes");
        }
        for (std::size_t i = 0; i + 2 < samples.size(); ++i) {
          g.push_back({"rk4_order_" + std::to_string(i), order[i], 3.5, order[i] >= 3.5 && order[i] <= 4.5});
        }
      }
    }
    if (!config.n_list.empty()) {
      std::vector<Sample> samples;
      for (int n : config.n_list) samples.push_back(run_one(n, config.dt));
      emit("n", samples, false);
    }
    write_text(out / "report.csv", csv);
    const bool ok = all_passed(g);
    write_json(out / "summary.json", json{{"command", "convergence"},
                                          {"scheme", to_string(config.step.scheme)},
                                          {"studies", studies},
                                          {"gates", gates_to_json(g)},
                                          {"passed", ok}});
    return ok ? 0 : 1;
  });
}

}  // namespace pauli
