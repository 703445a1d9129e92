#include "chiralq/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chiralq/dirac_sea.hpp"
#include "chiralq/evolve.hpp"
#include "chiralq/format.hpp"
#include "chiralq/measure.hpp"
#include "chiralq/version.hpp"

namespace chiralq {

namespace {

using json = nlohmann::ordered_json;

// Chunked deterministic parallel map: out[i] = fn(i) for i in [0, n).
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const int workers = std::max(1, jobs);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct RunContext {
  const Scenario& scenario;
  UnitSystem units;
  std::string csv;
  json results;
  bool converged = true;
  std::vector<std::string> notes;  // printed unless quiet
};

std::string metadata_header(const Scenario& s, const UnitSystem& units,
                            const std::string& columns) {
  std::ostringstream out;
  out << "# chiralq " << kVersion << "\n";
  std::istringstream resolved(s.resolved_text());
  std::string line;
  while (std::getline(resolved, line)) out << "# " << line << "\n";
  out << "# derived.omega_rad_per_s = " << fmt17(units.ring().omega) << "\n";
  out << "# derived.reduced_planck_js = " << fmt17(units.constants().reduced_planck())
      << "\n";
  out << "# derived.flux_quantum_wb = " << fmt17(units.constants().flux_quantum()) << "\n";
  out << columns << "\n";
  return out.str();
}

json constants_json(const Scenario& s, const UnitSystem& units) {
  json j;
  j["elementary_charge_c"] = s.constants.elementary_charge;
  j["planck_js"] = s.constants.planck;
  j["reduced_planck_js"] = s.constants.reduced_planck();
  j["flux_quantum_wb"] = s.constants.flux_quantum();
  j["radius_m"] = s.ring_radius;
  j["fermi_velocity_m_per_s"] = s.ring_fermi_velocity;
  j["omega_rad_per_s"] = units.ring().omega;
  return j;
}

json resolved_config_json(const Scenario& s) {
  json j;
  std::istringstream resolved(s.resolved_text());
  std::string line;
  while (std::getline(resolved, line)) {
    auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

void run_washboard(RunContext& ctx, int jobs) {
  const auto& p = ctx.scenario.washboard;
  const auto n = static_cast<std::size_t>(p.points);
  std::vector<std::string> rows(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    const double phi =
        p.phi_min + (p.phi_max - p.phi_min) * static_cast<double>(i) /
                        static_cast<double>(n - 1);
    const double u = washboard_potential(phi);
    const double u_tot = total_potential(phi, p.u0, p.beta, p.cosine);
    rows[i] = fmt17(phi) + "," + fmt17(u) + "," + fmt17(u_tot) + "\n";
  });
  std::ostringstream csv;
  csv << metadata_header(ctx.scenario, ctx.units, "phi,u_washboard,u_total");
  for (const auto& r : rows) csv << r;
  ctx.csv = csv.str();

  ctx.results["rows"] = p.points;
  ctx.results["u_at_half_flux"] = washboard_potential(0.5);
  ctx.results["u_at_integer_flux"] = washboard_potential(0.0);
}

void run_spectrum_sweep(RunContext& ctx, int jobs) {
  const auto& p = ctx.scenario.spectrum;
  const auto n = static_cast<std::size_t>(p.points);
  std::vector<std::string> rows(n);
  std::vector<int> degenerate(n, 0);
  parallel_for(n, jobs, [&](std::size_t i) {
    const double phi =
        p.phi_min + (p.phi_max - p.phi_min) * static_cast<double>(i) /
                        static_cast<double>(n - 1);
    SpectrumWindow window = enumerate_window(phi, p.e_min, p.e_max);
    KramersReport kramers = kramers_check(phi, p.e_min, p.e_max);
    degenerate[i] = kramers.degenerate ? 1 : 0;
    std::string block;
    for (const Level& level : window.levels) {
      block += fmt17(phi) + "," + std::string(branch_label(level.branch)) + "," +
               std::to_string(level.n) + "," + fmt17(level.energy) + "," +
               fmt17(level.current) + "," + (kramers.degenerate ? "1" : "0") + "\n";
    }
    rows[i] = std::move(block);
  });
  std::ostringstream csv;
  csv << metadata_header(ctx.scenario, ctx.units, "phi,branch,n,energy,current,kramers");
  for (const auto& r : rows) csv << r;
  ctx.csv = csv.str();

  int count = 0;
  for (int d : degenerate) count += d;
  ctx.results["flux_points"] = p.points;
  ctx.results["degenerate_points"] = count;
}

void run_heat_kernel(RunContext& ctx, int jobs) {
  const auto& p = ctx.scenario.heat_kernel;
  const HeatKernelFit half =
      vacuum_energy_regularized(0.5, p.epsilons, p.residual_threshold);
  const double sharp_half = sharp_cutoff_finite_part(0.5, p.sharp_lambda0,
                                                     static_cast<int>(p.sharp_width));

  const std::size_t n = p.phi_values.size();
  std::vector<HeatKernelFit> fits(n);
  std::vector<double> sharps(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    fits[i] = vacuum_energy_regularized(p.phi_values[i], p.epsilons, p.residual_threshold);
    sharps[i] =
        sharp_cutoff_finite_part(p.phi_values[i], p.sharp_lambda0,
                                 static_cast<int>(p.sharp_width));
  });

  std::ostringstream csv;
  csv << metadata_header(ctx.scenario, ctx.units,
                         "phi,finite_part,b_minus_b_half,target,target_error,"
                         "sharp_minus_half,scheme_gap,divergence_coeff,fit_residual,"
                         "converged");
  double max_target_error = 0.0;
  double max_scheme_gap = 0.0;
  bool all_converged = half.converged;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = p.phi_values[i];
    const double diff = fits[i].finite_part - half.finite_part;
    const double target = (phi - 0.5) * (phi - 0.5);
    const double target_error = std::abs(diff - target);
    const double sharp_diff = sharps[i] - sharp_half;
    const double scheme_gap = std::abs(diff - sharp_diff);
    max_target_error = std::max(max_target_error, target_error);
    max_scheme_gap = std::max(max_scheme_gap, scheme_gap);
    all_converged = all_converged && fits[i].converged;
    csv << fmt17(phi) << "," << fmt17(fits[i].finite_part) << "," << fmt17(diff) << ","
        << fmt17(target) << "," << fmt17(target_error) << "," << fmt17(sharp_diff) << ","
        << fmt17(scheme_gap) << "," << fmt17(fits[i].divergence_coeff) << ","
        << fmt17(fits[i].fit_residual) << "," << (fits[i].converged ? "1" : "0") << "\n";
  }
  ctx.csv = csv.str();
  ctx.converged = all_converged;

  ctx.results["b_at_half_flux"] = half.finite_part;
  ctx.results["max_target_error"] = max_target_error;
  ctx.results["max_scheme_gap"] = max_scheme_gap;
  ctx.results["all_converged"] = all_converged;
  if (!all_converged) {
    ctx.notes.push_back("heat-kernel fit did not converge at the requested threshold");
  }
}

void run_spectral_flow(RunContext& ctx) {
  const auto& p = ctx.scenario.spectral_flow;
  FluxProgram program =
      FluxProgram::linear_ramp(p.phi_start, p.phi_start + p.delta_phi, p.duration);
  const double half_window = std::abs(p.delta_phi) + p.window_margin;
  SpectralFlowResult flow =
      spectral_flow(program, -half_window, half_window, static_cast<int>(p.steps));

  std::ostringstream csv;
  csv << metadata_header(ctx.scenario, ctx.units, "t,phi,q_a");
  for (const auto& sample : flow.samples) {
    csv << fmt17(sample.t) << "," << fmt17(sample.phi) << "," << fmt17(sample.q_a) << "\n";
  }
  ctx.csv = csv.str();

  ctx.results["delta_q_a"] = flow.delta_q_a();
  ctx.results["expected_delta_q_a"] = 2.0 * p.delta_phi;
  ctx.results["crossings_right"] = flow.crossings_right;
  ctx.results["crossings_left"] = flow.crossings_left;
  ctx.results["emf_si_volts"] = program.emf_si(0.5 * p.duration, ctx.units);
  ctx.notes.push_back("delta_Q_A = " + fmt17(flow.delta_q_a()));
}

void run_rabi(RunContext& ctx) {
  const auto& p = ctx.scenario.rabi;
  TwoLevelSystem sys{0.0, 0.5 * p.carrier};
  DriveProgram drive;
  drive.amplitude = p.omega_rabi;
  drive.carrier = p.carrier - p.detuning;

  const Eigensystem basis = eigensystem(sys);
  std::vector<double> t_grid(static_cast<std::size_t>(p.samples));
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    t_grid[i] = p.duration * static_cast<double>(i) /
                static_cast<double>(t_grid.size() - 1);
  }
  IntegrationOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-10;
  PureTrajectory traj = evolve_unitary(QubitState::pure(basis.states[0]), sys, drive,
                                       t_grid, opts);
  const std::vector<double> p_excited = traj.population_of(basis.states[1]);
  const std::vector<double> p_ground = traj.population_of(basis.states[0]);
  const std::vector<double> norms = traj.norms();

  std::ostringstream csv;
  csv << metadata_header(ctx.scenario, ctx.units, "t,p_ground,p_excited,norm");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    csv << fmt17(t_grid[i]) << "," << fmt17(p_ground[i]) << "," << fmt17(p_excited[i])
        << "," << fmt17(norms[i]) << "\n";
  }
  ctx.csv = csv.str();

  const double generalized = std::hypot(p.omega_rabi, p.detuning);
  const double dt = t_grid[1] - t_grid[0];
  const double f_expected = generalized / (2.0 * kPi);
  const double f_measured =
      dominant_frequency(p_excited, dt, 0.25 * f_expected, 1.75 * f_expected);
  const double measured_angular = 2.0 * kPi * f_measured;

  ctx.results["frame"] = "lab";
  ctx.results["omega_rabi"] = p.omega_rabi;
  ctx.results["detuning"] = p.detuning;
  ctx.results["generalized_rabi_predicted"] = generalized;
  ctx.results["generalized_rabi_measured"] = measured_angular;
  ctx.results["relative_error"] = std::abs(measured_angular - generalized) / generalized;
}

void run_landau_zener(RunContext& ctx) {
  const auto& p = ctx.scenario.landau_zener;
  const double span =
      p.span > 0.0 ? p.span : landau_zener_auto_span(p.delta, p.sweep_rate);
  const double measured = landau_zener_sweep(p.delta, p.sweep_rate, span);
  const double exponent = 2.0 * kPi * p.delta * p.delta / p.sweep_rate;
  const double formula = std::exp(-exponent);

  std::ostringstream csv;
  csv << metadata_header(ctx.scenario, ctx.units,
                         "delta,sweep_rate,span,adiabaticity,p_measured,p_formula,"
                         "abs_error,rel_error");
  csv << fmt17(p.delta) << "," << fmt17(p.sweep_rate) << "," << fmt17(span) << ","
      << fmt17(exponent) << "," << fmt17(measured) << "," << fmt17(formula) << ","
      << fmt17(std::abs(measured - formula)) << ","
      << fmt17(std::abs(measured - formula) / formula) << "\n";
  ctx.csv = csv.str();

  ctx.results["adiabaticity_parameter"] = exponent;
  ctx.results["p_measured"] = measured;
  ctx.results["p_formula"] = formula;
  ctx.results["relative_error"] = std::abs(measured - formula) / formula;
}

void run_decoherence(RunContext& ctx) {
  const auto& p = ctx.scenario.decoherence;
  const UnitSystem& units = ctx.units;

  const double gamma = units.rate_natural(p.gamma_flip_hz);
  const double gamma_dephase = units.rate_natural(p.gamma_dephase_hz);
  const double omega_rabi = units.angular_frequency_natural(p.rabi_frequency_hz);
  const double splitting = 4.0 * omega_rabi;
  TwoLevelSystem sys{0.0, 0.5 * splitting};
  DriveProgram drive = DriveProgram::resonant_constant(omega_rabi, splitting, true);
  NoiseModel noise{gamma, gamma_dephase};

  const double period = 2.0 * kPi / omega_rabi;
  const double horizon = p.decay_horizons / gamma;
  const auto n_samples = static_cast<std::size_t>(
      std::ceil(horizon / period * static_cast<double>(p.samples_per_period)));
  std::vector<double> t_grid(n_samples + 1);
  for (std::size_t i = 0; i <= n_samples; ++i) {
    t_grid[i] = horizon * static_cast<double>(i) / static_cast<double>(n_samples);
  }

  IntegrationOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-10;
  DensityTrajectory traj =
      evolve_dissipative(QubitState::pure(Eigen::Vector2cd(1.0, 0.0)), sys, drive, noise,
                         t_grid, opts);
  std::vector<double> p0(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    p0[i] = traj.states[i](0, 0).real();
  }
  OscillationCount count = count_oscillations_until_decay(traj.times, p0, 0.5);
  CoherenceGateReport analytic =
      coherence_gate_ratio(p.gamma_flip_hz, p.rabi_frequency_hz, units, false);

  // keep the CSV to a readable size; the counts use the full trace
  const std::size_t stride = std::max<std::size_t>(1, (n_samples + 1) / 20000);
  std::ostringstream csv;
  csv << metadata_header(ctx.scenario, ctx.units, "t,p_ground,trace");
  const std::vector<double> traces = traj.traces();
  for (std::size_t i = 0; i < traj.times.size(); i += stride) {
    csv << fmt17(traj.times[i]) << "," << fmt17(p0[i]) << "," << fmt17(traces[i]) << "\n";
  }
  ctx.csv = csv.str();

  ctx.results["frame"] = "rotating_energy_basis";
  ctx.results["oscillations_before_decay"] = count.oscillations;
  ctx.results["t_decay_natural"] = count.t_decay;
  ctx.results["ratio_frequency_convention"] = analytic.ratio_frequency;
  ctx.results["ratio_angular_convention"] = analytic.ratio_angular;
  ctx.results["count_over_frequency_ratio"] =
      count.oscillations / analytic.ratio_frequency;
  ctx.notes.push_back("oscillations before 1/e decay = " + fmt17(count.oscillations) +
                      ", analytic f_gate/Gamma = " + fmt17(analytic.ratio_frequency));
}

void run_cme_sweep(RunContext& ctx, int jobs) {
  const auto& p = ctx.scenario.cme;
  const std::int64_t n_max = p.n_max;
  const std::int64_t side = 2 * n_max + 1;
  const auto rows_n = static_cast<std::size_t>(side * side);
  const std::int64_t cutoff = 10000;

  std::vector<std::string> rows(rows_n);
  std::vector<double> errors(rows_n);
  parallel_for(rows_n, jobs, [&](std::size_t i) {
    const std::int64_t n_r = static_cast<std::int64_t>(i) / side - n_max;
    const std::int64_t n_l = static_cast<std::int64_t>(i) % side - n_max;
    ChiralOccupation occ{n_r, n_l, 0.0};
    const double mu5 = occ.chiral_chemical_potential();
    const double j_formula = cme_current_1d(mu5);
    const double j_sum = occupation_sum_current(occ, cutoff);
    errors[i] = std::abs(j_formula - j_sum);
    std::string row = std::to_string(n_r) + "," + std::to_string(n_l) + "," + fmt17(mu5) +
                      "," + fmt17(j_formula) + "," + fmt17(j_sum) + "," +
                      fmt17(errors[i]);
    for (double b : p.b_fields) {
      row += "," + fmt17(cme_current_3d(mu5, b));
    }
    rows[i] = row + "\n";
  });

  std::string columns = "n_right,n_left,mu5,j_formula,j_occupation_sum,abs_error";
  for (std::size_t k = 0; k < p.b_fields.size(); ++k) {
    columns += ",j3d_" + std::to_string(k);
  }
  std::ostringstream csv;
  csv << metadata_header(ctx.scenario, ctx.units, columns);
  for (const auto& r : rows) csv << r;
  ctx.csv = csv.str();

  double max_error = 0.0;
  for (double e : errors) max_error = std::max(max_error, e);
  ctx.results["pairs"] = rows_n;
  ctx.results["cutoff"] = cutoff;
  ctx.results["max_abs_error"] = max_error;
  ctx.results["b_fields"] = p.b_fields;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view data) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

RunManifest run_scenario(const Scenario& scenario_in, const RunOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();

  Scenario scenario = scenario_in;
  if (options.seed_override) scenario.seed = *options.seed_override;

  RingParams ring(scenario.ring_radius, scenario.ring_fermi_velocity);
  RunContext ctx{scenario, UnitSystem(scenario.constants, ring), {}, json::object(), true, {}};

  switch (scenario.kind) {
    case ScenarioKind::Washboard: run_washboard(ctx, options.jobs); break;
    case ScenarioKind::SpectrumSweep: run_spectrum_sweep(ctx, options.jobs); break;
    case ScenarioKind::HeatKernel: run_heat_kernel(ctx, options.jobs); break;
    case ScenarioKind::SpectralFlow: run_spectral_flow(ctx); break;
    case ScenarioKind::Rabi: run_rabi(ctx); break;
    case ScenarioKind::LandauZener: run_landau_zener(ctx); break;
    case ScenarioKind::Decoherence: run_decoherence(ctx); break;
    case ScenarioKind::CmeSweep: run_cme_sweep(ctx, options.jobs); break;
  }

  RunManifest manifest;
  manifest.scenario_name = scenario.name;
  manifest.kind = kind_name(scenario.kind);
  manifest.scenario_hash = fnv1a64_hex(scenario.resolved_text());
  manifest.library_version = kVersion;
  manifest.seed = scenario.seed;
  manifest.converged = ctx.converged;

  std::filesystem::path dir(options.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());

  const std::string base = scenario.output_basename;
  const std::filesystem::path csv_path = dir / (base + ".csv");
  const std::filesystem::path summary_path = dir / (base + "_summary.json");
  const std::filesystem::path manifest_path = dir / (base + "_manifest.json");

  json summary;
  summary["scenario"] = {{"name", scenario.name},
                         {"kind", manifest.kind},
                         {"seed", scenario.seed},
                         {"hash", manifest.scenario_hash},
                         {"library_version", manifest.library_version}};
  summary["constants"] = constants_json(scenario, ctx.units);
  summary["resolved_config"] = resolved_config_json(scenario);
  summary["converged"] = ctx.converged;
  summary["results"] = ctx.results;
  const std::string summary_text = summary.dump(2) + "\n";

  write_file(csv_path, ctx.csv);
  write_file(summary_path, summary_text);
  manifest.outputs.push_back(
      {csv_path.filename().string(), ctx.csv.size(), fnv1a64_hex(ctx.csv)});
  manifest.outputs.push_back({summary_path.filename().string(), summary_text.size(),
                              fnv1a64_hex(summary_text)});

  const auto t_end = std::chrono::steady_clock::now();
  manifest.wall_clock_ms =
      std::chrono::duration<double, std::milli>(t_end - t_start).count();

  json manifest_json;
  manifest_json["scenario_name"] = manifest.scenario_name;
  manifest_json["kind"] = manifest.kind;
  manifest_json["scenario_hash"] = manifest.scenario_hash;
  manifest_json["library_version"] = manifest.library_version;
  manifest_json["seed"] = manifest.seed;
  manifest_json["constants"] = constants_json(scenario, ctx.units);
  manifest_json["wall_clock_ms"] = manifest.wall_clock_ms;
  manifest_json["converged"] = manifest.converged;
  manifest_json["outputs"] = json::array();
  for (const auto& rec : manifest.outputs) {
    manifest_json["outputs"].push_back(
        {{"path", rec.path}, {"bytes", rec.bytes}, {"checksum", rec.checksum}});
  }
  write_file(manifest_path, manifest_json.dump(2) + "\n");

  if (!options.quiet) {
    std::cout << "[" << manifest.kind << "] " << scenario.name << " -> "
              << csv_path.string() << "\n";
    for (const auto& note : ctx.notes) std::cout << "  " << note << "\n";
    if (!ctx.converged) std::cout << "  WARNING: numerical non-convergence flagged\n";
  }
  return manifest;
}

}  // namespace chiralq
