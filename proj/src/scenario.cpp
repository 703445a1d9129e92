#include "chiralq/scenario.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "chiralq/format.hpp"

namespace chiralq {

namespace {

struct KindInfo {
  ScenarioKind kind;
  const char* name;
  const char* snake;
  const char* section;
  const char* summary;
};

constexpr std::array<KindInfo, 8> kKinds{{
    {ScenarioKind::SpectrumSweep, "SpectrumSweep", "spectrum_sweep", "spectrum_sweep",
     "Level energies and persistent currents of both branches over a flux grid, "
     "with a Kramers degeneracy report per flux point."},
    {ScenarioKind::Washboard, "Washboard", "washboard", "washboard",
     "Periodic vacuum-energy profile and the SQUID-form total potential over a flux grid."},
    {ScenarioKind::HeatKernel, "HeatKernel", "heat_kernel", "heat_kernel",
     "Regulated Dirac-sea energy: heat-kernel extrapolation of the finite part against "
     "the window-averaged sharp cutoff."},
    {ScenarioKind::SpectralFlow, "SpectralFlow", "spectral_flow", "spectral_flow",
     "Adiabatic charge pumping under a linear flux ramp: Q_A(t) and level crossings."},
    {ScenarioKind::Rabi, "Rabi", "rabi", "rabi",
     "Driven two-level dynamics in the lab frame; measured oscillation frequency "
     "against sqrt(omega_rabi^2 + detuning^2)."},
    {ScenarioKind::LandauZener, "LandauZener", "landau_zener", "landau_zener",
     "Linear sweep through the avoided crossing; diabatic probability against the "
     "closed-form exponential."},
    {ScenarioKind::Decoherence, "Decoherence", "decoherence", "decoherence",
     "Dissipative Rabi oscillations under chirality-flip noise; oscillation count "
     "before 1/e decay and the coherence-to-gate-time ratios."},
    {ScenarioKind::CmeSweep, "CmeSweep", "cme_sweep", "cme_sweep",
     "Chiral-magnetic current from occupation imbalance against the truncated "
     "occupation sum, plus the 3+1D values."},
}};

const KindInfo& info(ScenarioKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  return kKinds[0];  // unreachable
}

const std::vector<ParamSpec>& common_schema() {
  static const std::vector<ParamSpec> schema{
      {"scenario", "kind", "string", nullptr, "scenario kind (see `list`)"},
      {"scenario", "name", "string", "<kind>", "run label used in output metadata"},
      {"scenario", "seed", "int", "0", "seed recorded in outputs; reserved for sampling"},
      {"ring", "radius_m", "float", "1e-06", "ring radius R in meters"},
      {"ring", "fermi_velocity_m_per_s", "float", "1000000", "Fermi velocity v_F in m/s"},
      {"constants", "elementary_charge_c", "float", "1.602176634e-19",
       "elementary charge in coulombs"},
      {"constants", "planck_js", "float", "6.62607015e-34", "Planck constant in J*s"},
      {"output", "basename", "string", "<name>", "basename of the emitted files"},
  };
  return schema;
}

std::vector<ParamSpec> make_schema(ScenarioKind kind) {
  std::vector<ParamSpec> schema = common_schema();
  const char* s = info(kind).section;
  switch (kind) {
    case ScenarioKind::SpectrumSweep:
      schema.insert(schema.end(),
                    {{s, "phi_min", "float", "0", "start of the flux-ratio grid"},
                     {s, "phi_max", "float", "1", "end of the flux-ratio grid"},
                     {s, "points", "int", "201", "number of grid points"},
                     {s, "e_min", "float", "-3.5", "window lower edge, hbar*omega"},
                     {s, "e_max", "float", "3.5", "window upper edge, hbar*omega"}});
      break;
    case ScenarioKind::Washboard:
      schema.insert(
          schema.end(),
          {{s, "phi_min", "float", "-1.5", "start of the flux-ratio grid"},
           {s, "phi_max", "float", "2.5", "end of the flux-ratio grid"},
           {s, "points", "int", "1001", "number of grid points"},
           {s, "u0", "float", "1", "overall scale U0 of the total potential"},
           {s, "beta", "float", "0", "tunneling-term weight in the total potential"},
           {s, "cosine_argument", "string", "literal",
            "'literal' (cos phi) or 'two_pi' (cos 2*pi*phi)"}});
      break;
    case ScenarioKind::HeatKernel:
      schema.insert(
          schema.end(),
          {{s, "phi_values", "float list", "0.1, 0.25, 0.4, 0.6, 0.75, 0.9",
            "flux ratios in (0,1)"},
           {s, "epsilons", "float list", "0.1, 0.05, 0.025, 0.0125",
            "regulator values in (0, 0.5], at least 3"},
           {s, "residual_threshold", "float", "0.0001",
            "max fit residual before the result is flagged unconverged"},
           {s, "sharp_lambda0", "float", "30", "sharp-cutoff window start"},
           {s, "sharp_width", "int", "16", "sharp-cutoff window width (integer >= 2)"}});
      break;
    case ScenarioKind::SpectralFlow:
      schema.insert(
          schema.end(),
          {{s, "phi_start", "float", "0.25", "initial flux ratio"},
           {s, "delta_phi", "float", "1", "net flux change of the linear ramp"},
           {s, "duration", "float", "1", "ramp duration, units of 1/omega"},
           {s, "steps", "int", "200", "trajectory steps (samples = steps + 1)"},
           {s, "window_margin", "float", "2",
            "tracking window extends this far beyond the drift hull"}});
      break;
    case ScenarioKind::Rabi:
      schema.insert(
          schema.end(),
          {{s, "omega_rabi", "float", nullptr, "drive amplitude, rad per natural time"},
           {s, "detuning", "float", nullptr,
            "carrier detuning from the splitting, rad per natural time"},
           {s, "duration", "float", nullptr, "trace length, natural time"},
           {s, "carrier", "float", "50", "qubit splitting 2*delta, rad per natural time"},
           {s, "samples", "int", "3000", "trace samples"}});
      break;
    case ScenarioKind::LandauZener:
      schema.insert(
          schema.end(),
          {{s, "delta", "float", "1", "avoided-crossing half-gap"},
           {s, "sweep_rate", "float", "6.2831853071795862",
            "detuning sweep rate v = d(epsilon)/dt"},
           {s, "span", "float", "0", "detuning span; 0 picks a safe span automatically"}});
      break;
    case ScenarioKind::Decoherence:
      schema.insert(
          schema.end(),
          {{s, "gamma_flip_hz", "float", "1000000000", "chirality-flip rate in Hz"},
           {s, "gamma_dephase_hz", "float", "0", "extra pure-dephasing rate in Hz"},
           {s, "rabi_frequency_hz", "float", "10000000000000",
            "resonant Rabi (gate) frequency in Hz"},
           {s, "decay_horizons", "float", "1.2",
            "trace length in units of the 1/e envelope time"},
           {s, "samples_per_period", "int", "12", "samples per Rabi period"}});
      break;
    case ScenarioKind::CmeSweep:
      schema.insert(schema.end(),
                    {{s, "n_max", "int", "20", "sweep |N_R|, |N_L| up to this index"},
                     {s, "b_fields", "float list", "0, 0.5, 1",
                      "magnetic fields for the 3+1D column, natural units"}});
      break;
  }
  return schema;
}

class Binder {
 public:
  explicit Binder(const ParsedConfig& config) : config_(config) {}

  double number(const char* section, const char* key, double fallback) {
    const auto* entry = config_.consume(section, key);
    if (!entry) return fallback;
    return guarded([&] { return to_double(*entry, key); }, fallback);
  }

  std::optional<double> required_number(const char* section, const char* key) {
    const auto* entry = config_.consume(section, key);
    if (!entry) {
      errors_.push_back({config_.section_line(section),
                         std::string("missing required key '") + key + "' in [" + section +
                             "]"});
      return std::nullopt;
    }
    return guarded<std::optional<double>>([&] { return to_double(*entry, key); },
                                          std::nullopt);
  }

  long integer(const char* section, const char* key, long fallback) {
    const auto* entry = config_.consume(section, key);
    if (!entry) return fallback;
    return guarded([&] { return to_long(*entry, key); }, fallback);
  }

  std::string text(const char* section, const char* key, std::string fallback) {
    const auto* entry = config_.consume(section, key);
    if (!entry) return fallback;
    return entry->value;
  }

  std::vector<double> number_list(const char* section, const char* key,
                                  std::vector<double> fallback) {
    const auto* entry = config_.consume(section, key);
    if (!entry) return fallback;
    return guarded([&] { return to_double_list(*entry, key); }, std::move(fallback));
  }

  void error(int line, std::string message) { errors_.push_back({line, std::move(message)}); }
  void key_error(const char* section, const char* key, const std::string& message) {
    int line = 0;
    if (const auto* entry = config_.consume(section, key)) line = entry->line;
    errors_.push_back({line, std::string("key '") + key + "' in [" + section + "]: " + message});
  }

  std::vector<ConfigError>& errors() { return errors_; }

 private:
  template <class T, class F>
  T guarded(F&& f, T fallback) {
    try {
      return f();
    } catch (const ConfigException& e) {
      for (const auto& err : e.errors()) errors_.push_back(err);
      return fallback;
    }
  }

  const ParsedConfig& config_;
  std::vector<ConfigError> errors_;
};

}  // namespace

const char* kind_name(ScenarioKind kind) { return info(kind).name; }

std::optional<ScenarioKind> kind_from_name(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  return std::nullopt;
}

const std::vector<ParamSpec>& scenario_schema(ScenarioKind kind) {
  static const std::array<std::vector<ParamSpec>, 8> tables = [] {
    std::array<std::vector<ParamSpec>, 8> t;
    for (const auto& k : kKinds) {
      t[static_cast<std::size_t>(k.kind)] = make_schema(k.kind);
    }
    return t;
  }();
  return tables[static_cast<std::size_t>(kind)];
}

std::vector<std::string> list_scenarios() {
  std::vector<std::string> out;
  for (const auto& k : kKinds) out.emplace_back(k.name);
  return out;
}

std::string describe(ScenarioKind kind) {
  const KindInfo& k = info(kind);
  std::ostringstream out;
  out << k.name << "\n" << k.summary << "\n\n";
  out << "Keys (section.key = value; keys without a default are required):\n";
  for (const ParamSpec& p : scenario_schema(kind)) {
    out << "  " << p.section << "." << p.key << "  (" << p.type;
    if (p.default_value) {
      out << ", default " << p.default_value;
    } else {
      out << ", required";
    }
    out << ")\n      " << p.doc << "\n";
  }
  return out.str();
}

std::string describe(const std::string& name) {
  auto kind = kind_from_name(name);
  if (!kind) {
    throw std::invalid_argument("unknown scenario kind '" + name +
                                "'; run `list` for the supported kinds");
  }
  return describe(*kind);
}

Scenario parse_config(const std::string& text) {
  const ParsedConfig config = ParsedConfig::parse(text);
  Binder bind(config);
  Scenario s;

  const auto* kind_entry = config.consume("scenario", "kind");
  if (!kind_entry) {
    bind.error(0, "missing required key 'kind' in [scenario]");
    throw ConfigException(std::move(bind.errors()));
  }
  auto kind = kind_from_name(kind_entry->value);
  if (!kind) {
    bind.error(kind_entry->line, "unknown scenario kind '" + kind_entry->value + "'");
    throw ConfigException(std::move(bind.errors()));
  }
  s.kind = *kind;

  s.name = bind.text("scenario", "name", info(s.kind).snake);
  s.seed = bind.integer("scenario", "seed", 0);
  s.output_basename = bind.text("output", "basename", s.name);

  s.ring_radius = bind.number("ring", "radius_m", s.ring_radius);
  s.ring_fermi_velocity = bind.number("ring", "fermi_velocity_m_per_s", s.ring_fermi_velocity);
  if (!(s.ring_radius > 0.0)) bind.key_error("ring", "radius_m", "must be positive");
  if (!(s.ring_fermi_velocity > 0.0)) {
    bind.key_error("ring", "fermi_velocity_m_per_s", "must be positive");
  }
  s.constants.elementary_charge =
      bind.number("constants", "elementary_charge_c", s.constants.elementary_charge);
  s.constants.planck = bind.number("constants", "planck_js", s.constants.planck);
  if (!(s.constants.elementary_charge > 0.0)) {
    bind.key_error("constants", "elementary_charge_c", "must be positive");
  }
  if (!(s.constants.planck > 0.0)) bind.key_error("constants", "planck_js", "must be positive");

  const char* sec = info(s.kind).section;
  switch (s.kind) {
    case ScenarioKind::SpectrumSweep: {
      auto& p = s.spectrum;
      p.phi_min = bind.number(sec, "phi_min", p.phi_min);
      p.phi_max = bind.number(sec, "phi_max", p.phi_max);
      p.points = bind.integer(sec, "points", p.points);
      p.e_min = bind.number(sec, "e_min", p.e_min);
      p.e_max = bind.number(sec, "e_max", p.e_max);
      if (!(p.phi_max > p.phi_min)) bind.key_error(sec, "phi_max", "must exceed phi_min");
      if (p.points < 2) bind.key_error(sec, "points", "must be at least 2");
      if (!(p.e_max > p.e_min)) bind.key_error(sec, "e_max", "must exceed e_min");
      break;
    }
    case ScenarioKind::Washboard: {
      auto& p = s.washboard;
      p.phi_min = bind.number(sec, "phi_min", p.phi_min);
      p.phi_max = bind.number(sec, "phi_max", p.phi_max);
      p.points = bind.integer(sec, "points", p.points);
      p.u0 = bind.number(sec, "u0", p.u0);
      p.beta = bind.number(sec, "beta", p.beta);
      const std::string cosine = bind.text(sec, "cosine_argument", "literal");
      if (cosine == "literal") {
        p.cosine = CosineArgument::Literal;
      } else if (cosine == "two_pi") {
        p.cosine = CosineArgument::TwoPi;
      } else {
        bind.key_error(sec, "cosine_argument", "must be 'literal' or 'two_pi'");
      }
      if (!(p.phi_max > p.phi_min)) bind.key_error(sec, "phi_max", "must exceed phi_min");
      if (p.points < 2) bind.key_error(sec, "points", "must be at least 2");
      if (!(p.u0 > 0.0)) bind.key_error(sec, "u0", "must be positive");
      break;
    }
    case ScenarioKind::HeatKernel: {
      auto& p = s.heat_kernel;
      p.phi_values = bind.number_list(sec, "phi_values", p.phi_values);
      p.epsilons = bind.number_list(sec, "epsilons", p.epsilons);
      p.residual_threshold = bind.number(sec, "residual_threshold", p.residual_threshold);
      p.sharp_lambda0 = bind.number(sec, "sharp_lambda0", p.sharp_lambda0);
      p.sharp_width = bind.integer(sec, "sharp_width", p.sharp_width);
      for (double phi : p.phi_values) {
        if (!(phi > 0.0 && phi < 1.0)) {
          bind.key_error(sec, "phi_values", "entries must lie strictly inside (0,1)");
          break;
        }
      }
      if (p.epsilons.size() < 3) bind.key_error(sec, "epsilons", "need at least 3 values");
      for (double eps : p.epsilons) {
        if (!(eps > 0.0 && eps <= 0.5)) {
          bind.key_error(sec, "epsilons", "entries must lie in (0, 0.5]");
          break;
        }
      }
      if (!(p.residual_threshold > 0.0)) {
        bind.key_error(sec, "residual_threshold", "must be positive");
      }
      if (!(p.sharp_lambda0 > 2.0)) bind.key_error(sec, "sharp_lambda0", "must exceed 2");
      if (p.sharp_width < 2) bind.key_error(sec, "sharp_width", "must be at least 2");
      break;
    }
    case ScenarioKind::SpectralFlow: {
      auto& p = s.spectral_flow;
      p.phi_start = bind.number(sec, "phi_start", p.phi_start);
      p.delta_phi = bind.number(sec, "delta_phi", p.delta_phi);
      p.duration = bind.number(sec, "duration", p.duration);
      p.steps = bind.integer(sec, "steps", p.steps);
      p.window_margin = bind.number(sec, "window_margin", p.window_margin);
      if (!(p.duration > 0.0)) bind.key_error(sec, "duration", "must be positive");
      if (p.steps < 2) bind.key_error(sec, "steps", "must be at least 2");
      if (!(p.window_margin >= 1.0)) bind.key_error(sec, "window_margin", "must be >= 1");
      break;
    }
    case ScenarioKind::Rabi: {
      auto& p = s.rabi;
      if (auto v = bind.required_number(sec, "omega_rabi")) p.omega_rabi = *v;
      if (auto v = bind.required_number(sec, "detuning")) p.detuning = *v;
      if (auto v = bind.required_number(sec, "duration")) p.duration = *v;
      p.carrier = bind.number(sec, "carrier", p.carrier);
      p.samples = bind.integer(sec, "samples", p.samples);
      if (bind.errors().empty()) {
        if (!(p.omega_rabi > 0.0)) bind.key_error(sec, "omega_rabi", "must be positive");
        if (!(p.duration > 0.0)) bind.key_error(sec, "duration", "must be positive");
        if (!(p.carrier > 0.0)) bind.key_error(sec, "carrier", "must be positive");
        if (p.samples < 16) bind.key_error(sec, "samples", "must be at least 16");
      }
      break;
    }
    case ScenarioKind::LandauZener: {
      auto& p = s.landau_zener;
      p.delta = bind.number(sec, "delta", p.delta);
      p.sweep_rate = bind.number(sec, "sweep_rate", p.sweep_rate);
      p.span = bind.number(sec, "span", p.span);
      if (!(p.delta > 0.0)) bind.key_error(sec, "delta", "must be positive");
      if (!(p.sweep_rate > 0.0)) bind.key_error(sec, "sweep_rate", "must be positive");
      if (p.span < 0.0) bind.key_error(sec, "span", "must be >= 0 (0 = automatic)");
      break;
    }
    case ScenarioKind::Decoherence: {
      auto& p = s.decoherence;
      p.gamma_flip_hz = bind.number(sec, "gamma_flip_hz", p.gamma_flip_hz);
      p.gamma_dephase_hz = bind.number(sec, "gamma_dephase_hz", p.gamma_dephase_hz);
      p.rabi_frequency_hz = bind.number(sec, "rabi_frequency_hz", p.rabi_frequency_hz);
      p.decay_horizons = bind.number(sec, "decay_horizons", p.decay_horizons);
      p.samples_per_period = bind.integer(sec, "samples_per_period", p.samples_per_period);
      if (!(p.gamma_flip_hz > 0.0)) bind.key_error(sec, "gamma_flip_hz", "must be positive");
      if (p.gamma_dephase_hz < 0.0) {
        bind.key_error(sec, "gamma_dephase_hz", "must be non-negative");
      }
      if (!(p.rabi_frequency_hz > 0.0)) {
        bind.key_error(sec, "rabi_frequency_hz", "must be positive");
      }
      if (!(p.decay_horizons > 0.0)) bind.key_error(sec, "decay_horizons", "must be positive");
      if (p.samples_per_period < 4) {
        bind.key_error(sec, "samples_per_period", "must be at least 4");
      }
      break;
    }
    case ScenarioKind::CmeSweep: {
      auto& p = s.cme;
      p.n_max = bind.integer(sec, "n_max", p.n_max);
      p.b_fields = bind.number_list(sec, "b_fields", p.b_fields);
      if (p.n_max < 1) bind.key_error(sec, "n_max", "must be at least 1");
      break;
    }
  }

  // unknown sections (known ones may legitimately be absent or empty)
  const std::set<std::string> allowed{"scenario", "ring", "constants", "output", sec};
  for (const std::string& name : config.section_names()) {
    if (!allowed.count(name)) {
      bind.error(config.section_line(name),
                 "section [" + name + "] does not apply to kind " + info(s.kind).name);
    }
  }
  for (const auto& err : config.unused_entries()) bind.errors().push_back(err);

  if (!bind.errors().empty()) {
    auto errors = std::move(bind.errors());
    std::sort(errors.begin(), errors.end(),
              [](const ConfigError& a, const ConfigError& b) { return a.line < b.line; });
    throw ConfigException(std::move(errors));
  }
  return s;
}

std::string Scenario::resolved_text() const {
  std::ostringstream out;
  out << "scenario.kind = " << kind_name(kind) << "\n";
  out << "scenario.name = " << name << "\n";
  out << "scenario.seed = " << seed << "\n";
  out << "ring.radius_m = " << fmt17(ring_radius) << "\n";
  out << "ring.fermi_velocity_m_per_s = " << fmt17(ring_fermi_velocity) << "\n";
  out << "constants.elementary_charge_c = " << fmt17(constants.elementary_charge) << "\n";
  out << "constants.planck_js = " << fmt17(constants.planck) << "\n";
  out << "output.basename = " << output_basename << "\n";
  const char* sec = info(kind).section;
  auto put = [&](const char* key, const std::string& value) {
    out << sec << "." << key << " = " << value << "\n";
  };
  switch (kind) {
    case ScenarioKind::SpectrumSweep:
      put("phi_min", fmt17(spectrum.phi_min));
      put("phi_max", fmt17(spectrum.phi_max));
      put("points", std::to_string(spectrum.points));
      put("e_min", fmt17(spectrum.e_min));
      put("e_max", fmt17(spectrum.e_max));
      break;
    case ScenarioKind::Washboard:
      put("phi_min", fmt17(washboard.phi_min));
      put("phi_max", fmt17(washboard.phi_max));
      put("points", std::to_string(washboard.points));
      put("u0", fmt17(washboard.u0));
      put("beta", fmt17(washboard.beta));
      put("cosine_argument",
          washboard.cosine == CosineArgument::Literal ? "literal" : "two_pi");
      break;
    case ScenarioKind::HeatKernel:
      put("phi_values", join17(heat_kernel.phi_values));
      put("epsilons", join17(heat_kernel.epsilons));
      put("residual_threshold", fmt17(heat_kernel.residual_threshold));
      put("sharp_lambda0", fmt17(heat_kernel.sharp_lambda0));
      put("sharp_width", std::to_string(heat_kernel.sharp_width));
      break;
    case ScenarioKind::SpectralFlow:
      put("phi_start", fmt17(spectral_flow.phi_start));
      put("delta_phi", fmt17(spectral_flow.delta_phi));
      put("duration", fmt17(spectral_flow.duration));
      put("steps", std::to_string(spectral_flow.steps));
      put("window_margin", fmt17(spectral_flow.window_margin));
      break;
    case ScenarioKind::Rabi:
      put("omega_rabi", fmt17(rabi.omega_rabi));
      put("detuning", fmt17(rabi.detuning));
      put("duration", fmt17(rabi.duration));
      put("carrier", fmt17(rabi.carrier));
      put("samples", std::to_string(rabi.samples));
      break;
    case ScenarioKind::LandauZener:
      put("delta", fmt17(landau_zener.delta));
      put("sweep_rate", fmt17(landau_zener.sweep_rate));
      put("span", fmt17(landau_zener.span));
      break;
    case ScenarioKind::Decoherence:
      put("gamma_flip_hz", fmt17(decoherence.gamma_flip_hz));
      put("gamma_dephase_hz", fmt17(decoherence.gamma_dephase_hz));
      put("rabi_frequency_hz", fmt17(decoherence.rabi_frequency_hz));
      put("decay_horizons", fmt17(decoherence.decay_horizons));
      put("samples_per_period", std::to_string(decoherence.samples_per_period));
      break;
    case ScenarioKind::CmeSweep:
      put("n_max", std::to_string(cme.n_max));
      put("b_fields", join17(cme.b_fields));
      break;
  }
  return out.str();
}

}  // namespace chiralq
