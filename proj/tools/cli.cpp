#include "cli.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fraclap/averages.hpp"
#include "fraclap/counterexample.hpp"
#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/liouville.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/picard.hpp"
#include "fraclap/radial_io.hpp"
#include "fraclap/report_io.hpp"
#include "fraclap/representation.hpp"
#include "fraclap/selftest.hpp"
#include "fraclap/sign_lemma.hpp"
#include "json.hpp"

namespace fraclap::cli {

namespace {

using json = nlohmann::json;

// A radial input given either as a CSV file or as one of the closed forms.
struct FieldFlags {
  std::string input;
  std::optional<double> constant;
  std::optional<double> bubble;  // scale (1 + r²)^{-e}
  std::optional<double> power;   // scale r^{-s}
  std::vector<double> bump;      // lo,hi
  double scale = 1.0;
  double amplitude = 1.0;
};

struct Config {
  ProblemParams params;
  QuadratureSpec spec;
  FieldFlags field;

  double gamma = 1.0;
  double R = 1.0;
  double r = 1.0;
  std::optional<double> s;
  double x_radius = 0.0;
  double y_radius = 0.5;
  double cos_angle = 1.0;
  double lambda = 1.0;
  std::optional<double> sigma;
  double tolerance = -1.0;
  bool defect = false;

  double rmin = 1e-3;
  double rmax = 1e4;
  std::size_t points = 256;
  std::vector<double> radii;

  double lo = 0.0;
  double hi = 0.0;
  std::optional<double> theoretical;
  std::string v_input;

  std::vector<double> p_range{0.5, 3.0};
  std::vector<double> q_range{0.5, 3.0};
  std::size_t p_count = 11;
  std::size_t q_count = 11;

  std::size_t steps = 5;
  std::size_t bootstrap_steps = 10;
  std::string u0_input;
  std::string v0_input;

  std::string out_path;
  std::string format;
  unsigned threads = 0;
};

struct Output {
  std::string text;
  std::optional<RadialFunction> radial;  // saved with its sidecar when --out is set
  bool converged = true;
};

class BadFlag : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> output_radii(const Config& cfg) {
  if (!cfg.radii.empty()) return cfg.radii;
  return log_grid(cfg.rmin, cfg.rmax, cfg.points);
}

RadialFunction build_field(const FieldFlags& f, const Config& cfg) {
  const int chosen = int(!f.input.empty()) + int(f.constant.has_value()) +
                     int(f.bubble.has_value()) + int(f.power.has_value()) + int(!f.bump.empty());
  if (chosen != 1) {
    throw BadFlag("give exactly one of --input, --const, --bubble, --power, --bump");
  }
  // Analytic fields are sampled on the default grid plus the requested radii.
  const auto grid = merge_grids(default_grid(), log_grid(cfg.rmin, cfg.rmax, cfg.points));
  if (!f.input.empty()) return load_radial(f.input);
  if (f.constant) {
    const double c = *f.constant;
    return sample_radial([c](double) { return c; }, grid, PowerTail{0.0, c});
  }
  const double scale = f.scale;
  if (f.bubble) {
    const double e = *f.bubble;
    return sample_radial([=](double r) { return scale * std::pow(1.0 + r * r, -e); }, grid,
                         PowerTail{2.0 * e, scale});
  }
  if (f.power) {
    const double e = *f.power;
    return sample_radial([=](double r) { return scale * std::pow(r, -e); }, grid,
                         PowerTail{e, scale}, InnerExtension::power(-e));
  }
  if (f.bump.size() != 2) throw BadFlag("--bump takes lo,hi");
  return bump_source(Bump{f.bump[0], f.bump[1], f.amplitude, {}});
}

json radial_json(const RadialFunction& u) {
  json doc = json::object();
  doc["schema"] = 1;
  doc["r"] = std::vector<double>(u.grid().begin(), u.grid().end());
  doc["value"] = std::vector<double>(u.values().begin(), u.values().end());
  doc["tail"] = u.tail() ? json{{"sigma", u.tail()->sigma}, {"c", u.tail()->c}} : json(nullptr);
  doc["inner"] = json::parse(radial_sidecar_json(u))["inner"];
  doc["inner_exponent"] = u.inner().exponent;
  return doc;
}

Output radial_output(const RadialFunction& u, const Config& cfg, bool converged) {
  Output out;
  out.converged = converged;
  if (cfg.format == "json") {
    json doc = radial_json(u);
    doc["converged"] = converged;
    out.text = doc.dump(2) + "\n";
  } else {
    out.text = radial_to_csv(u);
    out.radial = u;
  }
  return out;
}

Output json_output(const std::string& report, bool converged) {
  json doc = json::parse(report);
  doc["converged"] = converged;
  return {doc.dump(2) + "\n", std::nullopt, converged};
}

Output json_output(json doc, bool converged) {
  doc["schema"] = 1;
  doc["converged"] = converged;
  return {doc.dump(2) + "\n", std::nullopt, converged};
}

bool clean(const QuadDiagnostics& diag) { return diag.failures() == 0; }

Output run_frlap(const Config& cfg) {
  const auto u = build_field(cfg.field, cfg);
  const auto radii = output_radii(cfg);
  std::vector<double> values(radii.size());
  QuadDiagnostics diag;
  parallel_for(radii.size(), [&](std::size_t i) {
    values[i] = frac_laplacian(u, cfg.params.alpha, cfg.params.n, radii[i], cfg.spec, &diag);
  });
  if (cfg.format == "json") {
    return json_output(json{{"alpha", cfg.params.alpha}, {"n", cfg.params.n}, {"r", radii},
                            {"value", values}},
                       clean(diag));
  }
  std::string text(kCsvBanner);
  text += "\nr,value\n";
  for (std::size_t i = 0; i < radii.size(); ++i) {
    text += format_number(radii[i]) + "," + format_number(values[i]) + "\n";
  }
  return {text, std::nullopt, clean(diag)};
}

Output run_riesz(const Config& cfg) {
  const auto f = build_field(cfg.field, cfg);
  RieszOptions options;
  options.output_grid = output_radii(cfg);
  QuadDiagnostics diag;
  const auto u = riesz_potential(f, cfg.gamma, cfg.params.n, cfg.spec, options, &diag);
  return radial_output(u, cfg, clean(diag));
}

Output run_kernel(const Config& cfg) {
  const auto constants = kernel_constants(cfg.params.n, cfg.params.alpha);
  json doc{{"n", cfg.params.n},
           {"alpha", cfg.params.alpha},
           {"frac_laplacian_constant", constants.frac},
           {"poisson_constant", constants.poisson},
           {"green_constant", constants.green},
           {"riesz_constant", constants.riesz}};
  QuadDiagnostics diag;
  if (cfg.s) {
    doc["gamma"] = cfg.gamma;
    doc["r"] = cfg.r;
    doc["s"] = *cfg.s;
    doc["ring_kernel"] = ring_kernel(cfg.r, *cfg.s, cfg.gamma, cfg.params.n, cfg.spec, &diag);
  }
  return json_output(doc, clean(diag));
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

Output run_green(const Config& cfg) {
  const BallKernelParams ball{cfg.R, cfg.params.alpha, cfg.params.n};
  const double value = green_ball(cfg.x_radius, cfg.y_radius, cfg.cos_angle, ball, cfg.spec);
  return json_output(json{{"R", cfg.R}, {"alpha", cfg.params.alpha}, {"n", cfg.params.n},
                          {"x_radius", cfg.x_radius}, {"y_radius", cfg.y_radius},
                          {"cos_angle", cfg.cos_angle}, {"value", finite_or_null(value)}},
                     true);
}

Output run_poisson(const Config& cfg) {
  const BallKernelParams ball{cfg.R, cfg.params.alpha, cfg.params.n};
  const double value = poisson_ball(cfg.x_radius, cfg.y_radius, cfg.cos_angle, ball);
  return json_output(json{{"R", cfg.R}, {"alpha", cfg.params.alpha}, {"n", cfg.params.n},
                          {"x_radius", cfg.x_radius}, {"y_radius", cfg.y_radius},
                          {"cos_angle", cfg.cos_angle}, {"value", finite_or_null(value)}},
                     true);
}

Output run_navg(const Config& cfg) {
  const auto u = build_field(cfg.field, cfg);
  QuadDiagnostics diag;
  const double value = nonlocal_average(u, cfg.params.alpha, cfg.R, cfg.spec, &diag);
  return json_output(json{{"alpha", cfg.params.alpha}, {"R", cfg.R}, {"value", value}},
                     clean(diag));
}

Output run_sign_lemma(const Config& cfg) {
  return json_output(sign_lemma_json(sign_lemma(cfg.gamma, cfg.params.n, cfg.r, cfg.R, cfg.spec)),
                     true);
}

Output run_counterexample(const Config& cfg) {
  Bump bump;
  if (!cfg.field.bump.empty()) {
    if (cfg.field.bump.size() != 2) throw BadFlag("--bump takes lo,hi");
    bump.lo = cfg.field.bump[0];
    bump.hi = cfg.field.bump[1];
  }
  bump.amplitude = cfg.field.amplitude;
  QuadDiagnostics diag;
  const auto report = build_counterexample(cfg.params.alpha, cfg.params.n, bump, cfg.spec, &diag);
  return json_output(counterexample_json(report), clean(diag));
}

Output run_represent(const Config& cfg) {
  FieldFlags field = cfg.field;
  if (field.input.empty() && !field.constant && !field.bubble && !field.power &&
      field.bump.empty()) {
    field.bump = {1.0, 2.0};
  }
  const auto f = build_field(field, cfg);
  QuadDiagnostics diag;
  const auto terms =
      representation_identity(f, cfg.params.alpha, cfg.params.n, cfg.R, cfg.spec, &diag);
  return json_output(representation_json(terms), clean(diag));
}

Output run_classify(const Config& cfg) {
  return json_output(verdict_json(classify(validate(cfg.params))), true);
}

Output run_bootstrap(const Config& cfg) {
  return json_output(exponent_sequence_json(bootstrap(validate(cfg.params), cfg.bootstrap_steps)), true);
}

Output run_region_map(const Config& cfg) {
  if (cfg.p_range.size() != 2 || cfg.q_range.size() != 2) {
    throw BadFlag("--p-range and --q-range take lo,hi");
  }
  const auto map = region_map(cfg.params, cfg.p_range[0], cfg.p_range[1], cfg.q_range[0],
                              cfg.q_range[1], cfg.p_count, cfg.q_count);
  if (cfg.format == "json") {
    json cells = json::array();
    for (const auto& cell : map.cells) {
      cells.push_back({{"p", cell.p},
                       {"q", cell.q},
                       {"verdict", std::string(to_string(cell.verdict.verdict))},
                       {"reason", cell.verdict.reason}});
    }
    return json_output(json{{"p_count", map.p_count}, {"q_count", map.q_count}, {"cells", cells}},
                       true);
  }
  return {region_map_csv(map), std::nullopt, true};
}

Output run_iterate(const Config& cfg) {
  const auto params = validate(cfg.params);
  RadialFunction u0 = cfg.u0_input.empty() ? build_field(cfg.field, cfg) : load_radial(cfg.u0_input);
  RadialFunction v0 = cfg.v0_input.empty() ? u0 : load_radial(cfg.v0_input);
  QuadDiagnostics diag;
  const auto trajectory = picard_iterate(params, u0, v0, cfg.steps, cfg.spec, {}, &diag);
  return json_output(trajectory_json(trajectory), clean(diag));
}

Output run_decay_fit(const Config& cfg) {
  const auto u = build_field(cfg.field, cfg);
  if (!cfg.v_input.empty()) {
    const auto v = load_radial(cfg.v_input);
    if (cfg.radii.empty()) throw BadFlag("--radii is required with --v");
    QuadDiagnostics diag;
    const auto report = local_decay_check(u, v, validate(cfg.params), cfg.radii, cfg.spec, &diag);
    return json_output(local_decay_json(report), clean(diag));
  }
  const double lo = cfg.lo > 0.0 ? cfg.lo : u.r_max() / 10.0;
  const double hi = cfg.hi > 0.0 ? cfg.hi : u.r_max();
  return json_output(decay_report_json(fit_decay(u, lo, hi, cfg.theoretical)), true);
}

Output run_kelvin(const Config& cfg) {
  const auto u = build_field(cfg.field, cfg);
  const double sigma = cfg.sigma.value_or(cfg.params.n - cfg.params.alpha);
  if (cfg.defect) {
    return json_output(kelvin_defect_json(kelvin_defect(u, cfg.lambda, sigma, cfg.tolerance)),
                       true);
  }
  return radial_output(kelvin(u, cfg.lambda, sigma), cfg, true);
}

using Runner = Output (*)(const Config&);

struct Entry {
  SubcommandInfo info;
  Runner runner;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {{"frlap", "fractional Laplacian of a radial field", {"frac_laplacian", "integrate_pv_symmetric"}},
       run_frlap},
      {{"riesz", "Riesz potential of a radial source", {"riesz_potential", "make_radial"}},
       run_riesz},
      {{"kernel", "normalising constants and the ring kernel",
        {"riesz_constant", "ring_kernel", "integrate"}},
       run_kernel},
      {{"green", "Green function of the ball", {"green_ball"}}, run_green},
      {{"poisson", "Poisson kernel of the ball", {"poisson_ball"}}, run_poisson},
      {{"navg", "nonlocal average outside a ball", {"nonlocal_average"}}, run_navg},
      {{"sign-lemma", "sign of the spherical dipole integral",
        {"sign_integral_surface", "sign_integral_theta"}},
       run_sign_lemma},
      {{"counterexample", "superharmonic potential that increases in |x|",
        {"build_counterexample"}},
       run_counterexample},
      {{"represent", "Green plus Poisson representation at the origin",
        {"representation_identity"}},
       run_represent},
      {{"classify", "nonexistence verdict for a parameter point", {"classify", "validate"}},
       run_classify},
      {{"bootstrap", "lower-bound exponent recursion", {"bootstrap"}}, run_bootstrap},
      {{"region-map", "classify over a (p, q) grid", {"region_map"}}, run_region_map},
      {{"iterate", "Picard iteration of the integral system", {"picard_iterate"}}, run_iterate},
      {{"decay-fit", "power-law decay fit and compensated products",
        {"fit_decay", "decay_exponents", "local_decay_check"}},
       run_decay_fit},
      {{"kelvin", "Kelvin transform and its defect", {"kelvin", "kelvin_defect"}}, run_kelvin},
  };
  return table;
}

void add_params(CLI::App* sub, Config& cfg) {
  sub->add_option("--n", cfg.params.n, "dimension")->capture_default_str();
  sub->add_option("--k", cfg.params.k)->capture_default_str();
  sub->add_option("--l", cfg.params.l)->capture_default_str();
  sub->add_option("--alpha", cfg.params.alpha)->capture_default_str();
  sub->add_option("--beta", cfg.params.beta)->capture_default_str();
  sub->add_option("--a", cfg.params.a)->capture_default_str();
  sub->add_option("--b", cfg.params.b)->capture_default_str();
  sub->add_option("--p", cfg.params.p)->capture_default_str();
  sub->add_option("--q", cfg.params.q)->capture_default_str();
}

void add_order(CLI::App* sub, Config& cfg) {
  sub->add_option("--n", cfg.params.n, "dimension")->capture_default_str();
  sub->add_option("--alpha", cfg.params.alpha, "order in (0, 2)")->capture_default_str();
}

void add_quad(CLI::App* sub, Config& cfg) {
  sub->add_option("--tol", cfg.spec.rel_tol, "relative quadrature tolerance")->capture_default_str();
  sub->add_option("--nodes", cfg.spec.gauss_nodes, "Gauss nodes per panel")->capture_default_str();
  sub->add_option("--max-subdivisions", cfg.spec.max_subdivisions, "panel splits per integral")
      ->capture_default_str();
}

void add_grid(CLI::App* sub, Config& cfg) {
  sub->add_option("--rmin", cfg.rmin)->capture_default_str();
  sub->add_option("--rmax", cfg.rmax)->capture_default_str();
  sub->add_option("--points", cfg.points)->capture_default_str();
}

void add_field(CLI::App* sub, Config& cfg) {
  auto& f = cfg.field;
  sub->add_option("--input", f.input, "CSV file r,value (sidecar JSON next to it)");
  sub->add_option("--const", f.constant, "constant field");
  sub->add_option("--bubble", f.bubble, "scale (1 + r^2)^-e");
  sub->add_option("--power", f.power, "scale r^-s");
  sub->add_option("--bump", f.bump, "smooth bump on lo,hi")->delimiter(',')->expected(2);
  sub->add_option("--scale", f.scale)->capture_default_str();
  sub->add_option("--amplitude", f.amplitude)->capture_default_str();
  add_grid(sub, cfg);
}

void add_output(CLI::App* sub, Config& cfg, bool tabular) {
  sub->add_option("--out", cfg.out_path, "write the report here instead of stdout");
  if (tabular) {
    sub->add_option("--format", cfg.format, "csv (default) or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

void configure(const std::string& name, CLI::App* sub, Config& cfg) {
  if (name == "frlap") {
    add_order(sub, cfg);
    add_field(sub, cfg);
    sub->add_option("--radii", cfg.radii, "evaluation radii")->delimiter(',');
    add_quad(sub, cfg);
    add_output(sub, cfg, true);
  } else if (name == "riesz") {
    sub->add_option("--n", cfg.params.n)->capture_default_str();
    sub->add_option("--gamma", cfg.gamma, "order in (0, n)")->capture_default_str();
    add_field(sub, cfg);
    sub->add_option("--radii", cfg.radii, "output radii")->delimiter(',');
    add_quad(sub, cfg);
    add_output(sub, cfg, true);
  } else if (name == "kernel") {
    add_order(sub, cfg);
    sub->add_option("--gamma", cfg.gamma, "ring kernel order")->capture_default_str();
    sub->add_option("--r", cfg.r)->capture_default_str();
    sub->add_option("--s", cfg.s, "second radius; enables the ring kernel");
    add_quad(sub, cfg);
    add_output(sub, cfg, false);
  } else if (name == "green" || name == "poisson") {
    add_order(sub, cfg);
    sub->add_option("--R", cfg.R)->capture_default_str();
    sub->add_option("--x", cfg.x_radius, "|x|")->capture_default_str();
    sub->add_option("--y", cfg.y_radius, "|y|")->capture_default_str();
    sub->add_option("--cos", cfg.cos_angle, "cosine of the angle between x and y")
        ->capture_default_str();
    add_quad(sub, cfg);
    add_output(sub, cfg, false);
  } else if (name == "navg") {
    sub->add_option("--alpha", cfg.params.alpha)->capture_default_str();
    sub->add_option("--R", cfg.R)->capture_default_str();
    add_field(sub, cfg);
    add_quad(sub, cfg);
    add_output(sub, cfg, false);
  } else if (name == "sign-lemma") {
    sub->add_option("--gamma", cfg.gamma)->capture_default_str();
    sub->add_option("--n", cfg.params.n)->capture_default_str();
    sub->add_option("--r", cfg.r)->capture_default_str();
    sub->add_option("--R", cfg.R)->required();
    add_quad(sub, cfg);
    add_output(sub, cfg, false);
  } else if (name == "counterexample") {
    add_order(sub, cfg);
    sub->add_option("--bump", cfg.field.bump, "support lo,hi")->delimiter(',')->expected(2);
    sub->add_option("--amplitude", cfg.field.amplitude)->capture_default_str();
    add_quad(sub, cfg);
    add_output(sub, cfg, false);
  } else if (name == "represent") {
    add_order(sub, cfg);
    sub->add_option("--R", cfg.R)->capture_default_str();
    add_field(sub, cfg);
    add_quad(sub, cfg);
    add_output(sub, cfg, false);
  } else if (name == "classify") {
    add_params(sub, cfg);
    add_output(sub, cfg, false);
  } else if (name == "bootstrap") {
    add_params(sub, cfg);
    sub->add_option("--steps", cfg.bootstrap_steps, "i_max")->capture_default_str();
    add_output(sub, cfg, false);
  } else if (name == "region-map") {
    add_params(sub, cfg);
    sub->add_option("--p-range", cfg.p_range)->delimiter(',')->expected(2);
    sub->add_option("--q-range", cfg.q_range)->delimiter(',')->expected(2);
    sub->add_option("--p-count", cfg.p_count)->capture_default_str();
    sub->add_option("--q-count", cfg.q_count)->capture_default_str();
    add_output(sub, cfg, true);
  } else if (name == "iterate") {
    add_params(sub, cfg);
    add_field(sub, cfg);
    sub->add_option("--u0", cfg.u0_input, "initial u as CSV (overrides the field flags)");
    sub->add_option("--v0", cfg.v0_input, "initial v as CSV (defaults to u0)");
    sub->add_option("--steps", cfg.steps)->capture_default_str();
    add_quad(sub, cfg);
    add_output(sub, cfg, false);
  } else if (name == "decay-fit") {
    add_params(sub, cfg);
    add_field(sub, cfg);
    sub->add_option("--lo", cfg.lo, "window start (default r_max / 10)");
    sub->add_option("--hi", cfg.hi, "window end (default r_max)");
    sub->add_option("--theoretical", cfg.theoretical, "reference exponent");
    sub->add_option("--v", cfg.v_input, "second field; switches to the compensated-product check");
    sub->add_option("--radii", cfg.radii, "radii for the compensated products")->delimiter(',');
    add_quad(sub, cfg);
    add_output(sub, cfg, false);
  } else if (name == "kelvin") {
    add_order(sub, cfg);
    add_field(sub, cfg);
    sub->add_option("--lambda", cfg.lambda)->capture_default_str();
    sub->add_option("--sigma", cfg.sigma, "exponent (default n - alpha)");
    sub->add_flag("--defect", cfg.defect, "report u_lambda - u below lambda instead");
    sub->add_option("--tolerance", cfg.tolerance, "negative-set threshold");
    add_output(sub, cfg, true);
  }
}

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::NoConvergence ? kExitNoConvergence : kExitBadInput;
}

void emit(const Output& output, const Config& cfg, std::ostream& out) {
  std::string text = output.text;
  const bool csv = !text.empty() && text.front() == '#';
  if (csv && !output.converged) text += "# converged=false\n";
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  write_text_file(cfg.out_path, text);
  if (output.radial) write_text_file(sidecar_path_for(cfg.out_path), radial_sidecar_json(*output.radial));
}

}  // namespace

const std::vector<SubcommandInfo>& subcommands() {
  static const std::vector<SubcommandInfo> infos = [] {
    std::vector<SubcommandInfo> out;
    for (const auto& entry : entries()) out.push_back(entry.info);
    return out;
  }();
  return infos;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!args.empty() && !args.front().empty() && args.front().front() != '-') {
    bool known = false;
    for (const auto& entry : entries()) known = known || entry.info.name == args.front();
    if (!known) {
      err << "error: unknown subcommand '" << args.front() << "'\n";
      return kExitUnknownSubcommand;
    }
  }

  Config cfg;
  bool selftest = false;
  CLI::App app{"Numerical experiments for the fractional Laplacian on radial functions", "fraclap"};
  app.set_version_flag("--version", "fraclap 0.1.0");
  app.add_flag("--selftest", selftest, "run the acceptance checks and print a pass/fail table");
  app.add_option("--threads", cfg.threads, "worker threads (default: FRACLAP_THREADS or all cores)");
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::vector<std::pair<CLI::App*, Runner>> subs;
  for (const auto& entry : entries()) {
    auto* sub = app.add_subcommand(entry.info.name, entry.info.summary);
    configure(entry.info.name, sub, cfg);
    subs.emplace_back(sub, entry.runner);
  }

  std::vector<std::string> argv_store{"fraclap"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  set_thread_count(cfg.threads);

  if (selftest) {
    const auto results = run_selftest({}, [&](const std::string& line) { out << line << "\n" << std::flush; });
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    out << results.size() << " criteria, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitSelftestFailed;
  }

  for (const auto& [sub, runner] : subs) {
    if (!sub->parsed()) continue;
    try {
      cfg.spec.validate();
      const Output output = runner(cfg);
      emit(output, cfg, out);
      if (!output.converged) {
        err << "warning: quadrature did not converge everywhere; output is best effort\n";
        return kExitNoConvergence;
      }
      return kExitOk;
    } catch (const BadFlag& e) {
      err << "error: " << e.what() << "\n";
      return kExitBadInput;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code_for(e);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitBadInput;
    }
  }

  out << app.help();
  return kExitOk;
}

}  // namespace fraclap::cli
