#include "fraclap/report_io.hpp"

#include <cmath>

#include "fraclap/radial_io.hpp"
#include "json.hpp"

namespace fraclap {

namespace {

using json = nlohmann::json;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json numbers(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

json numbers(std::span<const double> xs) {
  json out = json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

json document() {
  json doc = json::object();
  doc["schema"] = 1;
  return doc;
}

std::string finish(const json& doc) { return doc.dump(2) + "\n"; }

std::string csv_quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string decay_report_json(const DecayReport& report) {
  json doc = document();
  doc["fitted"] = number(report.fitted_exponent);
  doc["theoretical"] = number(report.theoretical_exponent);
  doc["window"] = {number(report.window_lo), number(report.window_hi)};
  doc["residual"] = number(report.residual);
  doc["points"] = report.points;
  return finish(doc);
}

std::string local_decay_json(const LocalDecayReport& report) {
  json doc = document();
  doc["sigma_u"] = number(report.exponents.sigma_u);
  doc["sigma_v"] = number(report.exponents.sigma_v);
  doc["radii"] = numbers(report.radii);
  doc["u_products"] = numbers(report.u_products);
  doc["v_products"] = numbers(report.v_products);
  doc["u_average_products"] = numbers(report.u_average_products);
  doc["v_average_products"] = numbers(report.v_average_products);
  doc["max_u"] = number(report.max_u);
  doc["max_v"] = number(report.max_v);
  doc["bounded"] = report.bounded;
  doc["exploratory"] = report.exploratory;
  return finish(doc);
}

std::string trajectory_json(const PicardTrajectory& trajectory) {
  json doc = document();
  doc["sup_norms"] = numbers(trajectory.sup_norms_u);
  doc["sup_norms_v"] = numbers(trajectory.sup_norms_v);
  doc["residuals"] = numbers(trajectory.residuals);
  doc["outcome"] = std::string(to_string(trajectory.outcome));
  doc["steps"] = trajectory.steps();
  doc["exploratory"] = true;
  doc["warning"] = trajectory.warning;
  return finish(doc);
}

std::string verdict_json(const RegionVerdict& verdict) {
  json doc = document();
  doc["verdict"] = std::string(to_string(verdict.verdict));
  doc["reason"] = verdict.reason;
  return finish(doc);
}

std::string exponent_sequence_json(const ExponentSequence& sequence) {
  json doc = document();
  doc["mu_u"] = numbers(sequence.mu_u);
  doc["mu_v"] = numbers(sequence.mu_v);
  doc["limit_class"] = std::string(to_string(sequence.limit_class));
  doc["limit_class_v"] = std::string(to_string(sequence.limit_class_v));
  doc["limit_u"] = number(sequence.limit_u);
  doc["limit_v"] = number(sequence.limit_v);
  doc["tau"] = number(sequence.tau);
  return finish(doc);
}

std::string sign_lemma_json(const SignLemmaResult& result) {
  json doc = document();
  doc["gamma"] = number(result.gamma);
  doc["n"] = result.n;
  doc["r"] = number(result.r);
  doc["R"] = number(result.R);
  doc["value"] = number(result.value_surface);
  doc["value_theta"] = result.value_theta ? number(*result.value_theta) : json(nullptr);
  doc["magnitude"] = number(result.magnitude);
  doc["sign"] = std::string(to_string(result.sign_observed));
  doc["sign_expected"] = std::string(to_string(result.sign_expected));
  return finish(doc);
}

std::string counterexample_json(const CounterexampleReport& report) {
  json doc = document();
  doc["r_lo"] = number(report.r_lo);
  doc["r_hi"] = number(report.r_hi);
  doc["min_forward_difference"] = number(report.min_forward_difference);
  doc["monotone_floor"] = number(report.monotone_floor);
  doc["strictly_increasing"] = report.strictly_increasing;
  doc["residual"] = number(report.residual);
  doc["min_frac_laplacian"] = number(report.min_frac_laplacian);
  doc["f_nonneg"] = report.f_nonneg;
  doc["sample_radii"] = numbers(report.sample_radii);
  doc["frac_laplacian"] = numbers(report.frac_laplacian_values);
  doc["u_grid"] = numbers(report.u.grid());
  doc["u_values"] = numbers(report.u.values());
  return finish(doc);
}

std::string representation_json(const RepresentationTerms& terms) {
  json doc = document();
  doc["lhs"] = number(terms.lhs);
  doc["rhs_green"] = number(terms.rhs_green);
  doc["rhs_poisson"] = number(terms.rhs_poisson);
  doc["relative_gap"] = number(terms.relative_gap());
  return finish(doc);
}

std::string kelvin_defect_json(const KelvinDefect& defect) {
  json doc = document();
  doc["r"] = numbers(defect.omega.grid());
  doc["omega"] = numbers(defect.omega.values());
  doc["tolerance"] = number(defect.tolerance);
  json intervals = json::array();
  for (const auto& interval : defect.negative_set) {
    intervals.push_back({number(interval.lo), number(interval.hi)});
  }
  doc["negative_set"] = intervals;
  return finish(doc);
}

std::string region_map_csv(const RegionMap& map) {
  std::string out(kCsvBanner);
  out += "\np,q,verdict,reason\n";
  for (const auto& cell : map.cells) {
    out += format_number(cell.p);
    out += ',';
    out += format_number(cell.q);
    out += ',';
    out += to_string(cell.verdict.verdict);
    out += ',';
    out += csv_quote(cell.verdict.reason);
    out += '\n';
  }
  return out;
}

}  // namespace fraclap
