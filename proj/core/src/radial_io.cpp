#include "fraclap/radial_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "fraclap/error.hpp"
#include "json.hpp"

namespace fraclap {

using json = nlohmann::json;

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string radial_to_csv(const RadialFunction& u) {
  std::string out(kCsvBanner);
  out += "\nr,value\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    out += format_number(u.grid()[i]);
    out += ',';
    out += format_number(u.values()[i]);
    out += '\n';
  }
  return out;
}

namespace {

std::string_view inner_name(InnerKind kind) {
  switch (kind) {
    case InnerKind::constant: return "constant";
    case InnerKind::power: return "power";
    case InnerKind::zero: return "zero";
  }
  return "constant";
}

InnerKind inner_from_name(const std::string& name) {
  if (name == "constant") return InnerKind::constant;
  if (name == "power") return InnerKind::power;
  if (name == "zero") return InnerKind::zero;
  fail(ErrorKind::Io, "inner", "unknown inner extension '" + name + "'");
}

double parse_double(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    fail(ErrorKind::Io, "csv", "bad number '" + token + "' on line " + std::to_string(line));
  }
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string radial_sidecar_json(const RadialFunction& u) {
  json doc;
  doc["schema"] = 1;
  if (u.tail()) {
    doc["tail"] = {{"sigma", u.tail()->sigma}, {"c", u.tail()->c}};
  } else {
    doc["tail"] = nullptr;
  }
  doc["inner"] = std::string(inner_name(u.inner().kind));
  doc["inner_exponent"] = u.inner().exponent;
  return doc.dump(2) + "\n";
}

RadialFunction radial_from_text(std::string_view csv, std::string_view sidecar_json) {
  std::optional<PowerTail> tail;
  InnerExtension inner = InnerExtension::constant();
  if (!trim(std::string(sidecar_json)).empty()) {
    json doc;
    try {
      doc = json::parse(sidecar_json);
    } catch (const json::exception& e) {
      fail(ErrorKind::Io, "sidecar", e.what());
    }
    try {
      if (doc.contains("tail") && !doc["tail"].is_null()) {
        tail = PowerTail{doc["tail"].at("sigma").get<double>(), doc["tail"].at("c").get<double>()};
      }
      if (doc.contains("inner")) inner.kind = inner_from_name(doc["inner"].get<std::string>());
      if (doc.contains("inner_exponent")) inner.exponent = doc["inner_exponent"].get<double>();
    } catch (const json::exception& e) {
      fail(ErrorKind::Io, "sidecar", e.what());
    }
  }

  std::vector<std::pair<double, double>> samples;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "r,value") fail(ErrorKind::Io, "csv", "expected header 'r,value'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      fail(ErrorKind::Io, "csv", "missing comma on line " + std::to_string(line_no));
    }
    samples.emplace_back(parse_double(trim(line.substr(0, comma)), line_no),
                         parse_double(trim(line.substr(comma + 1)), line_no));
  }
  if (!header_seen) fail(ErrorKind::Io, "csv", "missing header 'r,value'");
  return make_radial(std::move(samples), tail, inner);
}

std::filesystem::path sidecar_path_for(const std::filesystem::path& csv_path) {
  auto path = csv_path;
  path.replace_extension(".json");
  return path;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "path", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "path", "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::Io, "path", "write failed for " + path.string());
}

void save_radial(const RadialFunction& u, const std::filesystem::path& csv_path) {
  write_text_file(csv_path, radial_to_csv(u));
  write_text_file(sidecar_path_for(csv_path), radial_sidecar_json(u));
}

RadialFunction load_radial(const std::filesystem::path& csv_path,
                           std::optional<std::filesystem::path> sidecar) {
  const auto side = sidecar.value_or(sidecar_path_for(csv_path));
  std::string side_text;
  if (sidecar || std::filesystem::exists(side)) side_text = read_text_file(side);
  return radial_from_text(read_text_file(csv_path), side_text);
}

}  // namespace fraclap
