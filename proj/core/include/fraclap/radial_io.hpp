#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fraclap/radial.hpp"

namespace fraclap {

inline constexpr std::string_view kCsvBanner = "# fraclap v0.1 schema=1";

// Formats with 17 significant digits, the precision used by every output file.
std::string format_number(double value);

// `# fraclap ...` banner, then the header `r,value` and one row per node.
std::string radial_to_csv(const RadialFunction& u);

// {"schema":1,"tail":{"sigma":..,"c":..} | null,"inner":"constant"|"power"|"zero",
//  "inner_exponent":..}
std::string radial_sidecar_json(const RadialFunction& u);

// Parses the pair above. Lines starting with '#' are skipped. An empty sidecar
// means no tail and constant inner extension. Errors: Io on malformed text,
// plus anything make_radial raises.
RadialFunction radial_from_text(std::string_view csv, std::string_view sidecar_json);

// The sidecar lives next to the CSV with the extension replaced by `.json`.
std::filesystem::path sidecar_path_for(const std::filesystem::path& csv_path);

void save_radial(const RadialFunction& u, const std::filesystem::path& csv_path);
RadialFunction load_radial(const std::filesystem::path& csv_path,
                           std::optional<std::filesystem::path> sidecar = std::nullopt);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace fraclap
