#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pat/boundary.hpp"
#include "pat/grid.hpp"

namespace pat {

/// JSON header + raw little-endian f64 payload (row-major) in a sibling file.
/// Header keys: shape, extent_lo, extent_hi, dtype ("f64le"), field_name, payload (file name
/// relative to the header), attributes (optional numeric extras).
struct FieldFile {
    std::vector<int> shape;
    std::vector<double> extent_lo;
    std::vector<double> extent_hi;
    std::string field_name;
    std::map<std::string, double> attributes;
    std::vector<double> data;
};

/// Payload path for a header path: "x.json" -> "x.bin".
std::filesystem::path payload_path(const std::filesystem::path& header);

void write_field_file(const std::filesystem::path& header, const FieldFile& f);
/// Throws ConfigError on a malformed header or a payload whose size does not match the shape.
FieldFile read_field_file(const std::filesystem::path& header);

void write_field(const std::filesystem::path& header, const ScalarField& field, const std::string& name = "p0");
ScalarField read_field(const std::filesystem::path& header);

/// Shape [n_sensors, n_t]; the grid and time axis go into the attributes.
void write_record(const std::filesystem::path& header, const BoundaryRecord& g, const std::string& name = "g");
BoundaryRecord read_record(const std::filesystem::path& header);

}  // namespace pat
