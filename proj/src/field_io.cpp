#include "pat/field_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>

#include <json.hpp>

#include "pat/errors.hpp"

namespace pat {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::size_t element_count(const std::vector<int>& shape)
{
    std::size_t n = 1;
    for (int s : shape) {
        require(s > 0, "field file: shape entries must be positive");
        n *= static_cast<std::size_t>(s);
    }
    return n;
}

void put_le(std::vector<unsigned char>& out, double v)
{
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<unsigned char>(bits >> (8 * b)));
}

double get_le(const unsigned char* p)
{
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
    return std::bit_cast<double>(bits);
}

template <class T>
T field_of(const json& h, const char* key)
{
    if (!h.contains(key)) {
        throw ConfigError(std::string("field file: header lacks '") + key + "'");
    }
    try {
        return h.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field file: bad '") + key + "': " + e.what());
    }
}

double attribute(const FieldFile& f, const std::string& key)
{
    const auto it = f.attributes.find(key);
    require(it != f.attributes.end(), "field file: missing attribute '" + key + "'");
    return it->second;
}

}  // namespace

fs::path payload_path(const fs::path& header)
{
    fs::path p = header;
    return p.replace_extension(".bin");
}

void write_field_file(const fs::path& header, const FieldFile& f)
{
    require(!f.shape.empty(), "field file: empty shape");
    require(f.data.size() == element_count(f.shape), "field file: data size does not match the shape");

    json h;
    h["shape"] = f.shape;
    h["extent_lo"] = f.extent_lo;
    h["extent_hi"] = f.extent_hi;
    h["dtype"] = "f64le";
    h["field_name"] = f.field_name;
    h["payload"] = payload_path(header).filename().string();
    if (!f.attributes.empty()) {
        h["attributes"] = f.attributes;
    }

    if (header.has_parent_path()) {
        fs::create_directories(header.parent_path());
    }
    std::ofstream hs(header);
    require(static_cast<bool>(hs), "field file: cannot write " + header.string());
    hs << h.dump(2) << '\n';

    std::vector<unsigned char> bytes;
    bytes.reserve(8 * f.data.size());
    for (double v : f.data) put_le(bytes, v);
    std::ofstream ps(payload_path(header), std::ios::binary);
    require(static_cast<bool>(ps), "field file: cannot write " + payload_path(header).string());
    ps.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    require(static_cast<bool>(ps), "field file: short write to " + payload_path(header).string());
}

FieldFile read_field_file(const fs::path& header)
{
    std::ifstream hs(header);
    require(static_cast<bool>(hs), "field file: cannot open " + header.string());
    json h;
    try {
        h = json::parse(hs);
    } catch (const json::parse_error& e) {
        throw ConfigError("field file: malformed header " + header.string() + ": " + e.what());
    }
    require(h.is_object(), "field file: header is not an object");

    FieldFile f;
    f.shape = field_of<std::vector<int>>(h, "shape");
    f.extent_lo = field_of<std::vector<double>>(h, "extent_lo");
    f.extent_hi = field_of<std::vector<double>>(h, "extent_hi");
    f.field_name = field_of<std::string>(h, "field_name");
    require(field_of<std::string>(h, "dtype") == "f64le", "field file: unsupported dtype");
    require(!f.shape.empty(), "field file: empty shape");
    if (h.contains("attributes")) {
        f.attributes = field_of<std::map<std::string, double>>(h, "attributes");
    }

    const fs::path payload = header.parent_path() / field_of<std::string>(h, "payload");
    std::ifstream ps(payload, std::ios::binary);
    require(static_cast<bool>(ps), "field file: cannot open payload " + payload.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(ps)), std::istreambuf_iterator<char>());
    const std::size_t n = element_count(f.shape);
    if (bytes.size() != 8 * n) {
        throw ConfigError("field file: payload " + payload.string() + " has " + std::to_string(bytes.size()) +
                          " bytes, shape needs " + std::to_string(8 * n));
    }
    f.data.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.data[i] = get_le(bytes.data() + 8 * i);
    return f;
}

void write_field(const fs::path& header, const ScalarField& field, const std::string& name)
{
    const GridSpec& g = field.grid;
    FieldFile f;
    f.field_name = name;
    for (int a = 0; a < g.dim; ++a) {
        f.shape.push_back(g.n[a]);
        f.extent_lo.push_back(g.lo[a]);
        f.extent_hi.push_back(g.hi[a]);
    }
    f.data = field.values;
    write_field_file(header, f);
}

ScalarField read_field(const fs::path& header)
{
    FieldFile f = read_field_file(header);
    const std::size_t dim = f.shape.size();
    require(dim == 1 || dim == 2, "field file: only 1D and 2D fields are supported");
    require(f.extent_lo.size() == dim && f.extent_hi.size() == dim, "field file: extent does not match the shape");
    const GridSpec g = dim == 1 ? GridSpec::line(f.extent_lo[0], f.extent_hi[0], f.shape[0])
                                : GridSpec::rect(f.extent_lo[0], f.extent_hi[0], f.shape[0], f.extent_lo[1],
                                                 f.extent_hi[1], f.shape[1]);
    return ScalarField(g, std::move(f.data));
}

void write_record(const fs::path& header, const BoundaryRecord& g, const std::string& name)
{
    FieldFile f;
    f.field_name = name;
    f.shape = {static_cast<int>(g.n_sensors()), g.times.n_steps};
    f.extent_lo = {0.0, 0.0};
    f.extent_hi = {static_cast<double>(g.n_sensors() - 1), g.times.t_final};
    f.attributes = {{"grid_dim", g.grid.dim},         {"grid_n0", g.grid.n[0]},   {"grid_n1", g.grid.n[1]},
                    {"grid_lo0", g.grid.lo[0]},       {"grid_lo1", g.grid.lo[1]}, {"grid_hi0", g.grid.hi[0]},
                    {"grid_hi1", g.grid.hi[1]},       {"t_final", g.times.t_final}, {"n_t", g.times.n_steps}};
    f.data = g.values;
    write_field_file(header, f);
}

BoundaryRecord read_record(const fs::path& header)
{
    FieldFile f = read_field_file(header);
    require(f.shape.size() == 2, "record file: shape must be [n_sensors, n_t]");
    const int dim = static_cast<int>(attribute(f, "grid_dim"));
    const int n0 = static_cast<int>(attribute(f, "grid_n0"));
    const int n1 = static_cast<int>(attribute(f, "grid_n1"));
    const GridSpec grid = dim == 1 ? GridSpec::line(attribute(f, "grid_lo0"), attribute(f, "grid_hi0"), n0)
                                   : GridSpec::rect(attribute(f, "grid_lo0"), attribute(f, "grid_hi0"), n0,
                                                    attribute(f, "grid_lo1"), attribute(f, "grid_hi1"), n1);
    const TimeGrid tg{attribute(f, "t_final"), static_cast<int>(attribute(f, "n_t"))};
    BoundaryRecord g(grid, tg);
    require(f.shape[0] == static_cast<int>(g.n_sensors()) && f.shape[1] == tg.n_steps,
            "record file: shape does not match the stored grid");
    g.values = std::move(f.data);
    return g;
}

}  // namespace pat
