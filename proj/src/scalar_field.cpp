#include "mtlsh/scalar_field.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mtlsh {

namespace {

constexpr char kMagic[4] = {'M', 'T', 'L', 'F'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 32;

// The on-disk header is little-endian by definition; these helpers keep the
// reader/writer byte-order independent of the host.
void put_u32(unsigned char* p, std::uint32_t v) {
    p[0] = static_cast<unsigned char>(v);
    p[1] = static_cast<unsigned char>(v >> 8);
    p[2] = static_cast<unsigned char>(v >> 16);
    p[3] = static_cast<unsigned char>(v >> 24);
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_f32(unsigned char* p, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(p, bits);
}

float get_f32(const unsigned char* p) {
    const std::uint32_t bits = get_u32(p);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

void put_f64(unsigned char* p, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>(bits >> (8 * i));
}

double get_f64(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

ScalarField load_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open field file: " + path);

    unsigned char header[kHeaderBytes];
    in.read(reinterpret_cast<char*>(header), kHeaderBytes);
    if (in.gcount() != static_cast<std::streamsize>(kHeaderBytes))
        throw std::runtime_error(path + ": truncated header (need 32 bytes)");
    if (std::memcmp(header, kMagic, 4) != 0)
        throw std::runtime_error(path + ": bad magic (expected MTLF)");
    if (get_u32(header + 4) != kVersion)
        throw std::runtime_error(path + ": unsupported format version");

    ScalarField f;
    f.dims = {get_u32(header + 8), get_u32(header + 12), get_u32(header + 16)};
    f.spacing = {get_f32(header + 20), get_f32(header + 24), get_f32(header + 28)};
    if (f.dims[0] == 0 || f.dims[1] == 0 || f.dims[2] == 0)
        throw std::runtime_error(path + ": header declares a zero dimension");

    const std::size_t n = f.size();
    f.values.resize(n);
    std::vector<unsigned char> buf(n * 8);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size()))
        throw std::runtime_error(path + ": payload length mismatch (expected " +
                                 std::to_string(n) + " values, file ends at byte " +
                                 std::to_string(kHeaderBytes + static_cast<std::size_t>(in.gcount())) + ")");
    // A trailing byte beyond the declared payload is a mismatch too.
    char extra;
    if (in.read(&extra, 1); in.gcount() != 0)
        throw std::runtime_error(path + ": payload length mismatch (data past byte " +
                                 std::to_string(kHeaderBytes + buf.size()) + ")");

    for (std::size_t i = 0; i < n; ++i) {
        f.values[i] = get_f64(buf.data() + i * 8);
        if (!std::isfinite(f.values[i]))
            throw std::runtime_error(path + ": non-finite value at byte offset " +
                                     std::to_string(kHeaderBytes + i * 8));
    }
    return f;
}

ScalarField load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);

    auto parse_header_line = [&](const std::string& expected_tag, std::size_t line_no,
                                 std::array<double, 3>& out) {
        std::string line;
        if (!std::getline(in, line))
            throw std::runtime_error(path + ": missing '" + expected_tag + "' header line");
        std::stringstream ss(line);
        std::string tag;
        if (!std::getline(ss, tag, ',') || tag != expected_tag)
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": expected '" + expected_tag + "' header");
        for (int i = 0; i < 3; ++i) {
            std::string cell;
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                         ": expected three values after '" + expected_tag + "'");
            try {
                out[i] = std::stod(cell);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                         ": cannot parse '" + cell + "'");
            }
        }
    };

    std::array<double, 3> dims_raw;
    std::array<double, 3> spacing;
    parse_header_line("dims", 1, dims_raw);
    parse_header_line("spacing", 2, spacing);

    ScalarField f;
    for (int i = 0; i < 3; ++i) {
        if (dims_raw[i] < 1 || dims_raw[i] != std::floor(dims_raw[i]))
            throw std::runtime_error(path + ": line 1: dims must be positive integers");
        f.dims[i] = static_cast<std::uint32_t>(dims_raw[i]);
    }
    f.spacing = spacing;

    const std::size_t n = f.size();
    f.values.reserve(n);
    std::string line;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double v;
        try {
            v = std::stod(line);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": cannot parse '" + line + "'");
        }
        if (!std::isfinite(v))
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": non-finite value");
        if (f.values.size() == n)
            throw std::runtime_error(path + ": payload length mismatch (more than " +
                                     std::to_string(n) + " values, line " +
                                     std::to_string(line_no) + ")");
        f.values.push_back(v);
    }
    if (f.values.size() != n)
        throw std::runtime_error(path + ": payload length mismatch (expected " +
                                 std::to_string(n) + " values, got " +
                                 std::to_string(f.values.size()) + ")");
    return f;
}

void save_raw(const ScalarField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    unsigned char header[kHeaderBytes];
    std::memcpy(header, kMagic, 4);
    put_u32(header + 4, kVersion);
    for (int i = 0; i < 3; ++i) put_u32(header + 8 + 4 * i, f.dims[i]);
    for (int i = 0; i < 3; ++i) put_f32(header + 20 + 4 * i, static_cast<float>(f.spacing[i]));
    out.write(reinterpret_cast<const char*>(header), kHeaderBytes);

    std::vector<unsigned char> buf(f.values.size() * 8);
    for (std::size_t i = 0; i < f.values.size(); ++i) put_f64(buf.data() + i * 8, f.values[i]);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

void save_csv(const ScalarField& f, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "dims," << f.dims[0] << ',' << f.dims[1] << ',' << f.dims[2] << '\n';
    char num[64];
    out << "spacing";
    for (int i = 0; i < 3; ++i) {
        std::snprintf(num, sizeof num, "%.17g", f.spacing[i]);
        out << ',' << num;
    }
    out << '\n';
    for (double v : f.values) {
        std::snprintf(num, sizeof num, "%.17g", v);
        out << num << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace

void ScalarField::validate() const {
    if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1)
        throw std::invalid_argument("field dims must be >= 1 on every axis");
    if (values.size() != size())
        throw std::invalid_argument("field has " + std::to_string(values.size()) +
                                    " values but dims declare " + std::to_string(size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("non-finite value at index " + std::to_string(i));
    }
}

ScalarField load_field(const std::string& path, FieldFormat format) {
    ScalarField f = format == FieldFormat::raw_binary ? load_raw(path) : load_csv(path);
    f.validate();
    return f;
}

void save_field(const ScalarField& field, const std::string& path, FieldFormat format) {
    field.validate();
    if (format == FieldFormat::raw_binary)
        save_raw(field, path);
    else
        save_csv(field, path);
}

FieldFormat field_format_for_path(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".csv") return FieldFormat::csv;
    if (ext == ".mtlf") return FieldFormat::raw_binary;
    throw std::invalid_argument("unknown field file extension: " + path);
}

} // namespace mtlsh
