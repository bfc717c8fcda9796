#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/grid.hpp"

namespace burgers {

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

/// CSV layout: header line "nx,ny,Lx,Ly,t", one line of those values at 17
/// significant digits, then nx data rows of ny comma-separated values
/// (row-major), same precision. %.17g round-trips doubles exactly.
inline void write_csv(const ScalarField2D& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    char meta[128];
    char buf[40];
    out << "nx,ny,Lx,Ly,t\n";
    std::snprintf(meta, sizeof meta, "%d,%d,%.17g,%.17g,%.17g\n", f.box.nx, f.box.ny, f.box.Lx,
                  f.box.Ly, f.time);
    out << meta;
    for (int i = 0; i < f.box.nx; ++i) {
        for (int j = 0; j < f.box.ny; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", f.at(i, j));
            out << buf << (j + 1 < f.box.ny ? "," : "\n");
        }
    }
    if (!out) throw IoError("write failed for " + path);
}

inline ScalarField2D read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "nx,ny,Lx,Ly,t")
        throw IoError("bad csv header in " + path);
    if (!std::getline(in, line)) throw IoError("truncated csv in " + path);

    DomainBox box;
    double t = 0.0;
    {
        std::istringstream ss(line);
        char comma;
        if (!(ss >> box.nx >> comma >> box.ny >> comma >> box.Lx >> comma >> box.Ly >> comma >>
              t))
            throw IoError("bad csv metadata in " + path);
    }
    if (box.nx <= 0 || box.ny <= 0 || box.nx > 65536 || box.ny > 65536)
        throw IoError("implausible grid size in " + path);
    ScalarField2D f(box, t);
    for (int i = 0; i < box.nx; ++i) {
        if (!std::getline(in, line)) throw IoError("truncated csv data in " + path);
        std::istringstream ss(line);
        std::string cell;
        for (int j = 0; j < box.ny; ++j) {
            if (!std::getline(ss, cell, ',')) throw IoError("short csv row in " + path);
            f.at(i, j) = std::stod(cell);
        }
    }
    return f;
}

/// Binary layout, little-endian, 32-byte header then row-major f64 data:
///   offset  0: magic "BURG" (4 bytes)
///   offset  4: u32 version (= 1)
///   offset  8: u32 nx
///   offset 12: u32 ny
///   offset 16: f32 Lx
///   offset 20: f32 Ly
///   offset 24: f64 t
inline constexpr std::uint32_t kBinaryVersion = 1;

inline void write_binary(const ScalarField2D& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");

    char header[32];
    std::memcpy(header, "BURG", 4);
    const std::uint32_t version = kBinaryVersion;
    const std::uint32_t nx = static_cast<std::uint32_t>(f.box.nx);
    const std::uint32_t ny = static_cast<std::uint32_t>(f.box.ny);
    const float lx = static_cast<float>(f.box.Lx);
    const float ly = static_cast<float>(f.box.Ly);
    const double t = f.time;
    std::memcpy(header + 4, &version, 4);
    std::memcpy(header + 8, &nx, 4);
    std::memcpy(header + 12, &ny, 4);
    std::memcpy(header + 16, &lx, 4);
    std::memcpy(header + 20, &ly, 4);
    std::memcpy(header + 24, &t, 8);
    out.write(header, sizeof header);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!out) throw IoError("write failed for " + path);
}

inline ScalarField2D read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char header[32];
    in.read(header, sizeof header);
    if (in.gcount() != sizeof header || std::memcmp(header, "BURG", 4) != 0)
        throw IoError("bad magic in " + path);
    std::uint32_t version, nx, ny;
    float lx, ly;
    double t;
    std::memcpy(&version, header + 4, 4);
    std::memcpy(&nx, header + 8, 4);
    std::memcpy(&ny, header + 12, 4);
    std::memcpy(&lx, header + 16, 4);
    std::memcpy(&ly, header + 20, 4);
    std::memcpy(&t, header + 24, 8);
    if (version != kBinaryVersion) throw IoError("unsupported version in " + path);
    if (nx == 0 || ny == 0 || nx > 65536 || ny > 65536)
        throw IoError("implausible grid size in " + path);

    DomainBox box;
    box.nx = static_cast<int>(nx);
    box.ny = static_cast<int>(ny);
    box.Lx = static_cast<double>(lx);
    box.Ly = static_cast<double>(ly);
    ScalarField2D f(box, t);
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != f.values.size() * sizeof(double))
        throw IoError("truncated data in " + path);
    return f;
}

inline std::vector<char> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace burgers
