#include "w2pt/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace w2pt {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; byte swapping not implemented");

namespace {

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("snapshot truncated");
    return v;
}

void put_matrix(std::ostream& os, const ComplexMatrix& m) {
    os.write(reinterpret_cast<const char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(cplx)));
}

ComplexMatrix get_matrix(std::istream& is, int nx) {
    ComplexMatrix m(nx, nx);
    is.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(m.size() * sizeof(cplx)));
    if (!is) throw std::runtime_error("snapshot truncated");
    return m;
}

}  // namespace

void write_snapshot(std::ostream& os, const DiagonalRecord& record) {
    os.write("W2PT", 4);
    put<uint32_t>(os, kSnapshotVersion);
    put<uint32_t>(os, static_cast<uint32_t>(record.w_nn->rows()));
    put<uint64_t>(os, static_cast<uint64_t>(record.n));
    put<double>(os, record.dt);
    put<double>(os, record.dx);
    put_matrix(os, *record.w_nn);
    put_matrix(os, *record.w_n_np1);
    put_matrix(os, *record.w_np1_n);
    put_matrix(os, *record.w_np1_np1);
}

void write_snapshot_file(const std::string& path, const DiagonalRecord& record) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    write_snapshot(f, record);
}

SnapshotRecord read_snapshot(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "W2PT", 4) != 0) throw std::runtime_error("bad snapshot magic");
    const auto version = get<uint32_t>(is);
    if (version != kSnapshotVersion) {
        throw std::runtime_error("unsupported snapshot version " + std::to_string(version));
    }
    const auto nx = static_cast<int>(get<uint32_t>(is));
    SnapshotRecord rec;
    rec.n = static_cast<int>(get<uint64_t>(is));
    rec.dt = get<double>(is);
    rec.dx = get<double>(is);
    rec.w_nn = get_matrix(is, nx);
    rec.w_n_np1 = get_matrix(is, nx);
    rec.w_np1_n = get_matrix(is, nx);
    rec.w_np1_np1 = get_matrix(is, nx);
    return rec;
}

SnapshotRecord read_snapshot_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_snapshot(f);
}

}  // namespace w2pt
