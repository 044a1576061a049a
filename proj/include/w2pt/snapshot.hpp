#pragma once

#include <iosfwd>
#include <string>

#include "w2pt/evolution.hpp"

namespace w2pt {

/// Binary snapshot of one diagonal record. Little-endian layout:
///   magic "W2PT" | version u32 | Nx u32 | n u64 | dt f64 | dx f64
/// followed by the four row-major complex-f64 matrices in slice order
/// (n,n), (n,n+1), (n+1,n), (n+1,n+1).
inline constexpr uint32_t kSnapshotVersion = 1;

void write_snapshot(std::ostream& os, const DiagonalRecord& record);
void write_snapshot_file(const std::string& path, const DiagonalRecord& record);

/// Owning counterpart of DiagonalRecord for reading snapshots back.
struct SnapshotRecord {
    int n = 0;
    double dt = 0.0;
    double dx = 0.0;
    ComplexMatrix w_nn, w_n_np1, w_np1_n, w_np1_np1;

    DiagonalRecord view() const {
        return {n, n * dt, dt, dx, &w_nn, &w_n_np1, &w_np1_n, &w_np1_np1};
    }
};

SnapshotRecord read_snapshot(std::istream& is);
SnapshotRecord read_snapshot_file(const std::string& path);

}  // namespace w2pt
