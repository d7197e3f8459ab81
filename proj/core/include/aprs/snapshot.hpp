#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "aprs/field.hpp"

namespace aprs {

/// Binary snapshot format:
///   header  { magic "APRS", version u32, N_h u32, N_v u32, L_h f64,
///             kind u32, parity u32 }
///   payload little-endian interleaved (re, im) f64 in k1-major storage order.
enum class FieldKind : std::uint32_t {
    scalar = 0,
    uh1 = 1,
    uh2 = 2,
    uv = 3,
    mean_uh1 = 4,
    mean_uh2 = 5,
};

void write_snapshot(std::ostream& os, const SpectralField& f, FieldKind kind);
void write_snapshot_file(const std::string& path, const SpectralField& f, FieldKind kind);

SpectralField read_snapshot(std::istream& is, FieldKind* kind_out = nullptr);
SpectralField read_snapshot_file(const std::string& path, FieldKind* kind_out = nullptr);

}  // namespace aprs
