#include "aprs/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "aprs/errors.hpp"

namespace aprs {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big,
              "mixed-endian platforms unsupported");

template <class T>
void put_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
    }
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
    unsigned char buf[sizeof(T)];
    is.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!is) throw ConsistencyError("snapshot: truncated stream");
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
    }
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

constexpr char kMagic[4] = {'A', 'P', 'R', 'S'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& f, FieldKind kind) {
    os.write(kMagic, 4);
    put_le<std::uint32_t>(os, kVersion);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.lattice().n_h()));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.lattice().n_v()));
    put_le<double>(os, f.lattice().l_h());
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(kind));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.parity()));
    for (const Complex& c : f.coeffs()) {
        put_le<double>(os, c.real());
        put_le<double>(os, c.imag());
    }
}

void write_snapshot_file(const std::string& path, const SpectralField& f, FieldKind kind) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("snapshot: cannot open for writing: " + path);
    write_snapshot(os, f, kind);
}

SpectralField read_snapshot(std::istream& is, FieldKind* kind_out) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw ConsistencyError("snapshot: bad magic (expected APRS)");
    const auto version = get_le<std::uint32_t>(is);
    if (version != kVersion) throw ConsistencyError("snapshot: unsupported version");
    const auto n_h = get_le<std::uint32_t>(is);
    const auto n_v = get_le<std::uint32_t>(is);
    const double l_h = get_le<double>(is);
    const auto kind = get_le<std::uint32_t>(is);
    const auto parity = get_le<std::uint32_t>(is);
    if (kind_out) *kind_out = static_cast<FieldKind>(kind);
    if (parity > 2) throw ConsistencyError("snapshot: bad parity tag");

    SpectralField f(make_lattice(static_cast<int>(n_h), static_cast<int>(n_v), l_h),
                    static_cast<Parity>(parity));
    for (Complex& c : f.coeffs()) {
        const double re = get_le<double>(is);
        const double im = get_le<double>(is);
        c = Complex(re, im);
    }
    return f;
}

SpectralField read_snapshot_file(const std::string& path, FieldKind* kind_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("snapshot: cannot open: " + path);
    return read_snapshot(is, kind_out);
}

}  // namespace aprs
