#include "oped/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace oped {

namespace {

constexpr char kSinoMagic[8] = {'O', 'P', 'E', 'D', 'S', 'I', 'N', 'O'};
constexpr char kImageMagic[8] = {'O', 'P', 'E', 'D', 'I', 'M', 'G', '0'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "serialization helpers assume a little-endian host");

void put_u32(std::string& buf, std::uint32_t v) {
    char b[4];
    std::memcpy(b, &v, 4);
    buf.append(b, 4);
}

void put_f64(std::string& buf, double v) {
    char b[8];
    std::memcpy(b, &v, 8);
    buf.append(b, 8);
}

class Reader {
  public:
    Reader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw IoError(IoError::Kind::OpenFailed, "cannot open " + path);
    }

    void read(void* dst, size_t n) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in_.gcount()) != n) {
            throw IoError(IoError::Kind::Truncated, path_ + ": truncated file");
        }
    }

    std::uint32_t read_u32() {
        std::uint32_t v;
        read(&v, 4);
        return v;
    }

    double read_f64() {
        double v;
        read(&v, 8);
        return v;
    }

    void expect_magic(const char (&magic)[8]) {
        char got[8];
        read(got, 8);
        if (std::memcmp(got, magic, 8) != 0) {
            throw IoError(IoError::Kind::BadMagic, path_ + ": bad magic");
        }
    }

    void expect_end() {
        in_.peek();
        if (!in_.eof()) {
            throw IoError(IoError::Kind::BadHeader, path_ + ": trailing bytes after payload");
        }
    }

  private:
    std::string path_;
    std::ifstream in_;
};

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoError::Kind::OpenFailed, "cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError(IoError::Kind::WriteFailed, "write failed for " + path);
}

void check_finite(const std::vector<double>& values, const std::string& what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw IoError(IoError::Kind::NonFinite, what + " contains a non-finite value");
        }
    }
}

}  // namespace

void write_sinogram(const std::string& path, const Sinogram& s) {
    check_finite(s.data, "sinogram");
    std::string buf;
    buf.reserve(20 + s.data.size() * 8);
    buf.append(kSinoMagic, 8);
    put_u32(buf, kFormatVersion);
    put_u32(buf, static_cast<std::uint32_t>(s.geometry.m));
    buf.push_back(static_cast<char>(s.geometry.variant == Variant::TypeI ? 1 : 2));
    buf.append(3, '\0');
    for (double v : s.data) put_f64(buf, v);
    write_file(path, buf);
}

Sinogram read_sinogram(const std::string& path) {
    Reader r(path);
    r.expect_magic(kSinoMagic);
    const std::uint32_t version = r.read_u32();
    if (version != kFormatVersion) {
        throw IoError(IoError::Kind::BadVersion,
                      path + ": unsupported version " + std::to_string(version));
    }
    const std::uint32_t m = r.read_u32();
    if (m < 1 || m > static_cast<std::uint32_t>(kDefaultMaxOrder)) {
        throw IoError(IoError::Kind::BadHeader, path + ": order m out of range");
    }
    std::uint8_t variant_byte;
    r.read(&variant_byte, 1);
    if (variant_byte != 1 && variant_byte != 2) {
        throw IoError(IoError::Kind::BadHeader, path + ": unknown variant byte");
    }
    char reserved[3];
    r.read(reserved, 3);
    if (reserved[0] != 0 || reserved[1] != 0 || reserved[2] != 0) {
        throw IoError(IoError::Kind::BadHeader, path + ": reserved bytes not zero");
    }
    Sinogram s = make_sinogram(build_geometry(
        static_cast<int>(m), variant_byte == 1 ? Variant::TypeI : Variant::TypeII));
    r.read(s.data.data(), s.data.size() * 8);
    r.expect_end();
    for (double v : s.data) {
        if (!std::isfinite(v)) {
            throw IoError(IoError::Kind::NonFinite, path + ": non-finite payload value");
        }
    }
    return s;
}

void write_image(const std::string& path, const ImageGrid& img) {
    check_finite(img.values, "image");
    std::string buf;
    buf.reserve(32 + img.values.size() * 8);
    buf.append(kImageMagic, 8);
    put_u32(buf, kFormatVersion);
    put_u32(buf, static_cast<std::uint32_t>(img.size));
    put_f64(buf, img.roi);
    put_f64(buf, img.fill);
    for (double v : img.values) put_f64(buf, v);
    write_file(path, buf);
}

ImageGrid read_image(const std::string& path) {
    Reader r(path);
    r.expect_magic(kImageMagic);
    const std::uint32_t version = r.read_u32();
    if (version != kFormatVersion) {
        throw IoError(IoError::Kind::BadVersion,
                      path + ": unsupported version " + std::to_string(version));
    }
    const std::uint32_t size = r.read_u32();
    if (size < 1 || size > 1u << 16) {
        throw IoError(IoError::Kind::BadHeader, path + ": image size out of range");
    }
    const double roi = r.read_f64();
    const double fill = r.read_f64();
    ImageGrid img = make_image(static_cast<int>(size), roi, fill);
    r.read(img.values.data(), img.values.size() * 8);
    r.expect_end();
    for (double v : img.values) {
        if (!std::isfinite(v)) {
            throw IoError(IoError::Kind::NonFinite, path + ": non-finite pixel value");
        }
    }
    return img;
}

void export_pgm(const std::string& path, const ImageGrid& img) {
    check_finite(img.values, "image");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : img.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double range = hi - lo;

    std::string buf;
    buf += "P5\n" + std::to_string(img.size) + " " + std::to_string(img.size) + "\n65535\n";
    for (double v : img.values) {
        // big-endian 16-bit sample; constant images map to 0
        std::uint16_t q = 0;
        if (range > 0.0) {
            q = static_cast<std::uint16_t>(std::lround(65535.0 * (v - lo) / range));
        }
        buf.push_back(static_cast<char>(q >> 8));
        buf.push_back(static_cast<char>(q & 0xff));
    }
    write_file(path, buf);

    std::string sidecar;
    sidecar.reserve(64);
    char line[96];
    std::snprintf(line, sizeof line, "{\"min\":%.17g,\"max\":%.17g}\n", lo, hi);
    sidecar = line;
    write_file(path + ".json", sidecar);
}

void export_sinogram_csv(const std::string& path, const Sinogram& s) {
    std::string buf = "nu,j,phi,t,value\n";
    char line[128];
    const int nv = s.geometry.n_views(), nd = s.geometry.n_detectors();
    for (int nu = 0; nu < nv; ++nu) {
        for (int j = 0; j < nd; ++j) {
            std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g,%.17g\n", nu,
                          s.geometry.detector_label(j), s.geometry.phi[nu], s.geometry.t[j],
                          s.at(nu, j));
            buf += line;
        }
    }
    write_file(path, buf);
}

}  // namespace oped
