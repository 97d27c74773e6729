#pragma once

#include <stdexcept>
#include <string>

#include "oped/image.hpp"
#include "oped/sinogram.hpp"

namespace oped {

class IoError : public std::runtime_error {
  public:
    enum class Kind {
        OpenFailed,
        WriteFailed,
        BadMagic,
        BadVersion,
        BadHeader,
        Truncated,
        NonFinite,
    };

    IoError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

// Binary sinogram, magic "OPEDSINO": u32 version (=1), u32 m, u8 variant
// (1 or 2), 3 zero bytes, then the view-major payload as little-endian
// doubles. Roundtrips are bit exact.
void write_sinogram(const std::string& path, const Sinogram& s);
Sinogram read_sinogram(const std::string& path);

// Raw image, magic "OPEDIMG0": u32 version (=1), u32 size, f64 roi, f64 fill,
// then size^2 row-major little-endian doubles. Authoritative for metrics.
void write_image(const std::string& path, const ImageGrid& img);
ImageGrid read_image(const std::string& path);

/// 16-bit binary PGM (maxval 65535, big-endian samples) with linear min-max
/// scaling; a constant image maps to all zeros. The scaling is recorded in a
/// sidecar JSON file `path + ".json"`. Presentation only.
void export_pgm(const std::string& path, const ImageGrid& img);

/// Debug CSV with header "nu,j,phi,t,value"; j is the detector label
/// (1-based for TypeII).
void export_sinogram_csv(const std::string& path, const Sinogram& s);

}  // namespace oped
