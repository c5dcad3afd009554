#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "psept/image.hpp"

namespace psept {

/// File-level failure, with the failing stage attached so callers can
/// distinguish a missing file from a malformed one.
class IoError : public std::runtime_error {
public:
    enum class Kind {
        unreadable,         // cannot open / cannot stat
        bad_magic,          // not a PGM or PNG signature
        bad_header,         // signature ok, header does not parse
        unsupported_depth,  // bit depth or color type outside the supported set
        truncated,          // payload shorter than the header promises
        bad_write,          // output stream failure
    };

    IoError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

enum class ImageFormat { auto_detect, pgm, png };

/// Loads an 8- or 16-bit grayscale image (PGM P2/P5 or PNG; 8-bit RGB/RGBA
/// PNG is converted through luminance()). Pixel values are divided by the
/// format's max sample value, so the result carries range [0,1].
GrayImage load_image(const std::filesystem::path& path,
                     ImageFormat format = ImageFormat::auto_detect);

GrayImage load_pgm(const std::filesystem::path& path);
GrayImage load_png(const std::filesystem::path& path);

/// Writes binary (P5) or ASCII (P2) PGM. The declared range is mapped onto
/// [0, maxval] and quantized by rounding; maxval must be 255 or 65535.
void save_pgm(const GrayImage& img, const std::filesystem::path& path,
              int maxval = 255, bool ascii = false);

}  // namespace psept
