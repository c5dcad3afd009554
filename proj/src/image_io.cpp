#include "psept/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace psept {

namespace {

// Skips whitespace and '#' comments between PGM header tokens.
int next_pgm_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
        } else if (!std::isspace(c)) {
            break;
        }
    }
    if (c == EOF) return -1;
    do {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    } while (c != EOF && !std::isspace(c));
    return 0;
}

long parse_pgm_int(std::istream& in, const char* what) {
    std::string tok;
    if (next_pgm_token(in, tok) != 0) throw IoError(IoError::Kind::bad_header, std::string("missing ") + what);
    char* end = nullptr;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0' || v < 0)
        throw IoError(IoError::Kind::bad_header, std::string("bad ") + what + " '" + tok + "'");
    return v;
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* fp = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

}  // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoError::Kind::unreadable, "cannot open " + path.string());

    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || (m1 != '2' && m1 != '5'))
        throw IoError(IoError::Kind::bad_magic, "not a PGM file: " + path.string());
    const bool ascii = (m1 == '2');

    long w = parse_pgm_int(in, "width");
    long h = parse_pgm_int(in, "height");
    long maxval = parse_pgm_int(in, "maxval");
    if (w < 1 || h < 1) throw IoError(IoError::Kind::bad_header, "non-positive dimensions");
    if (maxval < 1 || maxval > 65535) throw IoError(IoError::Kind::unsupported_depth, "maxval outside [1,65535]");

    GrayImage img;
    img.range = {0.0, 1.0};
    img.pixels.resize(h, w);
    const double inv = 1.0 / static_cast<double>(maxval);

    if (ascii) {
        for (long y = 0; y < h; ++y)
            for (long x = 0; x < w; ++x) {
                long v = 0;
                try {
                    v = parse_pgm_int(in, "sample");
                } catch (const IoError& e) {
                    if (e.kind() == IoError::Kind::bad_header)
                        throw IoError(IoError::Kind::truncated, "sample data ends early");
                    throw;
                }
                img.pixels(y, x) = static_cast<double>(v) * inv;
            }
    } else {
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> row(static_cast<size_t>(w) * bytes);
        for (long y = 0; y < h; ++y) {
            in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
            if (in.gcount() != static_cast<std::streamsize>(row.size()))
                throw IoError(IoError::Kind::truncated, "sample data ends early");
            for (long x = 0; x < w; ++x) {
                unsigned v = bytes == 2 ? (row[2 * x] << 8 | row[2 * x + 1]) : row[x];
                img.pixels(y, x) = static_cast<double>(v) * inv;
            }
        }
    }
    return img;
}

GrayImage load_png(const std::filesystem::path& path) {
    PngReader r;
    r.fp = std::fopen(path.string().c_str(), "rb");
    if (!r.fp) throw IoError(IoError::Kind::unreadable, "cannot open " + path.string());

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, r.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw IoError(IoError::Kind::bad_magic, "not a PNG file: " + path.string());

    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    r.info = r.png ? png_create_info_struct(r.png) : nullptr;
    if (!r.png || !r.info) throw IoError(IoError::Kind::unreadable, "libpng init failed");
    if (setjmp(png_jmpbuf(r.png))) throw IoError(IoError::Kind::truncated, "PNG decode failed: " + path.string());

    png_init_io(r.png, r.fp);
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    const png_uint_32 w = png_get_image_width(r.png, r.info);
    const png_uint_32 h = png_get_image_height(r.png, r.info);
    const int depth = png_get_bit_depth(r.png, r.info);
    const int color = png_get_color_type(r.png, r.info);

    const bool gray = color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA;
    const bool rgb = color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
                     color == PNG_COLOR_TYPE_PALETTE;
    if (!gray && !rgb) throw IoError(IoError::Kind::unsupported_depth, "unsupported PNG color type");
    if (gray && depth != 8 && depth != 16)
        throw IoError(IoError::Kind::unsupported_depth, "unsupported PNG gray bit depth");
    if (rgb && depth != 8) throw IoError(IoError::Kind::unsupported_depth, "unsupported PNG RGB bit depth");

    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
    if (gray && depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
    png_set_strip_alpha(r.png);
    png_read_update_info(r.png, r.info);

    const int channels = png_get_channels(r.png, r.info);
    const size_t rowbytes = png_get_rowbytes(r.png, r.info);
    std::vector<unsigned char> data(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = data.data() + y * rowbytes;
    png_read_image(r.png, rows.data());

    GrayImage img;
    img.range = {0.0, 1.0};
    img.pixels.resize(h, w);
    for (png_uint_32 y = 0; y < h; ++y) {
        const unsigned char* row = rows[y];
        for (png_uint_32 x = 0; x < w; ++x) {
            if (channels == 1 && depth == 8) {
                img.pixels(y, x) = row[x] / 255.0;
            } else if (channels == 1) {  // 16-bit gray, big-endian per PNG
                img.pixels(y, x) = (row[2 * x] << 8 | row[2 * x + 1]) / 65535.0;
            } else {  // 8-bit RGB
                img.pixels(y, x) = luminance(row[channels * x] / 255.0,
                                             row[channels * x + 1] / 255.0,
                                             row[channels * x + 2] / 255.0);
            }
        }
    }
    return img;
}

GrayImage load_image(const std::filesystem::path& path, ImageFormat format) {
    if (format == ImageFormat::pgm) return load_pgm(path);
    if (format == ImageFormat::png) return load_png(path);

    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError(IoError::Kind::unreadable, "cannot open " + path.string());
    unsigned char sig[2] = {0, 0};
    probe.read(reinterpret_cast<char*>(sig), 2);
    probe.close();
    if (sig[0] == 'P' && (sig[1] == '2' || sig[1] == '5')) return load_pgm(path);
    if (sig[0] == 0x89 && sig[1] == 'P') return load_png(path);
    throw IoError(IoError::Kind::bad_magic, "unrecognized image signature: " + path.string());
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path, int maxval, bool ascii) {
    if (maxval != 255 && maxval != 65535)
        throw IoError(IoError::Kind::unsupported_depth, "PGM maxval must be 255 or 65535");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(IoError::Kind::unreadable, "cannot open " + path.string() + " for writing");

    out << (ascii ? "P2" : "P5") << "\n"
        << img.width() << " " << img.height() << "\n"
        << maxval << "\n";

    const double lo = img.range.lo;
    const double span = img.range.span() != 0.0 ? img.range.span() : 1.0;
    auto quantize = [&](double v) {
        double t = (v - lo) / span * maxval;
        long q = std::lround(t);
        return q < 0 ? 0L : (q > maxval ? maxval : q);
    };

    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            long q = quantize(img.pixels(y, x));
            if (ascii) {
                out << q << (x + 1 == img.width() ? "\n" : " ");
            } else if (maxval > 255) {
                out.put(static_cast<char>(q >> 8));
                out.put(static_cast<char>(q & 0xff));
            } else {
                out.put(static_cast<char>(q));
            }
        }
    }
    if (!out) throw IoError(IoError::Kind::bad_write, "write failed: " + path.string());
}

}  // namespace psept
