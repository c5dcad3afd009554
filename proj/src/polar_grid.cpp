#include "psept/polar_grid.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "psept/image_io.hpp"

namespace psept {

PolarGrid build_grid(int n_r, int n_theta, double r_max) {
    if (n_r < 2) throw std::invalid_argument("n_r must be >= 2");
    if (n_theta < 2 || n_theta % 2 != 0) throw std::invalid_argument("n_theta must be even and >= 2");
    if (!(r_max > 0.0 && r_max <= 1.0)) throw std::invalid_argument("r_max must lie in (0, 1]");

    PolarGrid g;
    g.n_r = n_r;
    g.n_theta = n_theta;
    g.r_max = r_max;
    g.radii = Eigen::ArrayXd::LinSpaced(n_r, 0.0, 1.0) * r_max;
    g.radii[0] = 0.0;
    g.radii[n_r - 1] = r_max;
    g.thetas.resize(n_theta);
    for (int j = 0; j < n_theta; ++j) g.thetas[j] = -M_PI + 2.0 * M_PI * j / n_theta;
    g.weights = g.radii;
    return g;
}

PolarGrid default_grid_for(int width, int height, double r_max) {
    const int n = std::min(width, height);
    int n_theta = static_cast<int>(std::ceil(M_PI * n));
    if (n_theta % 2 != 0) ++n_theta;
    return build_grid(std::max(n, 2), std::max(n_theta, 4), r_max);
}

PolarImage cart_to_polar(const GrayImage& img, const PolarGrid& grid) {
    const int w = img.width(), h = img.height();
    if (w < 2 || h < 2) throw std::invalid_argument("cart_to_polar needs at least a 2x2 image");
    const double cx = 0.5 * (w - 1), cy = 0.5 * (h - 1);
    const double s = 0.5 * std::min(w, h) - 0.5;

    PolarImage out;
    out.grid = grid;
    out.samples.resize(grid.n_theta, grid.n_r);
    for (int j = 0; j < grid.n_theta; ++j) {
        const double ct = std::cos(grid.thetas[j]), st = std::sin(grid.thetas[j]);
        for (int k = 0; k < grid.n_r; ++k) {
            const double rho = grid.radii[k] * s;
            out.samples(j, k) = bilinear_sample(img.pixels, cx + rho * ct, cy + rho * st);
        }
    }
    return out;
}

GrayImage polar_to_cart(const PolarImage& polar, int width, int height, double fill) {
    const PolarGrid& g = polar.grid;
    const double cx = 0.5 * (width - 1), cy = 0.5 * (height - 1);
    const double s = 0.5 * std::min(width, height) - 0.5;

    GrayImage out;
    out.range = {0.0, 1.0};
    out.pixels.resize(height, width);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double rho2 = dx * dx + dy * dy;
            if (rho2 > s * s) {
                out.pixels(y, x) = fill;
                continue;
            }
            const double r = std::sqrt(rho2) / s;  // unit-disk fraction, may exceed r_max
            const double theta = std::atan2(dy, dx);

            double kr = r * (g.n_r - 1) / g.r_max;
            if (kr > g.n_r - 1) kr = g.n_r - 1;  // clamp beyond the outermost ring
            int k0 = static_cast<int>(kr);
            if (k0 >= g.n_r - 1) k0 = g.n_r - 2;
            const double tk = kr - k0;

            double ja = (theta + M_PI) / (2.0 * M_PI) * g.n_theta;  // wraps
            int j0 = static_cast<int>(std::floor(ja));
            const double tj = ja - j0;
            j0 = ((j0 % g.n_theta) + g.n_theta) % g.n_theta;
            const int j1 = (j0 + 1) % g.n_theta;

            const double v0 = polar.samples(j0, k0) * (1.0 - tk) + polar.samples(j0, k0 + 1) * tk;
            const double v1 = polar.samples(j1, k0) * (1.0 - tk) + polar.samples(j1, k0 + 1) * tk;
            out.pixels(y, x) = v0 * (1.0 - tj) + v1 * tj;
        }
    }
    return out;
}

namespace {
std::string shortest_repr(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}
}  // namespace

void save_polar_pgm(const PolarImage& polar, const std::filesystem::path& path, double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("save_polar_pgm needs hi > lo");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(IoError::Kind::unreadable, "cannot open " + path.string() + " for writing");
    const PolarGrid& g = polar.grid;
    out << "P5\n"
        << "# polar n_r=" << g.n_r << " n_theta=" << g.n_theta << " r_max=" << shortest_repr(g.r_max)
        << " lo=" << shortest_repr(lo) << " hi=" << shortest_repr(hi) << "\n"
        << g.n_r << " " << g.n_theta << "\n65535\n";
    for (int j = 0; j < g.n_theta; ++j) {
        for (int k = 0; k < g.n_r; ++k) {
            double t = (polar.samples(j, k) - lo) / (hi - lo) * 65535.0;
            long q = std::lround(t);
            q = q < 0 ? 0 : (q > 65535 ? 65535 : q);
            out.put(static_cast<char>(q >> 8));
            out.put(static_cast<char>(q & 0xff));
        }
    }
    if (!out) throw IoError(IoError::Kind::bad_write, "write failed: " + path.string());
}

PolarImage load_polar_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoError::Kind::unreadable, "cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != "P5") throw IoError(IoError::Kind::bad_magic, "not a polar PGM");
    std::getline(in, line);
    int n_r = 0, n_theta = 0;
    double r_max = 0.0, lo = 0.0, hi = 0.0;
    if (std::sscanf(line.c_str(), "# polar n_r=%d n_theta=%d r_max=%lf lo=%lf hi=%lf",
                    &n_r, &n_theta, &r_max, &lo, &hi) != 5)
        throw IoError(IoError::Kind::bad_header, "missing polar grid comment");
    int w = 0, h = 0, maxval = 0;
    std::getline(in, line);
    if (std::sscanf(line.c_str(), "%d %d", &w, &h) != 2 || w != n_r || h != n_theta)
        throw IoError(IoError::Kind::bad_header, "dimension mismatch with grid comment");
    std::getline(in, line);
    if (std::sscanf(line.c_str(), "%d", &maxval) != 1 || maxval != 65535)
        throw IoError(IoError::Kind::unsupported_depth, "polar PGM must be 16-bit");

    PolarImage out;
    out.grid = build_grid(n_r, n_theta, r_max);
    out.samples.resize(n_theta, n_r);
    std::vector<unsigned char> row(static_cast<size_t>(n_r) * 2);
    for (int j = 0; j < n_theta; ++j) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
        if (in.gcount() != static_cast<std::streamsize>(row.size()))
            throw IoError(IoError::Kind::truncated, "sample data ends early");
        for (int k = 0; k < n_r; ++k) {
            unsigned v = row[2 * k] << 8 | row[2 * k + 1];
            out.samples(j, k) = lo + (hi - lo) * (v / 65535.0);
        }
    }
    return out;
}

}  // namespace psept
