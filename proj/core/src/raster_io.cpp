#include "hotspot/raster_io.hpp"

#include <cmath>
#include <ostream>

#include "internal/csv.hpp"

namespace hotspot::raster_io {

void write_esri_ascii(std::ostream& out, const heatmap::Raster& raster) {
    out << "ncols " << raster.width << '\n';
    out << "nrows " << raster.height << '\n';
    out << "xllcorner " << detail::format_double(raster.bbox.min_lon) << '\n';
    out << "yllcorner " << detail::format_double(raster.bbox.min_lat) << '\n';
    out << "cellsize " << detail::format_double(raster.bbox.lon_span() / raster.width) << '\n';
    out << "NODATA_value -9999\n";
    for (int r = 0; r < raster.height; ++r) {
        for (int c = 0; c < raster.width; ++c) {
            if (c > 0) out.put(' ');
            out << detail::format_double(raster.at(r, c));
        }
        out.put('\n');
    }
}

void write_pgm(std::ostream& out, const heatmap::Raster& raster) {
    constexpr int kMaxVal = 65535;
    const double max = raster.max_value();
    out << "P2\n" << raster.width << ' ' << raster.height << "\n" << kMaxVal << "\n";
    for (int r = 0; r < raster.height; ++r) {
        for (int c = 0; c < raster.width; ++c) {
            if (c > 0) out.put(' ');
            const double scaled = max > 0.0 ? raster.at(r, c) / max * kMaxVal : 0.0;
            out << static_cast<int>(std::lround(scaled));
        }
        out.put('\n');
    }
}

}  // namespace hotspot::raster_io
