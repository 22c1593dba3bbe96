#pragma once

#include <iosfwd>

#include "hotspot/heatmap.hpp"

namespace hotspot::raster_io {

// ESRI ASCII grid: ncols/nrows/xllcorner/yllcorner/cellsize/NODATA_value
// header, then rows north to south. cellsize is the longitude cell size.
void write_esri_ascii(std::ostream& out, const heatmap::Raster& raster);

// Plain (P2) portable graymap, values scaled to 0-65535 by the raster maximum.
void write_pgm(std::ostream& out, const heatmap::Raster& raster);

}  // namespace hotspot::raster_io
