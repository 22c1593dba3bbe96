#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hotspot/geo.hpp"

namespace hotspot::heatmap {

// Coordinate space the kernel works in. "degrees" uses raw lat/lon deltas
// (alpha in squared degrees); "km" uses great-circle distance (alpha in
// squared kilometers).
enum class KernelSpace {
    degrees,
    km,
};

struct HeatmapParams {
    double alpha = 1e-4;
    int width = 512;
    int height = 512;
    geo::BBox bbox;
    bool normalize = true;
    KernelSpace space = KernelSpace::degrees;

    void validate() const;
};

// Row-major grid of kernel-density values over a bounding box. Row 0 is the
// northernmost row (map/raster layout); cell values sample at cell centers.
struct Raster {
    int width = 0;
    int height = 0;
    geo::BBox bbox;
    std::vector<double> values;

    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
    double cell_center_lat(int row) const {
        return bbox.max_lat - (row + 0.5) * bbox.lat_span() / height;
    }
    double cell_center_lon(int col) const {
        return bbox.min_lon + (col + 0.5) * bbox.lon_span() / width;
    }
    double max_value() const;
};

// Gaussian influence of one event at a sample location:
// exp(-((dx)^2 + (dy)^2) / alpha), with deltas in the kernel space.
double kernel_value(const geo::GeoPoint& cell_center, const geo::GeoPoint& event, double alpha,
                    KernelSpace space = KernelSpace::degrees);

// Sum of kernel_value over all events per cell; events farther than
// 5*sqrt(alpha) from a cell center contribute nothing (their weight is below
// e^-25). With normalize, all cells are divided by the maximum (an all-zero
// raster stays zero). Cell sums accumulate in event order.
Raster render(std::span<const geo::GeoPoint> points, const HeatmapParams& params);

}  // namespace hotspot::heatmap
