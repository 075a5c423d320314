#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fdasim/analysis.hpp"

namespace fdasim {

// CSV with header `range_m,angle_deg,value`, one row per cell, range outer,
// %.9g floats, LF endings. With in_db the values are to_db() against the
// raster peak with the given floor.
std::string format_csv(const RasterGrid& raster, bool in_db, double db_floor = -60.0);
void export_csv(const RasterGrid& raster, bool in_db, double db_floor,
                const std::filesystem::path& path);

struct CsvRow {
  double range_m;
  double angle_deg;
  double value;
};
// Throws std::runtime_error on a malformed file.
std::vector<CsvRow> parse_csv(std::string_view text);

struct ImageExport {
  // True when the raster had no energy and the image is all floor.
  bool all_floor = false;
};

// Binary PGM (P5, maxval 255), width n_theta, height n_range, top row r_max.
std::string format_pgm(const RasterGrid& raster, double db_floor, ImageExport* status = nullptr);
ImageExport export_image(const RasterGrid& raster, double db_floor,
                         const std::filesystem::path& path);

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::string> comments;
  std::vector<std::uint8_t> pixels;  // row-major, top row first
};
GrayImage parse_pgm(std::string_view bytes);

// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace fdasim
