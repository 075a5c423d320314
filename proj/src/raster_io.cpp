#include "fdasim/raster_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fdasim/beampattern.hpp"

namespace fdasim {

namespace {

void append_g9(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  out += buf;
}

double to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace

std::string format_csv(const RasterGrid& raster, bool in_db, double db_floor) {
  const GridSpec& g = raster.spec;
  const double peak = raster.peak();
  std::string out = "range_m,angle_deg,value\n";
  out.reserve(out.size() + raster.values.size() * 36);
  for (std::size_t i = 0; i < g.n_range; ++i) {
    const double r = g.range_at(i);
    for (std::size_t j = 0; j < g.n_theta; ++j) {
      const double mag = raster.at(i, j);
      append_g9(out, r);
      out += ',';
      append_g9(out, to_deg(g.theta_at(j)));
      out += ',';
      if (!in_db) {
        append_g9(out, mag);
      } else {
        append_g9(out, peak > 0.0 ? to_db(mag, peak, db_floor) : db_floor);
      }
      out += '\n';
    }
  }
  return out;
}

void export_csv(const RasterGrid& raster, bool in_db, double db_floor,
                const std::filesystem::path& path) {
  write_file_atomic(path, format_csv(raster, in_db, db_floor));
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "range_m,angle_deg,value") {
    throw std::runtime_error("CSV header mismatch");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    CsvRow row{};
    char tail = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &row.range_m, &row.angle_deg, &row.value,
                    &tail) != 3) {
      throw std::runtime_error("malformed CSV row: " + line);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_pgm(const RasterGrid& raster, double db_floor, ImageExport* status) {
  if (!(db_floor < 0.0)) throw std::invalid_argument("dB floor must be negative");
  const GridSpec& g = raster.spec;
  const double peak = raster.peak();

  char meta[512];
  std::snprintf(meta, sizeof meta,
                "# fdasim mode=%s r_min_m=%.9g r_max_m=%.9g theta_min_deg=%.9g "
                "theta_max_deg=%.9g t_s=%.9g db_floor=%.9g fingerprint=%016llx\n"
                "# columns: angle ascending left to right; rows: range descending, top row r_max\n",
                std::string(to_string(raster.mode)).c_str(), g.r_min_m, g.r_max_m,
                to_deg(g.theta_min_rad), to_deg(g.theta_max_rad), g.t_s, db_floor,
                static_cast<unsigned long long>(raster.fingerprint));

  std::string out = "P5\n";
  out += meta;
  out += std::to_string(g.n_theta) + " " + std::to_string(g.n_range) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + g.n_range * g.n_theta, '\0');

  if (status) status->all_floor = !(peak > 0.0);
  if (!(peak > 0.0)) return out;

  for (std::size_t row = 0; row < g.n_range; ++row) {
    const std::size_t i = g.n_range - 1 - row;
    for (std::size_t j = 0; j < g.n_theta; ++j) {
      const double db = to_db(raster.at(i, j), peak, db_floor);
      const double level = std::round(255.0 * (db - db_floor) / (0.0 - db_floor));
      out[header + row * g.n_theta + j] = static_cast<char>(static_cast<std::uint8_t>(level));
    }
  }
  return out;
}

ImageExport export_image(const RasterGrid& raster, double db_floor,
                         const std::filesystem::path& path) {
  ImageExport status;
  write_file_atomic(path, format_pgm(raster, db_floor, &status));
  return status;
}

GrayImage parse_pgm(std::string_view bytes) {
  std::size_t pos = 0;
  GrayImage img;
  auto next_line = [&]() {
    const auto nl = bytes.find('\n', pos);
    if (nl == std::string_view::npos) throw std::runtime_error("truncated PGM header");
    std::string line(bytes.substr(pos, nl - pos));
    pos = nl + 1;
    return line;
  };
  if (next_line() != "P5") throw std::runtime_error("not a binary PGM");
  std::string line = next_line();
  while (!line.empty() && line.front() == '#') {
    img.comments.push_back(line);
    line = next_line();
  }
  if (std::sscanf(line.c_str(), "%zu %zu", &img.width, &img.height) != 2) {
    throw std::runtime_error("bad PGM dimensions");
  }
  if (next_line() != "255") throw std::runtime_error("unsupported PGM maxval");
  if (bytes.size() - pos != img.width * img.height) throw std::runtime_error("PGM size mismatch");
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return img;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                             ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace fdasim
