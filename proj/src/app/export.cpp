#include "slitworks/app/export.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "slitworks/errors.hpp"

namespace slitworks::app {

namespace {

void appendNumber(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  out += buf;
}

std::vector<std::uint16_t> quantize(const std::vector<double>& values, int bits) {
  if (bits != 8 && bits != 16) throw UsageError("grey depth must be 8 or 16 bits");
  const double top = bits == 8 ? 255.0 : 65535.0;
  double mx = 0;
  for (double v : values) mx = std::max(mx, v);
  std::vector<std::uint16_t> q(values.size(), 0);
  if (mx <= 0) return q;
  for (std::size_t i = 0; i < values.size(); ++i)
    q[i] = static_cast<std::uint16_t>(std::lround(std::clamp(values[i] / mx, 0.0, 1.0) * top));
  return q;
}

void pngWrite(png_structp p, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(p));
  out->append(reinterpret_cast<const char*>(data), n);
}

}  // namespace

ImageFormat parseImageFormat(const std::string& s) {
  if (s == "csv") return ImageFormat::Csv;
  if (s == "pgm") return ImageFormat::Pgm;
  if (s == "png") return ImageFormat::Png;
  throw UsageError("unknown format '" + s + "' (csv, pgm, png)");
}

const char* extension(ImageFormat f) {
  switch (f) {
    case ImageFormat::Csv: return "csv";
    case ImageFormat::Pgm: return "pgm";
    case ImageFormat::Png: return "png";
  }
  return "csv";
}

std::string imageCsv(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& values,
                     const char* corner) {
  if (values.size() != x.size() * y.size()) throw UsageError("image size does not match its axes");
  std::string out = corner;
  out.reserve(values.size() * 18 + 64);
  for (double v : x) {
    out += ',';
    appendNumber(out, v);
  }
  out += '\n';
  for (std::size_t r = 0; r < y.size(); ++r) {
    appendNumber(out, y[r]);
    for (std::size_t c = 0; c < x.size(); ++c) {
      out += ',';
      appendNumber(out, values[r * x.size() + c]);
    }
    out += '\n';
  }
  return out;
}

std::string traceCsv(const Trace& trace) {
  std::string out = "x,intensity\n";
  for (std::size_t i = 0; i < trace.x.size(); ++i) {
    appendNumber(out, trace.x[i]);
    out += ',';
    appendNumber(out, trace.intensity[i]);
    out += '\n';
  }
  return out;
}

std::string arrivalsCsv(const std::vector<ArrivalEvent>& events) {
  std::string out = "x,y,v,id\n";
  for (const auto& e : events) {
    appendNumber(out, e.x);
    out += ',';
    appendNumber(out, e.y);
    out += ',';
    appendNumber(out, e.v);
    out += ',' + std::to_string(e.id) + '\n';
  }
  return out;
}

std::string pgm(const std::vector<double>& values, std::size_t width, std::size_t height, int bits) {
  if (values.size() != width * height) throw UsageError("image size does not match its dimensions");
  const auto q = quantize(values, bits);
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n" +
                    (bits == 8 ? "255" : "65535") + "\n";
  for (auto v : q) {
    if (bits == 16) out += static_cast<char>(v >> 8);  // PGM stores the most significant byte first
    out += static_cast<char>(v & 0xff);
  }
  return out;
}

std::string png(const std::vector<double>& values, std::size_t width, std::size_t height, int bits) {
  if (values.size() != width * height) throw UsageError("image size does not match its dimensions");
  const auto q = quantize(values, bits);
  png_structp p = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!p) throw Error("libpng: cannot create write struct");
  png_infop info = png_create_info_struct(p);
  std::string out;
  if (!info || setjmp(png_jmpbuf(p))) {
    png_destroy_write_struct(&p, &info);
    throw Error("libpng: encoding failed");
  }
  png_set_write_fn(p, &out, pngWrite, nullptr);
  png_set_IHDR(p, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bits, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(p, info);
  const std::size_t stride = width * (bits / 8);
  std::vector<png_byte> row(stride);
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const auto v = q[r * width + c];
      if (bits == 16) {
        row[2 * c] = static_cast<png_byte>(v >> 8);
        row[2 * c + 1] = static_cast<png_byte>(v & 0xff);
      } else {
        row[c] = static_cast<png_byte>(v);
      }
    }
    png_write_row(p, row.data());
  }
  png_write_end(p, nullptr);
  png_destroy_write_struct(&p, &info);
  return out;
}

void writeFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw UsageError("write failed for '" + path + "'");
}

std::string base64Doubles(const std::vector<double>& values) {
  static_assert(std::endian::native == std::endian::little, "base64 export assumes a little-endian host");
  const auto* bytes = reinterpret_cast<const unsigned char*>(values.data());
  const int n = static_cast<int>(values.size() * sizeof(double));
  std::string out(4 * ((n + 2) / 3), '\0');
  const int written = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes, n);
  out.resize(static_cast<std::size_t>(written));
  return out;
}

}  // namespace slitworks::app
